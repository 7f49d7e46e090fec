// Command-line front end over the sigma C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "sigma/sigma.h"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNegative = 3;
constexpr int kValidation = 4;
constexpr int kInternal = 1;

struct Failure {
  int exit_code;
  std::string message;
};

void check(sigma_status s) {
  if (s == SIGMA_OK) return;
  const int code = s == SIGMA_INTERNAL ? kInternal : kValidation;
  throw Failure{code, std::string(sigma_status_name(s)) + ": " + sigma_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kValidation, "ParseError: cannot open " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Str {
  char* p = nullptr;
  ~Str() { sigma_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle(Handle&& o) noexcept : p(o.p) { o.p = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
  ~Handle() { Free(p); }
};

using Part = Handle<sigma_partition, sigma_partition_free>;
using Measure = Handle<sigma_measure, sigma_measure_free>;
using Domain = Handle<sigma_domain, sigma_domain_free>;
using Group = Handle<sigma_group, sigma_group_free>;

Part load_partition(const std::string& path) {
  Part h;
  check(sigma_partition_from_json(read_file(path).c_str(), &h.p));
  return h;
}

Measure load_measure(const std::string& path) {
  Measure h;
  check(sigma_measure_from_json(read_file(path).c_str(), &h.p));
  return h;
}

Domain load_domain(const std::string& path) {
  Domain h;
  check(sigma_domain_from_json(read_file(path).c_str(), &h.p));
  return h;
}

Group load_group(const std::string& path) {
  Group h;
  check(sigma_group_from_json(read_file(path).c_str(), &h.p));
  return h;
}

std::string text_of(const sigma_partition* p) {
  Str s;
  check(sigma_partition_to_text(p, &s.p));
  return s.str();
}

std::string pretty(const std::string& compact) { return json::parse(compact).dump(2); }

std::string json_of(const sigma_partition* p) {
  Str s;
  check(sigma_partition_to_json(p, &s.p));
  return s.str();
}

std::string blocks_text(const json& partition) {
  std::string out;
  for (const auto& b : partition.at("blocks")) {
    if (!out.empty()) out += "|";
    out += "{";
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + std::to_string(b[i].get<int>());
    out += "}";
  }
  return out;
}

std::string weights_text(const json& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? ", " : "") + w[i].get<std::string>();
  return out + ")";
}

struct Options {
  bool json = false;
};

int cmd_commute(const Options& o, const std::string& a_path, const std::string& b_path) {
  auto a = load_partition(a_path), b = load_partition(b_path);
  Str out;
  check(sigma_commute_json(a.p, b.p, &out.p));
  const auto j = json::parse(out.str());
  if (o.json) {
    std::cout << pretty(out.str()) << "\n";
  } else if (j["commuting"].get<bool>()) {
    std::cout << "commuting\n";
  } else {
    std::cout << "non_commuting witness (" << j["witness"][0] << "," << j["witness"][1] << ") in "
              << j["witness_in"].get<std::string>() << "\n";
  }
  return j["commuting"].get<bool>() ? kOk : kNegative;
}

int cmd_lattice(const Options& o, bool is_join, const std::string& a_path, const std::string& b_path) {
  auto a = load_partition(a_path), b = load_partition(b_path);
  Part r;
  check(is_join ? sigma_join(a.p, b.p, &r.p) : sigma_meet(a.p, b.p, &r.p));
  std::cout << (o.json ? json_of(r.p) : text_of(r.p)) << "\n";
  return kOk;
}

int cmd_atoms(const Options& o, const std::string& path) {
  auto p = load_partition(path);
  const auto j = json::parse(json_of(p.p));
  if (o.json) {
    std::cout << json{{"n", j["n"]}, {"atom_count", j["blocks"].size()}, {"atoms", j["blocks"]}}.dump(2) << "\n";
    return kOk;
  }
  std::size_t i = 0;
  for (const auto& b : j["blocks"]) {
    std::cout << "atom " << i++ << ": {";
    for (std::size_t k = 0; k < b.size(); ++k) std::cout << (k ? "," : "") << b[k];
    std::cout << "}\n";
  }
  return kOk;
}

int cmd_aut(const Options& o, const std::string& path, bool elements) {
  auto p = load_partition(path);
  Group g;
  check(sigma_group_automorphisms(p.p, &g.p));
  Str out;
  check(sigma_group_to_json(g.p, elements ? 1 : 0, &out.p));
  if (o.json) {
    std::cout << pretty(out.str()) << "\n";
    return kOk;
  }
  const auto j = json::parse(out.str());
  std::cout << "|Aut(" << text_of(p.p) << ")| = " << j["order"] << "\n";
  if (elements)
    for (const auto& e : j["elements"]) std::cout << "  " << e.get<std::string>() << "\n";
  return kOk;
}

int cmd_invariant(const Options& o, const std::string& path, const std::string& group_path) {
  auto p = load_partition(path);
  Group g;
  if (!group_path.empty()) g = load_group(group_path);
  Str out;
  check(sigma_invariant_json(p.p, g.p, &out.p));
  if (o.json) {
    std::cout << pretty(out.str()) << "\n";
    return kOk;
  }
  const auto j = json::parse(out.str());
  std::cout << "group order " << j["group_order"] << ", " << j["orbits"].size() << " atom orbit(s), dimension "
            << j["dimension"] << "\n";
  std::cout << "representative " << weights_text(j["representative"]) << "\n";
  for (const auto& v : j["vertices"]) std::cout << "vertex " << weights_text(v) << "\n";
  std::cout << (j["unique"].is_null() ? "not unique" : "unique") << "\n";
  return kOk;
}

int cmd_extend(const Options& o, const std::string& measure_path, const std::string& fine_path,
               const std::string& split) {
  auto mu = load_measure(measure_path);
  auto fine = load_partition(fine_path);
  Measure nu;
  check(sigma_measure_extend(mu.p, fine.p, split.c_str(), &nu.p));
  Str out;
  check(sigma_measure_to_json(nu.p, &out.p));
  if (o.json) {
    std::cout << json::parse(out.str()).dump(2) << "\n";
  } else {
    const auto j = json::parse(out.str());
    std::cout << blocks_text(j["partition"]) << " " << weights_text(j["weights"]) << "\n";
  }
  return kOk;
}

int cmd_endogenous(const Options& o, const std::string& domain_path, const std::string& group_path,
                   const std::string& measure_path) {
  auto d = load_domain(domain_path);
  Group g;
  if (!group_path.empty()) g = load_group(group_path);
  Str out;
  check(sigma_endogenous_json(d.p, g.p, &out.p));
  auto j = json::parse(out.str());
  bool negative = j.contains("uniqueness") && !j["uniqueness"]["established"].get<bool>();
  if (!measure_path.empty()) {
    auto mu = load_measure(measure_path);
    Str report, algebras;
    check(sigma_self_consistent_json(mu.p, d.p, &report.p));
    check(sigma_algebras_for_json(mu.p, d.p, &algebras.p));
    j["self_consistency"] = json::parse(report.str());
    j["algebras_for"] = json::parse(algebras.str());
    if (!j["self_consistency"]["self_consistent"].get<bool>()) negative = true;
  }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
    return negative ? kNegative : kOk;
  }
  for (const auto& p : j["pairs"]) {
    std::cout << blocks_text(p["algebra"]) << " " << weights_text(p["measure"]);
    std::cout << (p["certificate"]["maximal_in_domain"].get<bool>() ? " maximal" : "") << "\n";
    for (const auto& c : p["certificate"]["minimality"])
      std::cout << "  coarsening " << blocks_text(c["coarsening"]) << " " << weights_text(c["restricted"])
                << (c["degenerate"].get<bool>() ? " degenerate" : " not degenerate") << "\n";
  }
  if (j.contains("uniqueness"))
    std::cout << "uniqueness: " << j["uniqueness"]["status"].get<std::string>() << "\n";
  if (j.contains("self_consistency")) {
    const auto& r = j["self_consistency"];
    std::cout << "self-consistent: " << (r["self_consistent"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& v : r["violations"])
      std::cout << "  " << v["clause"].get<std::string>() << ": " << v["detail"].get<std::string>() << "\n";
    std::cout << "algebras for measure:";
    for (const auto& a : j["algebras_for"]["algebras"]) std::cout << " " << blocks_text(a);
    std::cout << "\n";
  }
  return negative ? kNegative : kOk;
}

int cmd_domain_build(const Options& o, const std::vector<std::string>& paths, bool dot) {
  std::vector<Part> parts;
  std::vector<const sigma_partition*> raw;
  for (const auto& path : paths) {
    parts.push_back(load_partition(path));
    raw.push_back(parts.back().p);
  }
  Domain d;
  const auto s = sigma_domain_build(raw.data(), raw.size(), &d.p);
  if (s == SIGMA_COMMUTATIVITY_VIOLATION) {
    std::cerr << sigma_status_name(s) << ": " << sigma_last_error() << "\n";
    return kNegative;
  }
  check(s);
  Str out;
  check(dot ? sigma_domain_dot(d.p, &out.p) : sigma_domain_to_json(d.p, &out.p));
  if (dot || o.json) {
    std::cout << (dot ? out.str() : pretty(out.str()) + "\n");
  } else {
    const auto j = json::parse(out.str());
    for (const auto& m : j["members"]) std::cout << blocks_text(m) << "\n";
  }
  return kOk;
}

int cmd_domain_show(const Options& o, const std::string& path, bool dot) {
  auto d = load_domain(path);
  Str out;
  check(dot ? sigma_domain_dot(d.p, &out.p) : sigma_domain_to_json(d.p, &out.p));
  if (dot || o.json) {
    std::cout << (dot ? out.str() : pretty(out.str()) + "\n");
  } else {
    const auto j = json::parse(out.str());
    for (const auto& m : j["members"]) std::cout << blocks_text(m) << "\n";
  }
  return kOk;
}

int cmd_event_graph(const Options& o, const std::string& path, bool dot) {
  const auto text = read_file(path);
  Str j, d;
  const auto s = sigma_event_graph(text.c_str(), &j.p, &d.p);
  if (s == SIGMA_CYCLICITY) {
    std::cerr << sigma_status_name(s) << ": " << sigma_last_error() << "\n";
    return kNegative;
  }
  check(s);
  if (dot) {
    std::cout << d.str();
  } else if (o.json) {
    std::cout << pretty(j.str()) << "\n";
  } else {
    const auto g = json::parse(j.str());
    for (const auto& e : g["covers"])
      std::cout << e[0].get<std::string>() << " -> " << e[1].get<std::string>() << "\n";
  }
  return kOk;
}

int cmd_simulate(const Options& o, const std::string& path, const std::string& policy, const std::string& script,
                 std::uint64_t seed, std::size_t max_steps, const std::string& domain_path) {
  auto p = load_partition(path);
  Domain d;
  if (!domain_path.empty()) d = load_domain(domain_path);
  json pj{{"kind", policy}, {"seed", seed}};
  if (policy == "scripted") {
    if (script.empty()) throw Failure{kUsage, "--script is required with --policy scripted"};
    const auto s = json::parse(read_file(script), nullptr, false);
    if (s.is_discarded()) throw Failure{kValidation, "ParseError: invalid JSON in " + script};
    pj["script"] = s.is_object() && s.contains("script") ? s["script"] : s;
  }
  Str out;
  check(sigma_simulate_json(p.p, pj.dump().c_str(), max_steps, d.p, &out.p));
  if (o.json) {
    std::cout << pretty(out.str()) << "\n";
    return kOk;
  }
  const auto j = json::parse(out.str());
  for (const auto& step : j["trace"]["steps"])
    std::cout << step["label"].get<std::string>() << " -> " << blocks_text(step["target"]) << "\n";
  std::cout << j["outcome"].get<std::string>() << " at " << blocks_text(j["final"]) << " after " << j["steps"]
            << " step(s)\n";
  return kOk;
}

int cmd_oracle(const Options& o, std::size_t max_n, bool max_n_set, const std::string& suites, std::uint64_t seed) {
  if (!max_n_set) check(sigma_oracle_max_n_from_env(5, &max_n));
  Str out;
  int ok = 0;
  check(sigma_oracle_json(max_n, suites.c_str(), seed, &out.p, &ok));
  if (o.json) {
    std::cout << pretty(out.str()) << "\n";
  } else {
    const auto j = json::parse(out.str());
    for (const auto& s : j["suites"]) {
      std::printf("%-12s %zu/%zu\n", s["suite"].get<std::string>().c_str(), s["passed"].get<std::size_t>(),
                  s["cases"].get<std::size_t>());
      for (const auto& f : s["failures"]) std::cout << "  fail: " << f.get<std::string>() << "\n";
    }
    std::cout << (ok ? "all suites passed" : "some suites failed") << "\n";
  }
  return ok ? kOk : kNegative;
}

int cmd_toy() {
  Str out;
  check(sigma_toy_transcript(&out.p));
  std::cout << out.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite refinement structures: partitions, measures, compatibility domains, event graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_flag("--json", opts.json, "machine-readable output");

  std::string a, b, path, group, split, measure, policy = "exhaustive", script, domain, suites;
  std::vector<std::string> paths;
  bool elements = false, dot = false;
  std::uint64_t seed = 1;
  std::size_t max_steps = 64, max_n = 5;

  auto* commute = app.add_subcommand("commute", "test whether two partitions commute");
  commute->add_option("a", a)->required();
  commute->add_option("b", b)->required();
  auto* join = app.add_subcommand("join", "coarsest common refinement");
  join->add_option("a", a)->required();
  join->add_option("b", b)->required();
  auto* meet = app.add_subcommand("meet", "finest common coarsening");
  meet->add_option("a", a)->required();
  meet->add_option("b", b)->required();
  auto* atoms = app.add_subcommand("atoms", "list atoms in canonical order");
  atoms->add_option("partition", path)->required();
  auto* aut = app.add_subcommand("aut", "automorphism group of a partition");
  aut->add_option("partition", path)->required();
  aut->add_flag("--elements", elements, "list every element");
  auto* invariant = app.add_subcommand("invariant", "invariant measures of a partition");
  invariant->add_option("partition", path)->required();
  invariant->add_option("--group", group, "perms fixture (default: automorphism group)");
  auto* extend = app.add_subcommand("extend", "extend a measure to a finer partition");
  extend->add_option("measure", measure)->required();
  extend->add_option("fine", path)->required();
  extend->add_option("--split", split, "JSON list of split weights per coarse atom")->required();
  auto* endogenous = app.add_subcommand("endogenous", "endogenous pairs of a compatibility domain");
  endogenous->add_option("domain", path)->required();
  endogenous->add_option("--group", group, "perms fixture for the uniqueness check");
  endogenous->add_option("--measure", measure, "measure fixture to test for self-consistency");
  auto* dom = app.add_subcommand("domain", "build or inspect compatibility domains");
  dom->require_subcommand(1);
  dom->fallthrough();
  auto* dom_build = dom->add_subcommand("build", "coarsening closure of generator partitions");
  dom_build->add_option("generators", paths)->required();
  dom_build->add_flag("--dot", dot, "emit the Hasse diagram as DOT");
  auto* dom_show = dom->add_subcommand("show", "validate and print a domain fixture");
  dom_show->add_option("domain", path)->required();
  dom_show->add_flag("--dot", dot, "emit the Hasse diagram as DOT");
  auto* graph = app.add_subcommand("event-graph", "precedence DAG of refinement chains");
  graph->add_option("chains", path)->required();
  graph->add_flag("--dot", dot, "emit DOT");
  auto* sim = app.add_subcommand("simulate", "apply atomic refinements until stable");
  sim->add_option("partition", path)->required();
  sim->add_option("--policy", policy, "exhaustive, halving, random or scripted")
      ->check(CLI::IsMember({"exhaustive", "halving", "random", "scripted"}));
  sim->add_option("--script", script, "JSON list of {atom, parts} steps");
  sim->add_option("--seed", seed);
  sim->add_option("--max-steps", max_steps);
  sim->add_option("--domain", domain, "admissibility domain fixture");
  auto* oracle = app.add_subcommand("oracle", "run exhaustive property suites");
  auto* max_n_opt = oracle->add_option("--max-n", max_n, "largest ground set (1..8)");
  oracle->add_option("--suites", suites, "comma-separated suite names");
  oracle->add_option("--seed", seed);
  auto* toy = app.add_subcommand("toy", "replay the four-element toy universe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*commute) return cmd_commute(opts, a, b);
    if (*join) return cmd_lattice(opts, true, a, b);
    if (*meet) return cmd_lattice(opts, false, a, b);
    if (*atoms) return cmd_atoms(opts, path);
    if (*aut) return cmd_aut(opts, path, elements);
    if (*invariant) return cmd_invariant(opts, path, group);
    if (*extend) return cmd_extend(opts, measure, path, split);
    if (*endogenous) return cmd_endogenous(opts, path, group, measure);
    if (*dom_build) return cmd_domain_build(opts, paths, dot);
    if (*dom_show) return cmd_domain_show(opts, path, dot);
    if (*graph) return cmd_event_graph(opts, path, dot);
    if (*sim) return cmd_simulate(opts, path, policy, script, seed, max_steps, domain);
    if (*oracle) return cmd_oracle(opts, max_n, max_n_opt->count() > 0, suites, seed);
    if (*toy) return cmd_toy();
  } catch (const Failure& f) {
    std::cerr << f.message << "\n";
    return f.exit_code;
  }
  return kUsage;
}
