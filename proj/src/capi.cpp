#include "sigma/sigma.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "sigma/dynamics.hpp"
#include "sigma/endogenous.hpp"
#include "sigma/io.hpp"
#include "sigma/measure.hpp"
#include "sigma/oracle.hpp"
#include "sigma/partition.hpp"
#include "sigma/permutation.hpp"
#include "sigma/relation.hpp"
#include "sigma/toy.hpp"

struct sigma_partition {
  sigma::Partition value;
};
struct sigma_measure {
  sigma::ProbMeasure value;
};
struct sigma_domain {
  sigma::CompatibilityDomain value;
};
struct sigma_group {
  sigma::PermGroup value;
};

namespace {

using sigma::io::json;

thread_local std::string last_error;

sigma_status record(sigma_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
sigma_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return SIGMA_OK;
  } catch (const sigma::Error& e) {
    return record(static_cast<sigma_status>(static_cast<int>(e.code())), e.what());
  } catch (const json::exception& e) {
    return record(SIGMA_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return record(SIGMA_NULL_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return record(SIGMA_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(SIGMA_INTERNAL, e.what());
  } catch (...) {
    return record(SIGMA_INTERNAL, "unknown failure");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string("null argument: ") + what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  require(out, "out");
  *out = dup(j.dump());
}

template <class Handle, class Value>
void give(Handle** out, Value&& v) {
  require(out, "out");
  *out = new Handle{std::forward<Value>(v)};
}

sigma::SimulationPolicy policy_from_json(const json& j, int n) {
  using sigma::SimulationPolicy;
  SimulationPolicy policy;
  const std::string kind = j.value("kind", "exhaustive");
  if (kind == "exhaustive") {
    policy.kind = SimulationPolicy::Kind::Exhaustive;
  } else if (kind == "halving") {
    policy.kind = SimulationPolicy::Kind::RuleDriven;
    policy.rule = SimulationPolicy::Rule::LargestAtomHalving;
  } else if (kind == "random") {
    policy.kind = SimulationPolicy::Kind::RuleDriven;
    policy.rule = SimulationPolicy::Rule::Random;
  } else if (kind == "scripted") {
    policy.kind = SimulationPolicy::Kind::Scripted;
    if (!j.contains("script") || !j["script"].is_array())
      sigma::fail(sigma::ErrorCode::Parse, "scripted policy needs a \"script\" array");
    for (const auto& step : j["script"]) {
      sigma::Block atom;
      for (const auto& x : step.at("atom")) atom.push_back(x.get<int>() - 1);
      std::vector<sigma::Block> parts;
      for (const auto& part : step.at("parts")) {
        sigma::Block b;
        for (const auto& x : part) b.push_back(x.get<int>() - 1);
        parts.push_back(std::move(b));
      }
      parts.push_back(atom);
      for (const auto& b : parts)
        for (auto x : b)
          if (x < 0 || x >= n) sigma::fail(sigma::ErrorCode::Parse, "script label out of range");
      parts.pop_back();
      policy.script.emplace_back(std::move(atom), std::move(parts));
    }
  } else {
    sigma::fail(sigma::ErrorCode::Policy, "unknown policy kind: " + kind);
  }
  if (j.contains("seed")) policy.seed = j["seed"].get<std::uint64_t>();
  return policy;
}

}  // namespace

extern "C" {

const char* sigma_status_name(sigma_status status) {
  switch (status) {
    case SIGMA_OK: return "Ok";
    case SIGMA_NULL_ARGUMENT: return "NullArgument";
    case SIGMA_INTERNAL: return "InternalError";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 20) return sigma::error_code_name(static_cast<sigma::ErrorCode>(code));
  return "UnknownStatus";
}

const char* sigma_last_error(void) { return last_error.c_str(); }

void sigma_string_free(char* s) { std::free(s); }

const char* sigma_version(void) { return "1.0.0"; }

sigma_status sigma_set_oracle_bound(size_t n) {
  return guard([&] { sigma::set_oracle_bound(n); });
}

sigma_status sigma_partition_from_json(const char* text, sigma_partition** out) {
  if (text == nullptr || out == nullptr) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::io::partition_from_json(sigma::io::parse_json(text))); });
}

sigma_status sigma_partition_from_labels(const int* labels, size_t n, sigma_partition** out) {
  if (labels == nullptr || out == nullptr) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    if (n == 0) sigma::fail(sigma::ErrorCode::InvalidArgument, "empty ground set");
    give(out, sigma::Partition::from_labels(std::vector<int>(labels, labels + n)));
  });
}

sigma_status sigma_partition_trivial(int n, sigma_partition** out) {
  if (out == nullptr) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::Partition::trivial(sigma::GroundSet(n))); });
}

sigma_status sigma_partition_discrete(int n, sigma_partition** out) {
  if (out == nullptr) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::Partition::discrete(sigma::GroundSet(n))); });
}

void sigma_partition_free(sigma_partition* p) { delete p; }

sigma_status sigma_partition_to_json(const sigma_partition* p, char** out) {
  if (p == nullptr || out == nullptr) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { *out = dup(sigma::io::to_json(p->value).dump()); });
}

sigma_status sigma_partition_to_text(const sigma_partition* p, char** out) {
  if (p == nullptr || out == nullptr) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { *out = dup(sigma::to_string(p->value)); });
}

int sigma_partition_size(const sigma_partition* p) { return p ? p->value.size() : 0; }

size_t sigma_partition_atom_count(const sigma_partition* p) { return p ? p->value.atom_count() : 0; }

int sigma_partition_equal(const sigma_partition* a, const sigma_partition* b) {
  return a && b && a->value == b->value ? 1 : 0;
}

sigma_status sigma_join(const sigma_partition* a, const sigma_partition* b, sigma_partition** out) {
  if (!a || !b || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::join(a->value, b->value)); });
}

sigma_status sigma_meet(const sigma_partition* a, const sigma_partition* b, sigma_partition** out) {
  if (!a || !b || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::meet(a->value, b->value)); });
}

sigma_status sigma_refines(const sigma_partition* coarse, const sigma_partition* fine, int* out) {
  if (!coarse || !fine || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { *out = sigma::refines(coarse->value, fine->value) ? 1 : 0; });
}

sigma_status sigma_commute(const sigma_partition* a, const sigma_partition* b, int* commuting, int* witness_x,
                           int* witness_z) {
  if (!a || !b || !commuting) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    const auto v = sigma::commute(a->value, b->value);
    *commuting = v.commuting ? 1 : 0;
    if (witness_x) *witness_x = v.witness ? v.witness->first + 1 : 0;
    if (witness_z) *witness_z = v.witness ? v.witness->second + 1 : 0;
  });
}

sigma_status sigma_commute_json(const sigma_partition* a, const sigma_partition* b, char** out) {
  if (!a || !b || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { emit(out, sigma::io::to_json(sigma::commute(a->value, b->value))); });
}

sigma_status sigma_group_from_json(const char* text, sigma_group** out) {
  if (!text || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::io::group_from_json(sigma::io::parse_json(text))); });
}

sigma_status sigma_group_automorphisms(const sigma_partition* p, sigma_group** out) {
  if (!p || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::automorphism_group(p->value)); });
}

void sigma_group_free(sigma_group* g) { delete g; }

size_t sigma_group_order(const sigma_group* g) { return g ? g->value.order() : 0; }

sigma_status sigma_group_to_json(const sigma_group* g, int with_elements, char** out) {
  if (!g || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { emit(out, sigma::io::group_to_json(g->value, with_elements != 0)); });
}

sigma_status sigma_invariant_json(const sigma_partition* p, const sigma_group* group, char** out) {
  if (!p || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    const auto g = group ? group->value : sigma::automorphism_group(p->value);
    auto j = sigma::io::to_json(sigma::invariant_measures(p->value, g));
    j["group_order"] = g.order();
    const auto unique = sigma::unique_invariant_if_transitive(p->value, g);
    j["unique"] = unique ? sigma::io::weights_to_json(unique->weights()) : json(nullptr);
    emit(out, j);
  });
}

sigma_status sigma_measure_from_json(const char* text, sigma_measure** out) {
  if (!text || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::io::measure_from_json(sigma::io::parse_json(text))); });
}

void sigma_measure_free(sigma_measure* mu) { delete mu; }

sigma_status sigma_measure_to_json(const sigma_measure* mu, char** out) {
  if (!mu || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { *out = dup(sigma::io::to_json(mu->value).dump()); });
}

sigma_status sigma_measure_extend(const sigma_measure* mu, const sigma_partition* fine, const char* split_json,
                                  sigma_measure** out) {
  if (!mu || !fine || !split_json || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    const auto j = sigma::io::parse_json(split_json);
    if (!j.is_array()) sigma::fail(sigma::ErrorCode::Parse, "split weights: expected a list per coarse atom");
    std::vector<std::vector<sigma::Rational>> split;
    for (const auto& row : j) split.push_back(sigma::io::weights_from_json(row));
    give(out, sigma::extend_with_weights(mu->value, fine->value, split));
  });
}

sigma_status sigma_measure_restrict(const sigma_measure* mu, const sigma_partition* coarse, sigma_measure** out) {
  if (!mu || !coarse || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::restrict(mu->value, coarse->value)); });
}

sigma_status sigma_measure_is_invariant(const sigma_measure* mu, const sigma_group* group, int* out) {
  if (!mu || !group || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { *out = sigma::is_invariant(mu->value, group->value) ? 1 : 0; });
}

sigma_status sigma_domain_from_json(const char* text, sigma_domain** out) {
  if (!text || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { give(out, sigma::io::domain_from_json(sigma::io::parse_json(text))); });
}

sigma_status sigma_domain_build(const sigma_partition* const* generators, size_t count, sigma_domain** out) {
  if ((!generators && count) || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    std::vector<sigma::Partition> gens;
    for (size_t i = 0; i < count; ++i) {
      require(generators[i], "generator");
      gens.push_back(generators[i]->value);
    }
    if (gens.empty()) sigma::fail(sigma::ErrorCode::EmptyDomain, "no generators");
    give(out, sigma::build_domain(gens));
  });
}

void sigma_domain_free(sigma_domain* d) { delete d; }

size_t sigma_domain_size(const sigma_domain* d) { return d ? d->value.members().size() : 0; }

sigma_status sigma_domain_to_json(const sigma_domain* d, char** out) {
  if (!d || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { emit(out, sigma::io::to_json(d->value)); });
}

sigma_status sigma_domain_dot(const sigma_domain* d, char** out) {
  if (!d || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { *out = dup(sigma::io::emit_dot(d->value)); });
}

sigma_status sigma_endogenous_json(const sigma_domain* d, const sigma_group* group, char** out) {
  if (!d || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    const auto pairs = sigma::solve_endogenous(d->value);
    json list = json::array();
    for (const auto& p : pairs) list.push_back(sigma::io::to_json(p));
    json j{{"pairs", list}};
    if (group) j["uniqueness"] = sigma::io::to_json(sigma::check_uniqueness_up_to_symmetry(pairs, group->value, d->value));
    emit(out, j);
  });
}

sigma_status sigma_self_consistent_json(const sigma_measure* mu, const sigma_domain* d, char** out) {
  if (!mu || !d || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    emit(out, sigma::io::to_json(sigma::check_self_consistent(mu->value.base(), mu->value, d->value)));
  });
}

sigma_status sigma_algebras_for_json(const sigma_measure* mu, const sigma_domain* d, char** out) {
  if (!mu || !d || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { emit(out, sigma::io::to_json(sigma::algebras_for(mu->value, d->value))); });
}

sigma_status sigma_axiom_c_json(const sigma_measure* mu, const sigma_partition* fine, const sigma_domain* d, int mode,
                                char** out) {
  if (!mu || !fine || !d || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    if (mode < 0 || mode > 2) sigma::fail(sigma::ErrorCode::InvalidArgument, "axiom C mode must be 0, 1 or 2");
    const auto m = static_cast<sigma::AxiomCMode>(mode);
    auto j = sigma::io::to_json(sigma::check_axiom_c(mu->value, fine->value, d->value, m));
    j["mode"] = sigma::axiom_c_mode_name(m);
    emit(out, j);
  });
}

sigma_status sigma_event_graph(const char* chains_json, char** json_out, char** dot_out) {
  if (!chains_json) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    const auto g = sigma::io::event_graph_from_json(sigma::io::parse_json(chains_json));
    if (json_out) emit(json_out, sigma::io::to_json(g));
    if (dot_out) *dot_out = dup(sigma::io::emit_dot(g));
  });
}

sigma_status sigma_simulate_json(const sigma_partition* start, const char* policy_json, size_t max_steps,
                                 const sigma_domain* domain, char** out) {
  if (!start || !out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    const json pj = policy_json && *policy_json ? sigma::io::parse_json(policy_json) : json::object();
    const auto policy = policy_from_json(pj, start->value.size());
    std::optional<sigma::CompatibilityDomain> d;
    if (domain) d = domain->value;
    emit(out, sigma::io::to_json(sigma::simulate(start->value, policy, max_steps, d)));
  });
}

sigma_status sigma_oracle_json(size_t max_n, const char* suites, uint64_t seed, char** out, int* all_ok) {
  if (!out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    sigma::OracleConfig config;
    config.max_n = max_n;
    config.seed = seed;
    if (suites && *suites) {
      std::stringstream ss(suites);
      std::string name;
      while (std::getline(ss, name, ','))
        if (!name.empty()) config.suites.push_back(name);
    }
    const auto report = sigma::run_oracle(config);
    if (all_ok) *all_ok = report.ok() ? 1 : 0;
    emit(out, sigma::io::to_json(report));
  });
}

sigma_status sigma_oracle_suites(char** out) {
  if (!out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] {
    std::string s;
    for (const auto& name : sigma::oracle_suite_names()) s += (s.empty() ? "" : ",") + name;
    *out = dup(s);
  });
}

sigma_status sigma_oracle_max_n_from_env(size_t fallback, size_t* out) {
  if (!out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { *out = sigma::oracle_max_n_from_env(fallback); });
}

sigma_status sigma_toy_transcript(char** out) {
  if (!out) return record(SIGMA_NULL_ARGUMENT, "null argument");
  return guard([&] { *out = dup(sigma::toy_transcript()); });
}

}  // extern "C"
