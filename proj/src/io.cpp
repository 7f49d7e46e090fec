#include "sigma/io.hpp"

#include <fstream>
#include <sstream>

namespace sigma::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::Parse, what); }

const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object()) bad(std::string(where) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string(where) + ": missing \"" + key + "\"");
  return *it;
}

int as_int(const json& j, const char* where) {
  if (!j.is_number_integer()) bad(std::string(where) + ": expected an integer");
  return j.get<int>();
}

// 1-based labels on the wire, 0-based inside.
Block block_from_json(const json& j, int n, const char* where) {
  if (!j.is_array()) bad(std::string(where) + ": expected an array of element labels");
  Block b;
  for (const auto& e : j) {
    int label = as_int(e, where);
    if (label < 1 || label > n)
      bad(std::string(where) + ": label " + std::to_string(label) + " outside 1.." + std::to_string(n));
    b.push_back(label - 1);
  }
  return b;
}

json block_to_json(const Block& b) {
  json out = json::array();
  for (Element x : b) out.push_back(x + 1);
  return out;
}

std::vector<Block> blocks_from_json(const json& j, int n, const char* where) {
  if (!j.is_array()) bad(std::string(where) + ": expected an array of blocks");
  std::vector<Block> blocks;
  for (const auto& b : j) blocks.push_back(block_from_json(b, n, where));
  return blocks;
}

json blocks_to_json(const std::vector<Block>& blocks) {
  json out = json::array();
  for (const auto& b : blocks) out.push_back(block_to_json(b));
  return out;
}

Partition partition_with_n(const json& j, std::optional<int> n_hint) {
  std::optional<int> n;
  if (j.is_object() && j.contains("n")) n = as_int(j["n"], "partition.n");
  if (n && n_hint && *n != *n_hint)
    bad("partition has n=" + std::to_string(*n) + " but n=" + std::to_string(*n_hint) + " expected");
  if (!n) n = n_hint;
  if (!n) bad("partition: missing \"n\"");
  if (*n < 1) bad("partition.n must be positive");
  return Partition::canonicalize(blocks_from_json(field(j, "blocks", "partition"), *n, "partition.blocks"),
                                 GroundSet(*n));
}

}  // namespace

const char* to_string(FixtureKind kind) noexcept {
  switch (kind) {
    case FixtureKind::Partition: return "partition";
    case FixtureKind::Measure: return "measure";
    case FixtureKind::Domain: return "domain";
    case FixtureKind::Chains: return "chains";
    case FixtureKind::Perms: return "perms";
  }
  return "?";
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Fixture load_fixture(const std::string& path, FixtureKind kind) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Fixture f{kind, parse_json(ss.str()), path};
  // Schema check by decoding once.
  try {
    switch (kind) {
      case FixtureKind::Partition: partition_from_json(f.payload); break;
      case FixtureKind::Measure: measure_from_json(f.payload); break;
      case FixtureKind::Domain: domain_from_json(f.payload); break;
      case FixtureKind::Chains: event_graph_from_json(f.payload); break;
      case FixtureKind::Perms: group_from_json(f.payload); break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) bad(path + ": " + e.what());
    throw;
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
  return f;
}

Partition partition_from_json(const json& j) { return partition_with_n(j, std::nullopt); }

json to_json(const Partition& p) {
  return json{{"n", p.size()}, {"blocks", blocks_to_json(p.atoms())}};
}

std::vector<Rational> weights_from_json(const json& j) {
  if (!j.is_array()) bad("weights: expected an array");
  std::vector<Rational> w;
  for (const auto& e : j) {
    if (e.is_string()) w.push_back(parse_rational(e.get<std::string>()));
    else if (e.is_number_integer()) w.emplace_back(e.get<long long>());
    else bad("weights: entries must be \"num/den\" strings or integers");
  }
  return w;
}

json weights_to_json(const std::vector<Rational>& w) {
  json out = json::array();
  for (const auto& x : w) out.push_back(sigma::to_string(x));
  return out;
}

ProbMeasure measure_from_json(const json& j) {
  auto p = partition_from_json(field(j, "partition", "measure"));
  return ProbMeasure(std::move(p), weights_from_json(field(j, "weights", "measure")));
}

json to_json(const ProbMeasure& mu) {
  return json{{"partition", to_json(mu.base())}, {"weights", weights_to_json(mu.weights())}};
}

CompatibilityDomain domain_from_json(const json& j) {
  int n = as_int(field(j, "n", "domain"), "domain.n");
  const auto& members = field(j, "members", "domain");
  if (!members.is_array()) bad("domain.members: expected an array");
  std::vector<Partition> parts;
  for (const auto& m : members) parts.push_back(partition_with_n(m, n));
  return CompatibilityDomain::from_members(std::move(parts));
}

json to_json(const CompatibilityDomain& d) {
  json members = json::array();
  for (const auto& m : d.members()) members.push_back(to_json(m));
  return json{{"n", d.ground().size()}, {"members", members}};
}

PermGroup group_from_json(const json& j) {
  int n = as_int(field(j, "n", "perms"), "perms.n");
  if (n < 1) bad("perms.n must be positive");
  const auto& gens = field(j, "generators", "perms");
  if (!gens.is_array()) bad("perms.generators: expected an array");
  std::vector<Permutation> out;
  for (const auto& g : gens) {
    if (!g.is_array()) bad("perms.generators: each generator must be an array");
    if (!g.empty() && g.front().is_array()) {
      std::vector<std::vector<Element>> cycles;
      for (const auto& c : g) cycles.push_back(block_from_json(c, n, "perms cycle"));
      try {
        out.push_back(Permutation::from_cycles(GroundSet(n), cycles));
      } catch (const Error& e) {
        bad(std::string("perms: ") + e.what());
      }
    } else if (g.empty()) {
      out.push_back(Permutation::identity(GroundSet(n)));
    } else {
      auto image = block_from_json(g, n, "perms image");
      if (static_cast<int>(image.size()) != n) bad("perms: image list must have n entries");
      try {
        out.emplace_back(image);
      } catch (const Error& e) {
        bad(std::string("perms: ") + e.what());
      }
    }
  }
  return PermGroup::generate(GroundSet(n), std::move(out));
}

json to_json(const Permutation& g) { return block_to_json(g.image()); }

json group_to_json(const PermGroup& g, bool with_elements) {
  json gens = json::array();
  for (const auto& p : g.generators()) gens.push_back(to_json(p));
  json out{{"n", g.degree()}, {"order", g.order()}, {"generators", gens}};
  if (with_elements) {
    json elems = json::array();
    for (const auto& p : g.elements()) elems.push_back(sigma::to_string(p));
    out["elements"] = elems;
  }
  return out;
}

AtomicRefinement refinement_from_json(const json& j, const std::string& label) {
  auto source = partition_from_json(field(j, "source", "refinement"));
  const int n = source.size();
  auto atom = block_from_json(field(j, "atom", "refinement"), n, "refinement.atom");
  auto parts = blocks_from_json(field(j, "parts", "refinement"), n, "refinement.parts");
  std::optional<std::string> name;
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad("refinement.label must be a string");
    name = j["label"].get<std::string>();
  }
  if (!label.empty()) {
    if (name && *name != label) bad("refinement label " + *name + " disagrees with key " + label);
    name = label;
  }
  return AtomicRefinement(std::move(source), std::move(atom), std::move(parts), std::move(name));
}

json to_json(const AtomicRefinement& r) {
  return json{{"label", r.label()},
              {"source", to_json(r.source())},
              {"atom", block_to_json(r.atom())},
              {"parts", blocks_to_json(r.parts())},
              {"target", to_json(r.target())}};
}

json to_json(const RefinementChain& c) {
  json steps = json::array();
  for (const auto& s : c.steps()) steps.push_back(to_json(s));
  json algebras = json::array();
  for (const auto& a : c.algebras()) algebras.push_back(to_json(a));
  return json{{"steps", steps}, {"algebras", algebras}};
}

EventGraph event_graph_from_json(const json& j) {
  const auto& chains = field(j, "chains", "chains");
  if (!chains.is_array()) bad("chains.chains: expected an array");
  std::vector<std::vector<std::string>> labels;
  for (const auto& c : chains) {
    if (!c.is_array()) bad("chains.chains: each chain must be an array of labels");
    std::vector<std::string> seq;
    for (const auto& l : c) {
      if (!l.is_string()) bad("chains.chains: labels must be strings");
      seq.push_back(l.get<std::string>());
    }
    labels.push_back(std::move(seq));
  }
  if (!j.contains("steps")) return EventGraph::from_label_chains(labels);

  const auto& steps = j["steps"];
  if (!steps.is_object()) bad("chains.steps: expected an object keyed by label");
  std::map<std::string, AtomicRefinement> defs;
  for (const auto& [key, value] : steps.items()) defs.emplace(key, refinement_from_json(value, key));
  std::vector<RefinementChain> built;
  for (const auto& seq : labels) {
    std::vector<AtomicRefinement> chain;
    for (const auto& l : seq) {
      auto it = defs.find(l);
      if (it == defs.end()) bad("chains: label " + l + " has no step definition");
      chain.push_back(it->second);
    }
    if (!chain.empty()) built.emplace_back(std::move(chain));
  }
  auto g = EventGraph::from_chains(built);
  // Keep empty chains out of the graph but preserve labels of every chain.
  return g;
}

json to_json(const EventGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.covers()) edges.push_back(json::array({a, b}));
  json relation = json::array();
  for (const auto& [a, b] : g.relation()) relation.push_back(json::array({a, b}));
  return json{{"nodes", g.nodes()},
              {"covers", edges},
              {"relation", relation},
              {"acyclic", true},
              {"reading", "non-vacuous: an edge needs at least one chain holding both steps"}};
}

json to_json(const CommuteVerdict& v) {
  json out{{"commuting", v.commuting}};
  if (v.witness) {
    out["witness"] = json::array({v.witness->first + 1, v.witness->second + 1});
    out["witness_in"] = v.witness_in_ab ? "a∘b" : "b∘a";
  }
  return out;
}

json to_json(const InvariantPolytope& p) {
  json orbits = json::array();
  for (const auto& o : p.orbits) {
    json atoms = json::array();
    for (auto i : o) atoms.push_back(block_to_json(p.base.atom(i)));
    orbits.push_back(atoms);
  }
  json vertices = json::array();
  for (const auto& v : p.vertices) vertices.push_back(weights_to_json(v.weights()));
  return json{{"partition", to_json(p.base)},
              {"orbits", orbits},
              {"dimension", p.dimension},
              {"representative", weights_to_json(p.representative.weights())},
              {"vertices", vertices}};
}

json to_json(const AxiomCVerdict& v) {
  json out{{"verdict", sigma::to_string(v.kind)}};
  if (v.extension) out["extension"] = to_json(*v.extension);
  if (v.symmetry) out["symmetry"] = sigma::to_string(*v.symmetry);
  return out;
}

json to_json(const SelfConsistencyReport& r) {
  json violations = json::array();
  for (const auto& f : r.violations) violations.push_back(json{{"clause", f.clause}, {"detail", f.detail}});
  return json{{"algebra", to_json(r.algebra)},
              {"weights", weights_to_json(r.measure.weights())},
              {"compat_ok", r.compat_ok},
              {"invariance_ok", r.invariance_ok},
              {"refinement_ok", r.refinement_ok},
              {"self_consistent", r.ok()},
              {"refinements_examined", r.refinements_examined},
              {"violations", violations}};
}

json to_json(const EndogenousPair& p) {
  json maximality = json::array();
  for (const auto& r : p.maximality)
    maximality.push_back(json{{"refinement", to_json(r.refinement)}, {"reason", r.reason}});
  json minimality = json::array();
  for (const auto& c : p.minimality)
    minimality.push_back(json{{"coarsening", to_json(c.coarsening)},
                              {"restricted", weights_to_json(c.restricted.weights())},
                              {"degenerate", c.degenerate},
                              {"nondegenerate", c.nondegenerate}});
  return json{{"algebra", to_json(p.algebra)},
              {"measure", weights_to_json(p.measure.weights())},
              {"polytope", to_json(p.polytope)},
              {"certificate",
               {{"maximal_in_domain", p.maximal_in_domain},
                {"maximality", maximality},
                {"minimality", minimality}}}};
}

json to_json(const UniquenessVerdict& v) {
  json maps = json::array();
  for (const auto& m : v.mappings)
    maps.push_back(json{{"from", m.from}, {"to", m.to}, {"g", sigma::to_string(m.g)}});
  return json{{"established", v.established()},
              {"status", sigma::to_string(v.status)},
              {"detail", v.detail},
              {"mappings", maps},
              {"stabiliser_transitive", v.stabiliser_transitive}};
}

json to_json(const AlgebrasFor& a) {
  json algebras = json::array();
  for (const auto& p : a.algebras) algebras.push_back(to_json(p));
  json skipped = json::array();
  for (const auto& p : a.skipped) skipped.push_back(to_json(p));
  json out{{"algebras", algebras}, {"skipped", skipped}};
  out["meet"] = a.meet ? to_json(*a.meet) : json(nullptr);
  return out;
}

json to_json(const SimulationResult& r) {
  return json{{"final", to_json(r.final_partition)},
              {"outcome", sigma::to_string(r.outcome)},
              {"steps", r.trace.length()},
              {"trace", to_json(r.trace)}};
}

json to_json(const OracleReport& r) {
  json suites = json::array();
  for (const auto& s : r.suites)
    suites.push_back(json{{"suite", s.name},
                          {"cases", s.cases},
                          {"passed", s.passed},
                          {"failures", s.failures}});
  return json{{"max_n", r.config.max_n}, {"seed", r.config.seed}, {"ok", r.ok()}, {"suites", suites}};
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string emit_dot(const EventGraph& g) {
  std::ostringstream os;
  os << "digraph event_graph {\n";
  for (const auto& n : g.nodes()) os << "  \"" << dot_escape(n) << "\";\n";
  for (const auto& [a, b] : g.covers())
    os << "  \"" << dot_escape(a) << "\" -> \"" << dot_escape(b) << "\";\n";
  os << "}\n";
  return os.str();
}

std::string emit_dot(const CompatibilityDomain& d) {
  const auto& m = d.members();
  std::ostringstream os;
  os << "digraph refinement_poset {\n";
  for (const auto& p : m) os << "  \"" << sigma::to_string(p) << "\";\n";
  for (const auto& a : m)
    for (const auto& b : m) {
      if (!strictly_refines(a, b)) continue;
      bool covered = std::none_of(m.begin(), m.end(), [&](const Partition& c) {
        return strictly_refines(a, c) && strictly_refines(c, b);
      });
      if (covered) os << "  \"" << sigma::to_string(a) << "\" -> \"" << sigma::to_string(b) << "\";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace sigma::io
