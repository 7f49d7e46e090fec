#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "sigma/dynamics.hpp"
#include "sigma/endogenous.hpp"
#include "sigma/measure.hpp"
#include "sigma/oracle.hpp"
#include "sigma/partition.hpp"
#include "sigma/permutation.hpp"
#include "sigma/relation.hpp"

// Wire formats. Element labels are 1-based everywhere on the wire and
// rationals travel as "num/den" strings. Malformed input raises Error(Parse).
namespace sigma::io {

using nlohmann::json;

enum class FixtureKind { Partition, Measure, Domain, Chains, Perms };
const char* to_string(FixtureKind kind) noexcept;

struct Fixture {
  FixtureKind kind;
  json payload;
  std::string source_path;
};

// Reads and schema-checks a file. Throws Parse on I/O or schema failure.
Fixture load_fixture(const std::string& path, FixtureKind kind);
json parse_json(const std::string& text);

// {"n": 4, "blocks": [[1,2],[3,4]]}
Partition partition_from_json(const json& j);
json to_json(const Partition& p);

// {"partition": {...}, "weights": ["1/3","2/3"]}
ProbMeasure measure_from_json(const json& j);
json to_json(const ProbMeasure& mu);

std::vector<Rational> weights_from_json(const json& j);
json weights_to_json(const std::vector<Rational>& w);

// {"n": 4, "members": [{...}, ...]}; validated as a compatibility domain.
CompatibilityDomain domain_from_json(const json& j);
json to_json(const CompatibilityDomain& d);

// {"n": 4, "generators": [[[2,3]], [2,1,3,4]]}: each generator is either a
// list of cycles or a full image list.
PermGroup group_from_json(const json& j);
json to_json(const Permutation& g);  // image list
json group_to_json(const PermGroup& g, bool with_elements);

// {"source": {...}, "atom": [1,2], "parts": [[1],[2]], "label": "R2"}
AtomicRefinement refinement_from_json(const json& j, const std::string& label = {});
json to_json(const AtomicRefinement& r);
json to_json(const RefinementChain& c);

// {"chains": [["R1","R2"], ...], "steps": {"R1": {...}}}. Without "steps"
// the labels are abstract and the graph is built from the orderings alone.
EventGraph event_graph_from_json(const json& j);
json to_json(const EventGraph& g);

json to_json(const CommuteVerdict& v);
json to_json(const InvariantPolytope& p);
json to_json(const AxiomCVerdict& v);
json to_json(const SelfConsistencyReport& r);
json to_json(const EndogenousPair& p);
json to_json(const UniquenessVerdict& v);
json to_json(const AlgebrasFor& a);
json to_json(const SimulationResult& r);
json to_json(const OracleReport& r);

// Nodes in sorted label order; one edge per covering relation.
std::string emit_dot(const EventGraph& g);
// Hasse diagram of the domain under refinement, coarse to fine.
std::string emit_dot(const CompatibilityDomain& d);

}  // namespace sigma::io
