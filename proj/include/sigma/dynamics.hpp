#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sigma/endogenous.hpp"
#include "sigma/measure.hpp"
#include "sigma/partition.hpp"

namespace sigma {

// One atom of `source` replaced by two or more parts; every other atom kept.
class AtomicRefinement {
 public:
  // Throws NotApplicable if `atom` is not an atom of source, Shape if parts do
  // not partition it into at least two nonempty blocks.
  AtomicRefinement(Partition source, Block atom, std::vector<Block> parts,
                   std::optional<std::string> label = std::nullopt);
  // Recovers the split from a source/target pair differing in exactly one atom.
  static AtomicRefinement between(const Partition& source, const Partition& target,
                                  std::optional<std::string> label = std::nullopt);

  const std::string& label() const noexcept { return label_; }
  const Partition& source() const noexcept { return source_; }
  const Partition& target() const noexcept { return target_; }
  std::size_t split_atom() const noexcept { return split_atom_; }
  const Block& atom() const noexcept { return atom_; }
  const std::vector<Block>& parts() const noexcept { return parts_; }

  // Operator view: applicable to any partition having atom() as an atom.
  bool applicable(const Partition& p) const { return p.find_atom(atom_).has_value(); }
  Partition apply(const Partition& p) const;

  // Same split of the same atom; labels and sources are ignored.
  bool same_operator(const AtomicRefinement& other) const {
    return atom_ == other.atom_ && parts_ == other.parts_;
  }

 private:
  Partition source_;
  Partition target_;
  std::size_t split_atom_ = 0;
  Block atom_;
  std::vector<Block> parts_;  // canonical: sorted blocks ordered by minimum
  std::string label_;
};

// "{1,2}>{1}|{2}".
std::string canonical_label(const Block& atom, const std::vector<Block>& parts);

// Each atom of size >= 2 in canonical order; for each, every set partition of
// it into >= 2 blocks in restricted growth string order.
std::vector<AtomicRefinement> enumerate_atomic_refinements(const Partition& p);

class RefinementChain {
 public:
  RefinementChain() = default;
  // Steps are chained through their sources: each step's source must equal
  // the previous step's target. Throws InvalidArgument otherwise.
  explicit RefinementChain(std::vector<AtomicRefinement> steps);
  static RefinementChain empty(const Partition& start);

  const std::vector<AtomicRefinement>& steps() const noexcept { return steps_; }
  // start, after step 1, ..., after step n.
  const std::vector<Partition>& algebras() const noexcept { return algebras_; }
  std::size_t length() const noexcept { return steps_.size(); }

 private:
  std::vector<AtomicRefinement> steps_;
  std::vector<Partition> algebras_;
};

// Binary steps from coarse to fine: always split the lowest-index atom not
// yet an atom of fine into the fine block holding its minimum and the rest.
RefinementChain decompose(const Partition& coarse, const Partition& fine);

enum class CausalRelation { Spacelike, Timelike };
const char* to_string(CausalRelation r) noexcept;

// Requires a common source (SourceMismatch); spacelike iff the targets commute.
CausalRelation classify(const AtomicRefinement& a, const AtomicRefinement& b);

// Operators commute iff they split distinct atoms of the common partition
// (default: a.source()). Throws NotApplicable if either is not applicable.
bool operators_commute(const AtomicRefinement& a, const AtomicRefinement& b,
                       const std::optional<Partition>& common = std::nullopt);

struct BranchingRule {
  enum class Kind { Uniform, ProportionalToParts, Table };
  Kind kind = Kind::Uniform;
  std::vector<Rational> table;

  static BranchingRule uniform() { return {Kind::Uniform, {}}; }
  static BranchingRule proportional_to_parts() { return {Kind::ProportionalToParts, {}}; }
  static BranchingRule from_table(std::vector<Rational> w) { return {Kind::Table, std::move(w)}; }
};

// Branches must be pairwise timelike refinements of one source.
std::vector<Rational> branching_weights(const std::vector<AtomicRefinement>& branches,
                                        const BranchingRule& rule);

// Extends mu step by step along the chain; weights[s] gives the split
// weights of step s in the order of its parts.
ProbMeasure extend_along(const ProbMeasure& mu, const RefinementChain& chain,
                         const std::vector<std::vector<Rational>>& weights);

// Applies `first` with weights w_first and then realises `second` inside the
// result, giving each intersection A_i ∩ B_j the conditional weight of its B
// part. The refinements must be spacelike with a common source equal to
// base(mu). The result lives on join(target(first), target(second)).
ProbMeasure extend_spacelike(const ProbMeasure& mu, const AtomicRefinement& first,
                             const std::vector<Rational>& w_first,
                             const AtomicRefinement& second,
                             const std::vector<Rational>& w_second);

bool histories_coherent(const RefinementChain& h1, const RefinementChain& h2);

// Nodes are step labels. An edge a -> b means a precedes b: at least one
// chain holds both and every chain holding both puts a first.
class EventGraph {
 public:
  // Chains of labels. Throws Cyclicity if the relation has a cycle and
  // InvalidArgument on a label repeated inside one chain.
  static EventGraph from_label_chains(const std::vector<std::vector<std::string>>& chains);
  // Throws LabelConflict when one label names two different refinements.
  static EventGraph from_chains(const std::vector<RefinementChain>& chains);

  // Sorted.
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  // Full precedence relation, sorted.
  const std::vector<std::pair<std::string, std::string>>& relation() const noexcept {
    return relation_;
  }
  // Transitive reduction of relation(), sorted.
  std::vector<std::pair<std::string, std::string>> covers() const;
  bool precedes(const std::string& a, const std::string& b) const;
  bool comparable(const std::string& a, const std::string& b) const {
    return precedes(a, b) || precedes(b, a);
  }
  const std::vector<std::vector<std::string>>& chains() const noexcept { return chains_; }

 private:
  std::vector<std::string> nodes_;
  std::vector<std::pair<std::string, std::string>> relation_;
  std::vector<std::vector<std::string>> chains_;
};

struct SimulationPolicy {
  enum class Kind { Exhaustive, Scripted, RuleDriven };
  enum class Rule { LargestAtomHalving, Random };
  Kind kind = Kind::Exhaustive;
  std::vector<std::pair<Block, std::vector<Block>>> script;  // (atom, parts)
  Rule rule = Rule::LargestAtomHalving;
  std::uint64_t seed = 0;
};

struct SimulationResult {
  enum class Outcome { Stabilized, StepBudgetExhausted, ScriptCompleted };
  Partition final_partition;
  RefinementChain trace;
  Outcome outcome = Outcome::Stabilized;
};

const char* to_string(SimulationResult::Outcome o) noexcept;

// Repeatedly applies one atomic refinement chosen by the policy. With a
// domain, only refinements whose result lies in the domain are admissible.
// Stabilised means no admissible refinement remains.
SimulationResult simulate(const Partition& start, const SimulationPolicy& policy,
                          std::size_t max_steps,
                          const std::optional<CompatibilityDomain>& domain = std::nullopt);

}  // namespace sigma
