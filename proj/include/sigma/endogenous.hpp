#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sigma/error.hpp"
#include "sigma/measure.hpp"
#include "sigma/partition.hpp"
#include "sigma/permutation.hpp"

namespace sigma {

// Nonempty, coarsening-closed family of pairwise commuting partitions.
class CompatibilityDomain {
 public:
  // Validates all three conditions; throws EmptyDomain, GroundMismatch,
  // CommutativityViolation or InvalidArgument (not coarsening-closed).
  static CompatibilityDomain from_members(std::vector<Partition> members);

  GroundSet ground() const { return members_.front().ground(); }
  // Sorted in canonical order, no duplicates.
  const std::vector<Partition>& members() const noexcept { return members_; }
  bool contains(const Partition& p) const;
  // p commutes with every member.
  bool commutes_with_all(const Partition& p) const;

 private:
  explicit CompatibilityDomain(std::vector<Partition> members) : members_(std::move(members)) {}
  std::vector<Partition> members_;
};

// Raised when a candidate family contains a non-commuting pair.
class CommutativityViolationError : public Error {
 public:
  CommutativityViolationError(Partition a, Partition b, std::pair<Element, Element> witness);

  const Partition& first() const noexcept { return a_; }
  const Partition& second() const noexcept { return b_; }
  // 0-based pair lying in exactly one of the two compositions.
  std::pair<Element, Element> witness() const noexcept { return witness_; }

 private:
  Partition a_, b_;
  std::pair<Element, Element> witness_;
};

// Closes the generators under coarsening and checks pairwise commutativity,
// reporting the first violating pair in canonical order.
CompatibilityDomain build_domain(const std::vector<Partition>& generators);

// Members with no strict refinement inside the family.
std::vector<Partition> maximal_elements(std::span<const Partition> family);
std::vector<Partition> maximal_elements(const CompatibilityDomain& domain);
std::vector<Partition> minimal_elements(std::span<const Partition> family);

// Which symmetry an extension to a non-admissible refinement has to respect.
enum class AxiomCMode {
  // Invariant under at least one nontrivial automorphism of the finer
  // partition (cyclic subgroups tried in canonical element order).
  AnyNontrivial,
  // Invariant under the whole automorphism group of the finer partition.
  FullAut,
  // Every automorphism of the coarse partition that preserves mu must still
  // preserve the finer partition and the extension.
  Persistent,
};

const char* axiom_c_mode_name(AxiomCMode mode) noexcept;

struct AxiomCVerdict {
  enum class Kind { Vacuous, Blocked, Violated };
  Kind kind = Kind::Vacuous;
  // Set for Violated: an extension of mu satisfying the mode's symmetry.
  std::optional<ProbMeasure> extension;
  // Set for Violated in AnyNontrivial mode: the generator of the subgroup.
  std::optional<Permutation> symmetry;
};

const char* to_string(AxiomCVerdict::Kind kind) noexcept;

// Requires refines(base(mu), fine). Vacuous when fine is in the domain.
AxiomCVerdict check_axiom_c(const ProbMeasure& mu, const Partition& fine,
                            const CompatibilityDomain& domain,
                            AxiomCMode mode = AxiomCMode::AnyNontrivial);

// Some extension of mu to fine that is invariant under every listed
// permutation (each must preserve fine).
std::optional<ProbMeasure> find_invariant_extension(const ProbMeasure& mu, const Partition& fine,
                                                    std::span<const Permutation> symmetries);

struct Finding {
  std::string clause;  // "compatibility", "invariance" or "refinement"
  std::string detail;
};

struct SelfConsistencyReport {
  Partition algebra;
  ProbMeasure measure;
  bool compat_ok = false;
  bool invariance_ok = false;
  bool refinement_ok = false;
  // Strict refinements examined by the refinement clause.
  std::size_t refinements_examined = 0;
  std::vector<Finding> violations;

  bool ok() const noexcept { return compat_ok && invariance_ok && refinement_ok; }
};

struct ConsistencyOptions {
  AxiomCMode refinement_mode = AxiomCMode::Persistent;
  // Only refinements lying in the domain are examined, which makes the
  // refinement clause hold trivially.
  bool admissible_only = false;
};

// The refinement clause inspects every strict refinement q of p that is not in
// the domain and fails to commute with some member; mu must not extend to q
// under the selected symmetry mode.
SelfConsistencyReport check_self_consistent(const Partition& p, const ProbMeasure& mu,
                                            const CompatibilityDomain& domain,
                                            const ConsistencyOptions& options = {});

struct RejectedRefinement {
  Partition refinement;
  std::string reason;
};

struct CoarseningCertificate {
  Partition coarsening;
  ProbMeasure restricted;
  bool degenerate = false;
  bool nondegenerate = false;
};

struct EndogenousPair {
  Partition algebra;
  ProbMeasure measure;
  InvariantPolytope polytope;
  bool maximal_in_domain = false;
  // Upper covers of the algebra; none lies in the domain.
  std::vector<RejectedRefinement> maximality;
  // Every strict coarsening in the domain with the restricted measure.
  std::vector<CoarseningCertificate> minimality;
};

std::vector<EndogenousPair> solve_endogenous(const CompatibilityDomain& domain);

struct UniquenessVerdict {
  enum class Status { UniqueUpToSymmetry, DomainNotPreserved, NotTransitive, MeasureMismatch };
  Status status = Status::UniqueUpToSymmetry;
  bool established() const noexcept { return status == Status::UniqueUpToSymmetry; }
  std::string detail;
  // For every ordered pair (i, j), i != j: the element g with g·F_i = F_j.
  struct Mapping {
    std::size_t from, to;
    Permutation g;
  };
  std::vector<Mapping> mappings;
  // Per pair: the setwise stabiliser of the algebra in G acts transitively on
  // its atoms, so the invariant measure there is unique and uniform.
  std::vector<bool> stabiliser_transitive;
};

const char* to_string(UniquenessVerdict::Status status) noexcept;

UniquenessVerdict check_uniqueness_up_to_symmetry(std::span<const EndogenousPair> pairs,
                                                  const PermGroup& group,
                                                  const CompatibilityDomain& domain);

struct AlgebrasFor {
  std::vector<Partition> algebras;
  // Members not comparable with base(mu) from below; restriction is undefined.
  std::vector<Partition> skipped;
  std::optional<Partition> meet;
};

AlgebrasFor algebras_for(const ProbMeasure& mu, const CompatibilityDomain& domain);

}  // namespace sigma
