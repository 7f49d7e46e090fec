#pragma once

#include <optional>
#include <vector>

#include "sigma/partition.hpp"
#include "sigma/permutation.hpp"
#include "sigma/rational.hpp"

namespace sigma {

// Exact probability vector over the atoms of a partition.
class ProbMeasure {
 public:
  // Throws Shape, NegativeWeight or WeightSum.
  ProbMeasure(Partition base, std::vector<Rational> weights);

  static ProbMeasure uniform(const Partition& base);
  // All mass on one atom.
  static ProbMeasure point(const Partition& base, std::size_t atom);

  const Partition& base() const noexcept { return base_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const Rational& weight(std::size_t atom) const { return weights_.at(atom); }
  // Mass of an arbitrary union of atoms; throws InvalidArgument if the set is
  // not measurable for base().
  Rational mass(const Block& set) const;

  friend bool operator==(const ProbMeasure&, const ProbMeasure&) = default;

 private:
  Partition base_;
  std::vector<Rational> weights_;
};

std::string to_string(const ProbMeasure& mu);

// Marginal on a coarser partition. Throws NotARefinement.
ProbMeasure restrict(const ProbMeasure& mu, const Partition& coarse);

// Splits every subdivided atom A of base(mu) into its fine parts A_1..A_k with
// nu(A_i) = mu(A) * p_i. split_weights is indexed by coarse atom; entry i
// lists p for the fine atoms inside coarse atom i, in canonical order. Atoms
// that are not subdivided may carry an empty list.
ProbMeasure extend_with_weights(const ProbMeasure& mu, const Partition& fine,
                                const std::vector<std::vector<Rational>>& split_weights);

// Some atom has weight exactly 1.
bool is_degenerate(const ProbMeasure& mu);
// Every atom has weight strictly inside (0, 1).
bool is_nondegenerate(const ProbMeasure& mu);

// Measure on g·base(mu) with (g#mu)(g·A) = mu(A).
ProbMeasure pushforward(const Permutation& g, const ProbMeasure& mu);

// mu(g^-1 A) = mu(A) for all atoms A and all generators g. Throws
// InvalidGroup when some generator does not preserve base(mu).
bool is_invariant(const ProbMeasure& mu, const PermGroup& group);

// (1/|G|) sum over g of g#mu. Throws InvalidGroup unless G preserves base.
ProbMeasure group_average(const ProbMeasure& mu, const PermGroup& group);

// The set of group-invariant measures on p: weights constant on atom orbits.
struct InvariantPolytope {
  Partition base;
  std::vector<std::vector<std::size_t>> orbits;
  std::size_t dimension = 0;
  // Group average of the uniform-on-atoms measure.
  ProbMeasure representative;
  // One vertex per orbit: mass spread uniformly over that orbit's atoms.
  std::vector<ProbMeasure> vertices;

  bool contains(const ProbMeasure& mu) const;
};

InvariantPolytope invariant_measures(const Partition& p, const PermGroup& group);

// Uniform 1/k when the group acts transitively on the atoms of p.
std::optional<ProbMeasure> unique_invariant_if_transitive(const Partition& p,
                                                          const PermGroup& group);

}  // namespace sigma
