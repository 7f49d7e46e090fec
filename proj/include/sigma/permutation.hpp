#pragma once

#include <string>
#include <vector>

#include "sigma/partition.hpp"

namespace sigma {

// Bijection of {0..n-1}; image[x] is where x goes.
class Permutation {
 public:
  explicit Permutation(std::vector<Element> image);
  static Permutation identity(GroundSet ground);
  // From 0-based disjoint cycles, e.g. {{1,2}} is the transposition of the
  // second and third element.
  static Permutation from_cycles(GroundSet ground, const std::vector<std::vector<Element>>& cycles);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  Element operator()(Element x) const { return image_.at(static_cast<std::size_t>(x)); }
  const std::vector<Element>& image() const noexcept { return image_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  // (g * h)(x) = g(h(x)).
  friend Permutation operator*(const Permutation& g, const Permutation& h);

  Block apply(const Block& set) const;
  // g·P: the partition whose atoms are the images g(A).
  Partition apply(const Partition& p) const;
  bool preserves(const Partition& p) const { return apply(p) == p; }
  // For g preserving p: position i holds the index of the atom g(A_i).
  std::vector<std::size_t> atom_action(const Partition& p) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.image_ <=> b.image_;
  }

 private:
  std::vector<Element> image_;
};

// "(1 2)(3 4)" in 1-based cycle notation; "()" for the identity.
std::string to_string(const Permutation& g);

// Finite permutation group with its elements materialised once, sorted
// lexicographically by image vector (identity first).
class PermGroup {
 public:
  // Closure of the generators under composition.
  static PermGroup generate(GroundSet ground, std::vector<Permutation> generators);
  static PermGroup trivial(GroundSet ground);
  static PermGroup symmetric(GroundSet ground);

  int degree() const noexcept { return n_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(const Permutation& g) const;

  bool preserves(const Partition& p) const;
  // Orbits of the induced action on p's atoms, each sorted, ordered by least
  // atom index. Requires preserves(p).
  std::vector<std::vector<std::size_t>> atom_orbits(const Partition& p) const;

 private:
  friend PermGroup automorphism_group(const Partition& p);
  PermGroup(int n, std::vector<Permutation> generators, std::vector<Permutation> elements)
      : n_(n), generators_(std::move(generators)), elements_(std::move(elements)) {}

  int n_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

// Every permutation mapping atoms of p onto atoms of p, found by exhaustive
// search. Throws OracleBoundExceeded above the oracle bound.
PermGroup automorphism_group(const Partition& p);

}  // namespace sigma
