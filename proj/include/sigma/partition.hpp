#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sigma {

using Element = int;
using Block = std::vector<Element>;

// Upper bound on n for exhaustive enumeration helpers. Defaults to 8 and can
// be lowered or raised (up to 10) at runtime.
std::size_t oracle_bound() noexcept;
void set_oracle_bound(std::size_t n);

// Finite ground set {0, ..., n-1}.
class GroundSet {
 public:
  explicit GroundSet(int n);

  int size() const noexcept { return n_; }
  bool contains(Element x) const noexcept { return x >= 0 && x < n_; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int n_;
};

// A partition of the ground set in canonical form: atoms sorted internally,
// ordered by their minimum element, atom indices assigned in that order.
// The atom_of vector is therefore a restricted growth string.
class Partition {
 public:
  static Partition trivial(GroundSet ground);
  static Partition discrete(GroundSet ground);

  // Builds the canonical partition from arbitrary blocks. Throws Overlap,
  // Coverage, Shape (empty block) or InvalidArgument (element out of range).
  static Partition canonicalize(const std::vector<Block>& blocks,
                                GroundSet ground);

  // Builds from any labelling; equal labels mean the same atom.
  static Partition from_labels(const std::vector<int>& labels);

  GroundSet ground() const noexcept { return GroundSet(static_cast<int>(atom_of_.size())); }
  int size() const noexcept { return static_cast<int>(atom_of_.size()); }
  std::size_t atom_count() const noexcept { return atoms_.size(); }

  const std::vector<Block>& atoms() const noexcept { return atoms_; }
  const Block& atom(std::size_t i) const { return atoms_.at(i); }
  const std::vector<int>& atom_of() const noexcept { return atom_of_; }
  int atom_of(Element x) const { return atom_of_.at(static_cast<std::size_t>(x)); }

  // Index of the atom equal to the given element set, if any.
  std::optional<std::size_t> find_atom(const Block& block) const;

  bool is_trivial() const noexcept { return atoms_.size() == 1; }
  bool is_discrete() const noexcept { return atoms_.size() == atom_of_.size(); }

  // Canonical order is lexicographic on the restricted growth string.
  friend bool operator==(const Partition& a, const Partition& b) {
    return a.atom_of_ == b.atom_of_;
  }
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.atom_of_ <=> b.atom_of_;
  }

 private:
  explicit Partition(std::vector<int> rgs);
  friend void for_each_partition(GroundSet ground,
                                 const std::function<void(const Partition&)>& visit);

  std::vector<int> atom_of_;
  std::vector<Block> atoms_;
};

// Fine refines coarse; block_map[j] is the coarse atom holding fine atom j.
struct RefinementWitness {
  Partition coarse;
  Partition fine;
  std::vector<std::size_t> block_map;
};

void require_same_ground(const Partition& a, const Partition& b);

bool refines(const Partition& coarse, const Partition& fine);
std::optional<RefinementWitness> is_refinement(const Partition& coarse,
                                               const Partition& fine);
bool strictly_refines(const Partition& coarse, const Partition& fine);

// Coarsest common refinement: the nonempty pairwise atom intersections.
Partition join(const Partition& a, const Partition& b);
// Finest common coarsening.
Partition meet(const Partition& a, const Partition& b);

// Every partition of the ground set exactly once, in restricted growth string
// order. Throws OracleBoundExceeded above oracle_bound().
void for_each_partition(GroundSet ground,
                        const std::function<void(const Partition&)>& visit);
std::vector<Partition> enumerate_partitions(GroundSet ground);

// All q with q coarser than or equal to p, ordered by the restricted growth
// string of the merge pattern on p's atoms (trivial first, p last).
std::vector<Partition> coarsenings(const Partition& p);

// "{1,2}|{3,4}" using 1-based labels.
std::string to_string(const Partition& p);

}  // namespace sigma

template <>
struct std::hash<sigma::Partition> {
  std::size_t operator()(const sigma::Partition& p) const noexcept;
};
