#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sigma/partition.hpp"

namespace sigma {

// Dense n x n boolean relation. Compositions of equivalences land here since
// they need not be equivalences themselves.
class BinaryRelation {
 public:
  explicit BinaryRelation(GroundSet ground);

  int size() const noexcept { return n_; }
  bool test(Element x, Element y) const { return bits_[index(x, y)] != 0; }
  void set(Element x, Element y, bool value = true) { bits_[index(x, y)] = value ? 1 : 0; }

  static BinaryRelation identity(GroundSet ground);

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;
  bool is_equivalence() const { return is_reflexive() && is_symmetric() && is_transitive(); }

  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;

 private:
  std::size_t index(Element x, Element y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y);
  }

  int n_;
  std::vector<std::uint8_t> bits_;
};

// x ~ y iff x and y share an atom.
class EquivRelation {
 public:
  static EquivRelation from_partition(const Partition& p);
  // Throws InvalidArgument unless rel is reflexive, symmetric and transitive.
  static EquivRelation from_relation(const BinaryRelation& rel);

  const BinaryRelation& relation() const noexcept { return rel_; }
  int size() const noexcept { return rel_.size(); }
  bool related(Element x, Element y) const { return rel_.test(x, y); }

  Partition to_partition() const;

 private:
  explicit EquivRelation(BinaryRelation rel) : rel_(std::move(rel)) {}
  BinaryRelation rel_;
};

// (x,z) in compose(r, s) iff there is y with (x,y) in s and (y,z) in r:
// s is applied first.
BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s);

// Result of comparing ~a∘~b with ~b∘~a.
struct CommuteVerdict {
  bool commuting = true;
  // Lexicographically smallest 0-based pair lying in exactly one of the two
  // compositions; set only when non-commuting.
  std::optional<std::pair<Element, Element>> witness;
  // True when the witness lies in ~a∘~b, false when it lies in ~b∘~a.
  bool witness_in_ab = false;
};

CommuteVerdict commute(const Partition& a, const Partition& b);

bool composition_is_equivalence(const Partition& a, const Partition& b);

}  // namespace sigma
