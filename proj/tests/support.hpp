#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "sigma/partition.hpp"
#include "sigma/rational.hpp"

namespace sigma::test {

inline const GroundSet omega4{4};

// Blocks with 1-based labels.
inline Partition P(std::vector<Block> blocks, int n = 4) {
  for (auto& b : blocks)
    for (auto& x : b) --x;
  return Partition::canonicalize(blocks, GroundSet(n));
}

inline Partition PA() { return P({{1, 2}, {3, 4}}); }
inline Partition PB() { return P({{1, 3}, {2, 4}}); }
inline Partition PBp() { return P({{1, 3, 4}, {2}}); }
inline Partition F0(int n = 4) { return Partition::trivial(GroundSet(n)); }
inline Partition D(int n = 4) { return Partition::discrete(GroundSet(n)); }

inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline std::vector<Rational> W(std::initializer_list<Rational> xs) { return xs; }

}  // namespace sigma::test
