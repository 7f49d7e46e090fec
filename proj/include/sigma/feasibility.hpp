#pragma once

#include <optional>
#include <vector>

#include "sigma/rational.hpp"

namespace sigma {

// Equality system A x = b over the rationals with x >= 0 componentwise.
struct NonnegativeSystem {
  std::size_t variables = 0;
  std::vector<std::vector<Rational>> lhs;  // one row per equation
  std::vector<Rational> rhs;

  void add_equation(std::vector<Rational> row, Rational value);
};

// Exact feasibility. Gaussian elimination expresses the pivot variables in
// terms of the free ones; Fourier–Motzkin elimination then decides the
// resulting inequality system over the free variables. On success returns a
// solution obtained by back-substitution, taking each free variable at its
// least feasible value.
std::optional<std::vector<Rational>> solve_nonnegative(const NonnegativeSystem& system);

}  // namespace sigma
