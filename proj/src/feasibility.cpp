#include "sigma/feasibility.hpp"

#include <algorithm>
#include <set>

#include "sigma/error.hpp"

namespace sigma {

namespace {

// sum coef[i] * y[i] <= bound
struct Inequality {
  std::vector<Rational> coef;
  Rational bound;

  friend bool operator<(const Inequality& a, const Inequality& b) {
    if (a.coef != b.coef) return a.coef < b.coef;
    return a.bound < b.bound;
  }
};

// Scales so the first nonzero coefficient has magnitude 1; makes duplicate
// detection effective.
Inequality normalized(Inequality in) {
  for (const auto& c : in.coef) {
    if (c == 0) continue;
    Rational s = c < 0 ? Rational(-c) : c;
    for (auto& v : in.coef) v /= s;
    in.bound /= s;
    break;
  }
  return in;
}

// Removes variable `var` (the last live one) from the system.
std::vector<Inequality> eliminate(const std::vector<Inequality>& system, std::size_t var) {
  std::vector<const Inequality*> pos, neg;
  std::set<Inequality> out;
  for (const auto& in : system) {
    if (in.coef[var] > 0) pos.push_back(&in);
    else if (in.coef[var] < 0) neg.push_back(&in);
    else out.insert(in);
  }
  for (const auto* p : pos)
    for (const auto* q : neg) {
      // p.coef[var] > 0, q.coef[var] < 0; combine to cancel var.
      Rational a = p->coef[var];
      Rational b = -q->coef[var];
      Inequality c{std::vector<Rational>(p->coef.size(), 0), p->bound * b + q->bound * a};
      for (std::size_t i = 0; i < c.coef.size(); ++i) c.coef[i] = p->coef[i] * b + q->coef[i] * a;
      c.coef[var] = 0;
      out.insert(normalized(std::move(c)));
    }
  return {out.begin(), out.end()};
}

}  // namespace

void NonnegativeSystem::add_equation(std::vector<Rational> row, Rational value) {
  if (row.size() != variables) fail(ErrorCode::Shape, "equation width differs from variable count");
  lhs.push_back(std::move(row));
  rhs.push_back(std::move(value));
}

std::optional<std::vector<Rational>> solve_nonnegative(const NonnegativeSystem& system) {
  const std::size_t m = system.variables;
  auto rows = system.lhs;
  auto rhs = system.rhs;
  if (rows.size() != rhs.size()) fail(ErrorCode::Shape, "row count differs from rhs length");

  // Reduced row echelon form.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[r]);
    std::swap(rhs[sel], rhs[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    rhs[r] *= inv;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      Rational f = rows[o][c];
      for (std::size_t k = 0; k < m; ++k) rows[o][k] -= f * rows[r][k];
      rhs[o] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t o = r; o < rows.size(); ++o)
    if (rhs[o] != 0) return std::nullopt;

  std::vector<bool> is_pivot(m, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::size_t> free_vars;
  for (std::size_t c = 0; c < m; ++c)
    if (!is_pivot[c]) free_vars.push_back(c);
  const std::size_t f = free_vars.size();

  // Inequalities over the free variables y: y >= 0 and each pivot >= 0, where
  // pivot_r = rhs_r - sum_j rows[r][free_j] * y_j.
  std::vector<Inequality> top;
  for (std::size_t j = 0; j < f; ++j) {
    Inequality in{std::vector<Rational>(f, 0), 0};
    in.coef[j] = -1;
    top.push_back(std::move(in));
  }
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    Inequality in{std::vector<Rational>(f, 0), rhs[i]};
    for (std::size_t j = 0; j < f; ++j) in.coef[j] = rows[i][free_vars[j]];
    top.push_back(normalized(std::move(in)));
  }

  // levels[k] constrains y_0..y_{k-1} only.
  std::vector<std::vector<Inequality>> levels(f + 1);
  levels[f] = std::move(top);
  for (std::size_t k = f; k > 0; --k) levels[k - 1] = eliminate(levels[k], k - 1);
  for (const auto& in : levels[0])
    if (in.bound < 0) return std::nullopt;

  std::vector<Rational> y(f, 0);
  for (std::size_t k = 1; k <= f; ++k) {
    const std::size_t var = k - 1;
    std::optional<Rational> lo, hi;
    for (const auto& in : levels[k]) {
      if (in.coef[var] == 0) continue;
      Rational rest = in.bound;
      for (std::size_t j = 0; j < var; ++j) rest -= in.coef[j] * y[j];
      Rational limit = rest / in.coef[var];
      if (in.coef[var] > 0) {
        if (!hi || limit < *hi) hi = limit;
      } else {
        if (!lo || limit > *lo) lo = limit;
      }
    }
    if (lo && hi && *lo > *hi) fail(ErrorCode::InvalidArgument, "feasibility back-substitution failed");
    y[var] = lo ? *lo : (hi ? std::min(*hi, Rational(0)) : Rational(0));
  }

  std::vector<Rational> x(m, 0);
  for (std::size_t j = 0; j < f; ++j) x[free_vars[j]] = y[j];
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    Rational v = rhs[i];
    for (std::size_t j = 0; j < f; ++j) v -= rows[i][free_vars[j]] * y[j];
    x[pivot_col[i]] = v;
  }
  return x;
}

}  // namespace sigma
