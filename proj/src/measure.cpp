#include "sigma/measure.hpp"

#include <algorithm>

#include "sigma/error.hpp"

namespace sigma {

ProbMeasure::ProbMeasure(Partition base, std::vector<Rational> weights)
    : base_(std::move(base)), weights_(std::move(weights)) {
  if (weights_.size() != base_.atom_count())
    fail(ErrorCode::Shape, "measure has " + std::to_string(weights_.size()) +
                               " weights for " + std::to_string(base_.atom_count()) + " atoms");
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] < 0)
      fail(ErrorCode::NegativeWeight, "atom " + std::to_string(i) + " has negative weight " +
                                          to_string(weights_[i]));
  if (auto total = sum(weights_); total != 1)
    fail(ErrorCode::WeightSum, "weights sum to " + to_string(total) + ", not 1");
}

ProbMeasure ProbMeasure::uniform(const Partition& base) {
  const auto k = base.atom_count();
  return ProbMeasure(base, std::vector<Rational>(k, Rational(1, static_cast<long>(k))));
}

ProbMeasure ProbMeasure::point(const Partition& base, std::size_t atom) {
  std::vector<Rational> w(base.atom_count(), 0);
  w.at(atom) = 1;
  return ProbMeasure(base, std::move(w));
}

Rational ProbMeasure::mass(const Block& set) const {
  Rational total = 0;
  std::vector<bool> member(static_cast<std::size_t>(base_.size()), false);
  for (Element x : set) member.at(static_cast<std::size_t>(x)) = true;
  for (std::size_t i = 0; i < base_.atom_count(); ++i) {
    const auto& atom = base_.atom(i);
    auto inside = std::count_if(atom.begin(), atom.end(),
                                [&](Element x) { return member[static_cast<std::size_t>(x)]; });
    if (inside == 0) continue;
    if (static_cast<std::size_t>(inside) != atom.size())
      fail(ErrorCode::InvalidArgument, "set is not a union of atoms");
    total += weights_[i];
  }
  return total;
}

std::string to_string(const ProbMeasure& mu) {
  return to_string(mu.base()) + " " + format_weights(mu.weights());
}

ProbMeasure restrict(const ProbMeasure& mu, const Partition& coarse) {
  auto witness = is_refinement(coarse, mu.base());
  if (!witness)
    fail(ErrorCode::NotARefinement,
         to_string(mu.base()) + " does not refine " + to_string(coarse));
  std::vector<Rational> w(coarse.atom_count(), 0);
  for (std::size_t j = 0; j < witness->block_map.size(); ++j) w[witness->block_map[j]] += mu.weight(j);
  return ProbMeasure(coarse, std::move(w));
}

ProbMeasure extend_with_weights(const ProbMeasure& mu, const Partition& fine,
                                const std::vector<std::vector<Rational>>& split_weights) {
  auto witness = is_refinement(mu.base(), fine);
  if (!witness)
    fail(ErrorCode::NotARefinement, to_string(fine) + " does not refine " + to_string(mu.base()));
  const auto& coarse = mu.base();
  if (split_weights.size() != coarse.atom_count())
    fail(ErrorCode::Shape, "expected one weight list per coarse atom (" +
                               std::to_string(coarse.atom_count()) + "), got " +
                               std::to_string(split_weights.size()));
  std::vector<std::vector<std::size_t>> parts(coarse.atom_count());
  for (std::size_t j = 0; j < witness->block_map.size(); ++j) parts[witness->block_map[j]].push_back(j);

  std::vector<Rational> out(fine.atom_count(), 0);
  for (std::size_t i = 0; i < coarse.atom_count(); ++i) {
    const auto& p = split_weights[i];
    if (parts[i].size() == 1 && p.empty()) {
      out[parts[i][0]] = mu.weight(i);
      continue;
    }
    if (p.size() != parts[i].size())
      fail(ErrorCode::Shape, "coarse atom " + std::to_string(i) + " splits into " +
                                 std::to_string(parts[i].size()) + " parts but " +
                                 std::to_string(p.size()) + " weights were given");
    for (const auto& w : p)
      if (w < 0) fail(ErrorCode::NegativeWeight, "negative split weight " + to_string(w));
    if (auto total = sum(p); total != 1)
      fail(ErrorCode::WeightSum, "split weights of coarse atom " + std::to_string(i) +
                                     " sum to " + to_string(total));
    for (std::size_t k = 0; k < p.size(); ++k) out[parts[i][k]] = mu.weight(i) * p[k];
  }
  return ProbMeasure(fine, std::move(out));
}

bool is_degenerate(const ProbMeasure& mu) {
  return std::any_of(mu.weights().begin(), mu.weights().end(),
                     [](const Rational& w) { return w == 1; });
}

bool is_nondegenerate(const ProbMeasure& mu) {
  return std::all_of(mu.weights().begin(), mu.weights().end(),
                     [](const Rational& w) { return w > 0 && w < 1; });
}

ProbMeasure pushforward(const Permutation& g, const ProbMeasure& mu) {
  auto image = g.apply(mu.base());
  std::vector<Rational> w(image.atom_count(), 0);
  for (std::size_t i = 0; i < mu.base().atom_count(); ++i)
    w[static_cast<std::size_t>(image.atom_of(g(mu.base().atom(i).front())))] = mu.weight(i);
  return ProbMeasure(std::move(image), std::move(w));
}

bool is_invariant(const ProbMeasure& mu, const PermGroup& group) {
  if (group.degree() != mu.base().size())
    fail(ErrorCode::InvalidGroup, "group degree differs from n");
  for (const auto& g : group.generators()) {
    if (!g.preserves(mu.base()))
      fail(ErrorCode::InvalidGroup, to_string(g) + " does not preserve " + to_string(mu.base()));
    if (pushforward(g, mu) != mu) return false;
  }
  return true;
}

ProbMeasure group_average(const ProbMeasure& mu, const PermGroup& group) {
  if (!group.preserves(mu.base()))
    fail(ErrorCode::InvalidGroup, "group does not preserve " + to_string(mu.base()));
  std::vector<Rational> acc(mu.base().atom_count(), 0);
  for (const auto& g : group.elements()) {
    auto pushed = pushforward(g, mu);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pushed.weight(i);
  }
  const Rational scale(1, static_cast<long>(group.order()));
  for (auto& w : acc) w *= scale;
  return ProbMeasure(mu.base(), std::move(acc));
}

bool InvariantPolytope::contains(const ProbMeasure& mu) const {
  if (mu.base() != base) return false;
  for (const auto& orbit : orbits)
    for (auto i : orbit)
      if (mu.weight(i) != mu.weight(orbit.front())) return false;
  return true;
}

InvariantPolytope invariant_measures(const Partition& p, const PermGroup& group) {
  auto orbits = group.atom_orbits(p);
  std::vector<ProbMeasure> vertices;
  for (const auto& orbit : orbits) {
    std::vector<Rational> w(p.atom_count(), 0);
    for (auto i : orbit) w[i] = Rational(1, static_cast<long>(orbit.size()));
    vertices.emplace_back(p, std::move(w));
  }
  auto rep = group_average(ProbMeasure::uniform(p), group);
  const auto dim = orbits.size() - 1;
  return InvariantPolytope{p, std::move(orbits), dim, std::move(rep), std::move(vertices)};
}

std::optional<ProbMeasure> unique_invariant_if_transitive(const Partition& p,
                                                          const PermGroup& group) {
  if (group.atom_orbits(p).size() != 1) return std::nullopt;
  return ProbMeasure::uniform(p);
}

}  // namespace sigma
