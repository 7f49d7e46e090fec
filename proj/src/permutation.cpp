#include "sigma/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "sigma/error.hpp"

namespace sigma {

Permutation::Permutation(std::vector<Element> image) : image_(std::move(image)) {
  if (image_.empty()) fail(ErrorCode::InvalidArgument, "permutation of an empty set");
  std::vector<bool> hit(image_.size(), false);
  for (Element y : image_) {
    if (y < 0 || static_cast<std::size_t>(y) >= image_.size() || hit[static_cast<std::size_t>(y)])
      fail(ErrorCode::InvalidArgument, "map is not a bijection");
    hit[static_cast<std::size_t>(y)] = true;
  }
}

Permutation Permutation::identity(GroundSet ground) {
  std::vector<Element> image(static_cast<std::size_t>(ground.size()));
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation Permutation::from_cycles(GroundSet ground,
                                     const std::vector<std::vector<Element>>& cycles) {
  std::vector<Element> image(static_cast<std::size_t>(ground.size()));
  std::iota(image.begin(), image.end(), 0);
  std::vector<bool> used(image.size(), false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Element x = cycle[i];
      if (!ground.contains(x))
        fail(ErrorCode::InvalidArgument, "cycle element outside ground set");
      if (used[static_cast<std::size_t>(x)])
        fail(ErrorCode::InvalidArgument, "cycles are not disjoint");
      used[static_cast<std::size_t>(x)] = true;
      image[static_cast<std::size_t>(x)] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < image_.size(); ++x)
    if (image_[x] != static_cast<Element>(x)) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Element> inv(image_.size());
  for (std::size_t x = 0; x < image_.size(); ++x)
    inv[static_cast<std::size_t>(image_[x])] = static_cast<Element>(x);
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) fail(ErrorCode::GroundMismatch, "permutations of different degree");
  std::vector<Element> image(g.image_.size());
  for (std::size_t x = 0; x < image.size(); ++x) image[x] = g(h.image_[x]);
  return Permutation(std::move(image));
}

Block Permutation::apply(const Block& set) const {
  Block out;
  out.reserve(set.size());
  for (Element x : set) out.push_back((*this)(x));
  std::sort(out.begin(), out.end());
  return out;
}

Partition Permutation::apply(const Partition& p) const {
  if (p.size() != size()) fail(ErrorCode::GroundMismatch, "permutation degree differs from n");
  std::vector<int> labels(image_.size());
  for (std::size_t x = 0; x < image_.size(); ++x)
    labels[static_cast<std::size_t>(image_[x])] = p.atom_of(static_cast<Element>(x));
  return Partition::from_labels(labels);
}

std::vector<std::size_t> Permutation::atom_action(const Partition& p) const {
  if (!preserves(p)) fail(ErrorCode::InvalidGroup, to_string(*this) + " does not preserve " + to_string(p));
  std::vector<std::size_t> action(p.atom_count());
  for (std::size_t i = 0; i < p.atom_count(); ++i)
    action[i] = static_cast<std::size_t>(p.atom_of((*this)(p.atom(i).front())));
  return action;
}

std::string to_string(const Permutation& g) {
  std::ostringstream os;
  std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
  bool any = false;
  for (Element x = 0; x < g.size(); ++x) {
    if (seen[static_cast<std::size_t>(x)] || g(x) == x) continue;
    any = true;
    os << '(';
    Element y = x;
    bool first = true;
    do {
      if (!first) os << ' ';
      first = false;
      os << y + 1;
      seen[static_cast<std::size_t>(y)] = true;
      y = g(y);
    } while (y != x);
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

PermGroup PermGroup::generate(GroundSet ground, std::vector<Permutation> generators) {
  for (const auto& g : generators)
    if (g.size() != ground.size())
      fail(ErrorCode::GroundMismatch, "generator degree differs from n");
  std::set<Permutation> seen{Permutation::identity(ground)};
  std::vector<Permutation> frontier{Permutation::identity(ground)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& h : frontier)
      for (const auto& g : generators) {
        auto gh = g * h;
        if (seen.insert(gh).second) next.push_back(std::move(gh));
      }
    frontier = std::move(next);
  }
  return PermGroup(ground.size(), std::move(generators),
                   std::vector<Permutation>(seen.begin(), seen.end()));
}

PermGroup PermGroup::trivial(GroundSet ground) { return generate(ground, {}); }

PermGroup PermGroup::symmetric(GroundSet ground) {
  const auto n = static_cast<std::size_t>(ground.size());
  if (n > oracle_bound())
    fail(ErrorCode::OracleBoundExceeded, "symmetric group above oracle bound");
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(Permutation::from_cycles(ground, {{0, 1}}));
    std::vector<Element> cycle(n);
    std::iota(cycle.begin(), cycle.end(), 0);
    if (n >= 3) gens.push_back(Permutation::from_cycles(ground, {cycle}));
  }
  std::vector<Permutation> elements;
  std::vector<Element> image(n);
  std::iota(image.begin(), image.end(), 0);
  do {
    elements.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return PermGroup(ground.size(), std::move(gens), std::move(elements));
}

bool PermGroup::contains(const Permutation& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool PermGroup::preserves(const Partition& p) const {
  if (p.size() != n_) return false;
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const Permutation& g) { return g.preserves(p); });
}

std::vector<std::vector<std::size_t>> PermGroup::atom_orbits(const Partition& p) const {
  if (!preserves(p)) fail(ErrorCode::InvalidGroup, "group does not preserve " + to_string(p));
  const auto k = p.atom_count();
  std::vector<std::size_t> orbit_of(k, k);
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::vector<std::size_t>> actions;
  for (const auto& g : generators_) actions.push_back(g.atom_action(p));
  for (std::size_t start = 0; start < k; ++start) {
    if (orbit_of[start] != k) continue;
    std::vector<std::size_t> orbit{start};
    orbit_of[start] = orbits.size();
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const auto& act : actions) {
        auto next = act[orbit[i]];
        if (orbit_of[next] == k) {
          orbit_of[next] = orbits.size();
          orbit.push_back(next);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

PermGroup automorphism_group(const Partition& p) {
  const auto n = static_cast<std::size_t>(p.size());
  if (n > oracle_bound())
    fail(ErrorCode::OracleBoundExceeded,
         "n=" + std::to_string(n) + " exceeds oracle bound " + std::to_string(oracle_bound()));
  std::vector<Permutation> elements;
  std::vector<Element> image(n);
  std::iota(image.begin(), image.end(), 0);
  do {
    Permutation g(image);
    if (g.preserves(p)) elements.push_back(std::move(g));
  } while (std::next_permutation(image.begin(), image.end()));
  // The whole element list doubles as the generating set.
  std::vector<Permutation> gens;
  for (const auto& g : elements)
    if (!g.is_identity()) gens.push_back(g);
  return PermGroup(p.size(), std::move(gens), std::move(elements));
}

}  // namespace sigma
