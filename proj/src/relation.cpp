#include "sigma/relation.hpp"

#include "sigma/error.hpp"

namespace sigma {

BinaryRelation::BinaryRelation(GroundSet ground)
    : n_(ground.size()),
      bits_(static_cast<std::size_t>(ground.size()) * static_cast<std::size_t>(ground.size()), 0) {}

BinaryRelation BinaryRelation::identity(GroundSet ground) {
  BinaryRelation r(ground);
  for (Element x = 0; x < ground.size(); ++x) r.set(x, x);
  return r;
}

bool BinaryRelation::is_reflexive() const {
  for (Element x = 0; x < n_; ++x)
    if (!test(x, x)) return false;
  return true;
}

bool BinaryRelation::is_symmetric() const {
  for (Element x = 0; x < n_; ++x)
    for (Element y = x + 1; y < n_; ++y)
      if (test(x, y) != test(y, x)) return false;
  return true;
}

bool BinaryRelation::is_transitive() const {
  for (Element x = 0; x < n_; ++x)
    for (Element y = 0; y < n_; ++y) {
      if (!test(x, y)) continue;
      for (Element z = 0; z < n_; ++z)
        if (test(y, z) && !test(x, z)) return false;
    }
  return true;
}

EquivRelation EquivRelation::from_partition(const Partition& p) {
  BinaryRelation rel(p.ground());
  for (const auto& atom : p.atoms())
    for (Element x : atom)
      for (Element y : atom) rel.set(x, y);
  return EquivRelation(std::move(rel));
}

EquivRelation EquivRelation::from_relation(const BinaryRelation& rel) {
  if (!rel.is_equivalence())
    fail(ErrorCode::InvalidArgument, "relation is not an equivalence");
  return EquivRelation(rel);
}

Partition EquivRelation::to_partition() const {
  std::vector<int> labels(static_cast<std::size_t>(size()));
  for (Element x = 0; x < size(); ++x) {
    Element rep = x;
    for (Element y = 0; y < x; ++y)
      if (related(x, y)) {
        rep = y;
        break;
      }
    labels[static_cast<std::size_t>(x)] = rep;
  }
  return Partition::from_labels(labels);
}

BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s) {
  if (r.size() != s.size())
    fail(ErrorCode::GroundMismatch, "relations live on different ground sets");
  const int n = r.size();
  BinaryRelation out{GroundSet(n)};
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (!s.test(x, y)) continue;
      for (Element z = 0; z < n; ++z)
        if (r.test(y, z)) out.set(x, z);
    }
  return out;
}

CommuteVerdict commute(const Partition& a, const Partition& b) {
  require_same_ground(a, b);
  const auto ra = EquivRelation::from_partition(a).relation();
  const auto rb = EquivRelation::from_partition(b).relation();
  const auto ab = compose(ra, rb);
  const auto ba = compose(rb, ra);
  CommuteVerdict v;
  for (Element x = 0; x < a.size() && v.commuting; ++x)
    for (Element z = 0; z < a.size(); ++z)
      if (ab.test(x, z) != ba.test(x, z)) {
        v.commuting = false;
        v.witness = std::make_pair(x, z);
        v.witness_in_ab = ab.test(x, z);
        break;
      }
  return v;
}

bool composition_is_equivalence(const Partition& a, const Partition& b) {
  require_same_ground(a, b);
  return compose(EquivRelation::from_partition(a).relation(),
                 EquivRelation::from_partition(b).relation())
      .is_equivalence();
}

}  // namespace sigma
