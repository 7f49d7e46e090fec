#include "sigma/partition.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

#include "sigma/error.hpp"

namespace sigma {

namespace {

std::atomic<std::size_t> g_oracle_bound{8};

constexpr std::size_t kMaxOracleBound = 10;

// Relabels so that labels appear in order of first occurrence.
std::vector<int> to_rgs(const std::vector<int>& labels) {
  std::vector<int> rgs(labels.size());
  std::vector<std::pair<int, int>> seen;
  int next = 0;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& kv) { return kv.first == labels[x]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[x], next);
      rgs[x] = next++;
    } else {
      rgs[x] = it->second;
    }
  }
  return rgs;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::size_t oracle_bound() noexcept { return g_oracle_bound.load(); }

void set_oracle_bound(std::size_t n) {
  if (n < 1 || n > kMaxOracleBound)
    fail(ErrorCode::InvalidArgument,
         "oracle bound must lie in [1, " + std::to_string(kMaxOracleBound) + "]");
  g_oracle_bound.store(n);
}

GroundSet::GroundSet(int n) : n_(n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "ground set must be nonempty");
}

Partition::Partition(std::vector<int> rgs) : atom_of_(std::move(rgs)) {
  int k = atom_of_.empty() ? 0 : *std::max_element(atom_of_.begin(), atom_of_.end()) + 1;
  atoms_.resize(static_cast<std::size_t>(k));
  for (std::size_t x = 0; x < atom_of_.size(); ++x)
    atoms_[static_cast<std::size_t>(atom_of_[x])].push_back(static_cast<Element>(x));
}

Partition Partition::trivial(GroundSet ground) {
  return Partition(std::vector<int>(static_cast<std::size_t>(ground.size()), 0));
}

Partition Partition::discrete(GroundSet ground) {
  std::vector<int> rgs(static_cast<std::size_t>(ground.size()));
  std::iota(rgs.begin(), rgs.end(), 0);
  return Partition(std::move(rgs));
}

Partition Partition::canonicalize(const std::vector<Block>& blocks, GroundSet ground) {
  if (blocks.empty()) fail(ErrorCode::Shape, "partition needs at least one block");
  const auto n = static_cast<std::size_t>(ground.size());
  std::vector<int> label(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) fail(ErrorCode::Shape, "empty block in partition");
    for (Element x : blocks[b]) {
      if (!ground.contains(x))
        fail(ErrorCode::InvalidArgument,
             "element " + std::to_string(x + 1) + " outside ground set of size " +
                 std::to_string(ground.size()));
      auto& slot = label[static_cast<std::size_t>(x)];
      if (slot != -1)
        fail(ErrorCode::Overlap,
             "element " + std::to_string(x + 1) + " appears in two blocks");
      slot = static_cast<int>(b);
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (label[x] == -1)
      fail(ErrorCode::Coverage, "element " + std::to_string(x + 1) + " is in no block");
  return Partition(to_rgs(label));
}

Partition Partition::from_labels(const std::vector<int>& labels) {
  if (labels.empty()) fail(ErrorCode::InvalidArgument, "ground set must be nonempty");
  return Partition(to_rgs(labels));
}

std::optional<std::size_t> Partition::find_atom(const Block& block) const {
  if (block.empty()) return std::nullopt;
  Block sorted = block;
  std::sort(sorted.begin(), sorted.end());
  if (!GroundSet(size()).contains(sorted.front()) || !GroundSet(size()).contains(sorted.back()))
    return std::nullopt;
  auto idx = static_cast<std::size_t>(atom_of(sorted.front()));
  if (atoms_[idx] == sorted) return idx;
  return std::nullopt;
}

void require_same_ground(const Partition& a, const Partition& b) {
  if (a.size() != b.size())
    fail(ErrorCode::GroundMismatch, "ground sets differ: n=" + std::to_string(a.size()) +
                                        " vs n=" + std::to_string(b.size()));
}

bool refines(const Partition& coarse, const Partition& fine) {
  require_same_ground(coarse, fine);
  for (const auto& atom : fine.atoms()) {
    int c = coarse.atom_of(atom.front());
    for (Element x : atom)
      if (coarse.atom_of(x) != c) return false;
  }
  return true;
}

std::optional<RefinementWitness> is_refinement(const Partition& coarse, const Partition& fine) {
  if (!refines(coarse, fine)) return std::nullopt;
  RefinementWitness w{coarse, fine, {}};
  w.block_map.reserve(fine.atom_count());
  for (const auto& atom : fine.atoms())
    w.block_map.push_back(static_cast<std::size_t>(coarse.atom_of(atom.front())));
  return w;
}

bool strictly_refines(const Partition& coarse, const Partition& fine) {
  return refines(coarse, fine) && coarse != fine;
}

Partition join(const Partition& a, const Partition& b) {
  require_same_ground(a, b);
  // Pair labels identify the intersection A_i ∩ B_j an element lies in.
  const auto n = static_cast<std::size_t>(a.size());
  const int kb = static_cast<int>(b.atom_count());
  std::vector<int> labels(n);
  for (std::size_t x = 0; x < n; ++x)
    labels[x] = a.atom_of(static_cast<Element>(x)) * kb + b.atom_of(static_cast<Element>(x));
  return Partition::from_labels(labels);
}

Partition meet(const Partition& a, const Partition& b) {
  require_same_ground(a, b);
  const auto n = static_cast<std::size_t>(a.size());
  UnionFind uf(n);
  for (const auto* p : {&a, &b})
    for (const auto& atom : p->atoms())
      for (Element x : atom)
        uf.unite(static_cast<std::size_t>(atom.front()), static_cast<std::size_t>(x));
  std::vector<int> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = static_cast<int>(uf.find(x));
  return Partition::from_labels(labels);
}

void for_each_partition(GroundSet ground,
                        const std::function<void(const Partition&)>& visit) {
  const auto n = static_cast<std::size_t>(ground.size());
  if (n > oracle_bound())
    fail(ErrorCode::OracleBoundExceeded,
         "n=" + std::to_string(n) + " exceeds oracle bound " + std::to_string(oracle_bound()));
  // Restricted growth strings in lexicographic order: a[0] = 0 and
  // a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  std::vector<int> prefix_max(n, 0);
  while (true) {
    visit(Partition(a));
    std::size_t i = n - 1;
    while (i > 0 && a[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<Partition> enumerate_partitions(GroundSet ground) {
  std::vector<Partition> out;
  for_each_partition(ground, [&](const Partition& p) { out.push_back(p); });
  return out;
}

std::vector<Partition> coarsenings(const Partition& p) {
  const auto k = p.atom_count();
  std::vector<Partition> out;
  // Merge patterns are partitions of the atom index set.
  if (k > oracle_bound()) {
    fail(ErrorCode::OracleBoundExceeded,
         "partition has " + std::to_string(k) + " atoms, above oracle bound " +
             std::to_string(oracle_bound()));
  }
  for_each_partition(GroundSet(static_cast<int>(k)), [&](const Partition& merge) {
    std::vector<int> labels(static_cast<std::size_t>(p.size()));
    for (std::size_t x = 0; x < labels.size(); ++x)
      labels[x] = merge.atom_of(p.atom_of(static_cast<Element>(x)));
    out.push_back(Partition::from_labels(labels));
  });
  return out;
}

std::string to_string(const Partition& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.atom_count(); ++i) {
    if (i) os << '|';
    os << '{';
    const auto& atom = p.atom(i);
    for (std::size_t j = 0; j < atom.size(); ++j) {
      if (j) os << ',';
      os << atom[j] + 1;
    }
    os << '}';
  }
  return os.str();
}

}  // namespace sigma

std::size_t std::hash<sigma::Partition>::operator()(const sigma::Partition& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.atom_of()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}
