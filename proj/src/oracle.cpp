#include "sigma/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "sigma/dynamics.hpp"
#include "sigma/endogenous.hpp"
#include "sigma/error.hpp"
#include "sigma/io.hpp"
#include "sigma/measure.hpp"
#include "sigma/partition.hpp"
#include "sigma/permutation.hpp"
#include "sigma/relation.hpp"

namespace sigma {

namespace {

constexpr std::size_t kMaxN = 8;
constexpr std::size_t kFailureCap = 5;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Modulo reduction keeps draws identical across standard libraries.
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }

 private:
  std::mt19937_64 engine_;
};

struct Tally {
  SuiteResult result;

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result.cases;
    if (ok) {
      ++result.passed;
    } else if (result.failures.size() < kFailureCap) {
      result.failures.push_back(describe());
    }
  }
};

std::vector<std::size_t> bell_triangle(std::size_t n) {
  std::vector<std::size_t> bell{1};
  std::vector<std::size_t> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::size_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    bell.push_back(next.front());
    row = std::move(next);
  }
  return bell;
}

std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

std::vector<Rational> random_weights(Rng& rng, std::size_t k) {
  std::vector<Rational> w(k);
  Rational total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) {
      x = static_cast<long>(rng.below(10));
      total += x;
    }
  }
  for (auto& x : w) x /= total;
  return w;
}

Permutation random_element(Rng& rng, const PermGroup& g) { return g.elements()[rng.below(g.order())]; }

// Rank of a rational matrix by plain elimination.
std::size_t rank_of(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    auto pivot = std::find_if(m.begin() + static_cast<long>(rank), m.end(),
                              [&](const auto& row) { return row[c] != 0; });
    if (pivot == m.end()) continue;
    std::iter_swap(m.begin() + static_cast<long>(rank), pivot);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Composition straight from the definition: (x,z) in a∘b iff some y has
// x ~b y and y ~a z.
bool in_composition(const Partition& a, const Partition& b, Element x, Element z) {
  for (Element y = 0; y < a.size(); ++y)
    if (b.atom_of(x) == b.atom_of(y) && a.atom_of(y) == a.atom_of(z)) return true;
  return false;
}

std::string pair_text(const Partition& a, const Partition& b) {
  return to_string(a) + " vs " + to_string(b);
}

SuiteResult suite_bell(const OracleConfig& cfg, Rng&) {
  Tally t;
  const auto bell = bell_triangle(cfg.max_n);
  for (std::size_t n = 1; n <= cfg.max_n; ++n) {
    std::set<Partition> seen;
    std::size_t count = 0;
    bool ordered = true;
    std::optional<Partition> prev;
    for_each_partition(GroundSet(static_cast<int>(n)), [&](const Partition& p) {
      ++count;
      seen.insert(p);
      if (prev && !(*prev < p)) ordered = false;
      prev = p;
    });
    t.check(count == bell[n] && seen.size() == bell[n],
            [&] { return "n=" + std::to_string(n) + ": " + std::to_string(count) + " partitions, Bell " +
                         std::to_string(bell[n]); });
    t.check(ordered, [&] { return "n=" + std::to_string(n) + ": enumeration not in RGS order"; });
  }
  return t.result;
}

SuiteResult suite_lattice(const OracleConfig& cfg, Rng&) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 5); ++n) {
    const auto all = enumerate_partitions(GroundSet(static_cast<int>(n)));
    for (const auto& a : all)
      for (const auto& b : all) {
        const auto j = join(a, b);
        const auto m = meet(a, b);
        bool ok = refines(a, j) && refines(b, j) && refines(m, a) && refines(m, b);
        for (const auto& q : all) {
          if (!ok) break;
          // j is the coarsest common refinement, m the finest common coarsening.
          if ((refines(a, q) && refines(b, q)) != refines(j, q)) ok = false;
          if ((refines(q, a) && refines(q, b)) != refines(q, m)) ok = false;
        }
        ok = ok && join(b, a) == j && meet(b, a) == m && join(a, m) == a && meet(a, j) == a;
        t.check(ok, [&] { return pair_text(a, b); });
      }
  }
  return t.result;
}

SuiteResult suite_canonical(const OracleConfig& cfg, Rng& rng) {
  Tally t;
  const auto bell = bell_triangle(cfg.max_n);
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 6); ++n) {
    for (const auto& p : enumerate_partitions(GroundSet(static_cast<int>(n)))) {
      auto blocks = p.atoms();
      for (auto& b : blocks)
        for (std::size_t i = b.size(); i > 1; --i) std::swap(b[i - 1], b[rng.below(i)]);
      for (std::size_t i = blocks.size(); i > 1; --i) std::swap(blocks[i - 1], blocks[rng.below(i)]);
      const auto again = Partition::canonicalize(blocks, p.ground());

      std::vector<int> relabel(p.atom_count());
      std::iota(relabel.begin(), relabel.end(), 0);
      for (std::size_t i = relabel.size(); i > 1; --i) std::swap(relabel[i - 1], relabel[rng.below(i)]);
      std::vector<int> labels;
      for (auto a : p.atom_of()) labels.push_back(relabel[static_cast<std::size_t>(a)] * 7 + 3);

      const auto wire = io::partition_from_json(io::parse_json(io::to_json(p).dump()));
      const auto up = coarsenings(p);
      bool coarse_ok = up.size() == bell[p.atom_count()] && up.front().is_trivial() && up.back() == p &&
                       std::all_of(up.begin(), up.end(), [&](const Partition& q) { return refines(q, p); });
      t.check(again == p && Partition::canonicalize(again.atoms(), p.ground()) == p &&
                  Partition::from_labels(labels) == p && wire == p && coarse_ok,
              [&] { return to_string(p); });
    }
  }
  return t.result;
}

SuiteResult suite_commute(const OracleConfig& cfg, Rng&) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 5); ++n) {
    const auto all = enumerate_partitions(GroundSet(static_cast<int>(n)));
    for (const auto& a : all)
      for (const auto& b : all) {
        bool equal = true;
        std::optional<std::pair<Element, Element>> first;
        bool first_in_ab = false;
        for (Element x = 0; x < a.size() && !first; ++x)
          for (Element z = 0; z < a.size() && !first; ++z) {
            bool ab = in_composition(a, b, x, z), ba = in_composition(b, a, x, z);
            if (ab != ba) {
              equal = false;
              first = {x, z};
              first_in_ab = ab;
            }
          }
        const auto v = commute(a, b);
        if (equal) {
          const auto composed = compose(EquivRelation::from_partition(a).relation(),
                                        EquivRelation::from_partition(b).relation());
          bool induces_meet = composed.is_equivalence() &&
                              EquivRelation::from_relation(composed).to_partition() == meet(a, b);
          t.check(induces_meet, [&] { return "composition vs meet " + pair_text(a, b); });
        }
        bool ok = v.commuting == equal && composition_is_equivalence(a, b) == equal &&
                  v.witness == first && (!first || v.witness_in_ab == first_in_ab);
        t.check(ok, [&] { return pair_text(a, b); });
      }
  }
  return t.result;
}

SuiteResult suite_decompose(const OracleConfig& cfg, Rng&) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 5); ++n) {
    const auto all = enumerate_partitions(GroundSet(static_cast<int>(n)));
    for (const auto& coarse : all)
      for (const auto& fine : all) {
        if (!refines(coarse, fine)) continue;
        const auto chain = decompose(coarse, fine);
        const auto& algs = chain.algebras();
        bool ok = algs.front() == coarse && algs.back() == fine &&
                  chain.length() == fine.atom_count() - coarse.atom_count();
        for (std::size_t i = 0; ok && i < chain.length(); ++i) {
          const auto& before = algs[i];
          const auto& after = algs[i + 1];
          // Exactly one atom of before is missing from after, and it splits in two.
          std::size_t lost = 0;
          for (const auto& atom : before.atoms())
            if (!after.find_atom(atom)) ++lost;
          ok = strictly_refines(before, after) && lost == 1 &&
               after.atom_count() == before.atom_count() + 1;
        }
        t.check(ok, [&] { return to_string(coarse) + " -> " + to_string(fine); });
      }
  }
  return t.result;
}

SuiteResult suite_measures(const OracleConfig& cfg, Rng& rng) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 5); ++n) {
    const auto all = enumerate_partitions(GroundSet(static_cast<int>(n)));
    for (const auto& p : all)
      for (int sample = 0; sample < 10; ++sample) {
        const ProbMeasure mu(p, random_weights(rng, p.atom_count()));
        std::vector<Partition> finer;
        for (const auto& q : all)
          if (refines(p, q)) finer.push_back(q);
        const auto& fine = finer[rng.below(finer.size())];
        const auto w = is_refinement(p, fine)->block_map;
        std::vector<std::vector<Rational>> split(p.atom_count());
        std::vector<std::size_t> parts(p.atom_count(), 0);
        for (auto c : w) ++parts[c];
        for (std::size_t c = 0; c < p.atom_count(); ++c) split[c] = random_weights(rng, parts[c]);
        const auto nu = extend_with_weights(mu, fine, split);
        const auto trivial = Partition::trivial(p.ground());
        bool ok = restrict(nu, p) == mu && sum(nu.weights()) == 1 &&
                  restrict(nu, trivial) == ProbMeasure::point(trivial, 0) &&
                  io::measure_from_json(io::parse_json(io::to_json(nu).dump())) == nu;
        t.check(ok, [&] { return to_string(mu) + " -> " + to_string(fine); });
      }
  }
  return t.result;
}

SuiteResult suite_averaging(const OracleConfig& cfg, Rng& rng) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 5); ++n)
    for (const auto& p : enumerate_partitions(GroundSet(static_cast<int>(n)))) {
      const auto aut = automorphism_group(p);
      for (int sample = 0; sample < 100; ++sample) {
        const ProbMeasure mu(p, random_weights(rng, p.atom_count()));
        const auto avg = group_average(mu, aut);
        bool ok = is_invariant(avg, aut);
        for (const auto& g : aut.elements()) ok = ok && pushforward(g, avg) == avg;
        t.check(ok, [&] { return to_string(mu); });
      }
    }
  return t.result;
}

SuiteResult suite_transitive(const OracleConfig& cfg, Rng& rng) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 5); ++n)
    for (const auto& p : enumerate_partitions(GroundSet(static_cast<int>(n)))) {
      const auto aut = automorphism_group(p);
      const std::size_t k = p.atom_count();
      for (int sample = 0; sample < 50; ++sample) {
        std::vector<Permutation> gens;
        const std::size_t count = 1 + rng.below(2);
        for (std::size_t i = 0; i < count; ++i) gens.push_back(random_element(rng, aut));
        const auto group = PermGroup::generate(p.ground(), gens);
        const auto poly = invariant_measures(p, group);

        // Invariance constraints plus normalisation; full column rank means a
        // single invariant measure.
        std::vector<std::vector<Rational>> rows;
        for (const auto& g : group.elements()) {
          const auto act = g.atom_action(p);
          for (std::size_t i = 0; i < k; ++i) {
            std::vector<Rational> row(k, 0);
            row[i] += 1;
            row[act[i]] -= 1;
            rows.push_back(std::move(row));
          }
        }
        rows.emplace_back(k, Rational(1));
        const bool single_point = rank_of(rows) == k;

        const bool transitive = group.atom_orbits(p).size() == 1;
        const auto unique = unique_invariant_if_transitive(p, group);
        bool ok = single_point == transitive && unique.has_value() == transitive &&
                  poly.dimension + 1 == poly.orbits.size() && poly.contains(poly.representative);
        if (transitive)
          ok = ok && poly.dimension == 0 && poly.vertices.size() == 1 &&
               poly.vertices.front() == ProbMeasure::uniform(p) && *unique == ProbMeasure::uniform(p);
        t.check(ok, [&] { return to_string(p) + " with " + std::to_string(group.order()) + " elements"; });

        // Invariance holds exactly when the weights are constant on orbits.
        std::vector<Rational> w = random_weights(rng, k);
        const auto orbits = group.atom_orbits(p);
        if (rng.below(2) == 0) {
          const auto per_orbit = random_weights(rng, orbits.size());
          for (std::size_t o = 0; o < orbits.size(); ++o)
            for (auto i : orbits[o]) w[i] = per_orbit[o] / static_cast<long>(orbits[o].size());
        }
        const ProbMeasure mu(p, w);
        bool constant = true;
        for (const auto& orbit : orbits)
          for (auto i : orbit) constant = constant && w[i] == w[orbit.front()];
        t.check(is_invariant(mu, group) == constant, [&] { return "orbit constancy " + to_string(mu); });
      }
    }
  return t.result;
}

SuiteResult suite_orbit(const OracleConfig& cfg, Rng&) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 6); ++n)
    for (const auto& p : enumerate_partitions(GroundSet(static_cast<int>(n)))) {
      const auto aut = automorphism_group(p);
      // Aut(p) permutes atoms of equal size freely and shuffles inside atoms.
      std::map<std::size_t, std::size_t> by_size;
      for (const auto& a : p.atoms()) ++by_size[a.size()];
      std::uint64_t expected = 1;
      for (const auto& [size, mult] : by_size) {
        for (std::size_t i = 0; i < mult; ++i) expected *= factorial(size);
        expected *= factorial(mult);
      }
      const auto orbits = aut.atom_orbits(p);
      bool ok = aut.order() == expected && orbits.size() == by_size.size();
      std::vector<bool> covered(p.atom_count(), false);
      for (const auto& orbit : orbits) {
        for (auto i : orbit) {
          ok = ok && !covered[i] && p.atom(i).size() == p.atom(orbit.front()).size();
          covered[i] = true;
        }
        ok = ok && aut.order() % orbit.size() == 0;
      }
      ok = ok && std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
      t.check(ok, [&] { return to_string(p); });
    }
  return t.result;
}

SuiteResult suite_pushforward(const OracleConfig& cfg, Rng& rng) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 5); ++n) {
    const GroundSet ground(static_cast<int>(n));
    const auto sym = PermGroup::symmetric(ground);
    for (const auto& p : enumerate_partitions(ground))
      for (int sample = 0; sample < 10; ++sample) {
        const ProbMeasure mu(p, random_weights(rng, p.atom_count()));
        const auto g = random_element(rng, sym);
        const auto h = random_element(rng, sym);
        const auto gmu = pushforward(g, mu);
        bool ok = gmu.base() == g.apply(p) && sum(gmu.weights()) == 1 &&
                  pushforward(g * h, mu) == pushforward(g, pushforward(h, mu)) &&
                  pushforward(g.inverse(), gmu) == mu &&
                  pushforward(Permutation::identity(ground), mu) == mu;
        for (std::size_t i = 0; ok && i < p.atom_count(); ++i) ok = gmu.mass(g.apply(p.atom(i))) == mu.weight(i);
        t.check(ok, [&] { return to_string(mu) + " under " + to_string(g); });
      }
  }
  return t.result;
}

SuiteResult suite_endogenous(const OracleConfig& cfg, Rng&) {
  Tally t;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_n, 4); ++n) {
    const GroundSet ground(static_cast<int>(n));
    std::vector<Partition> two_atom;
    for (const auto& p : enumerate_partitions(ground))
      if (p.atom_count() == 2) two_atom.push_back(p);

    std::vector<std::vector<Partition>> generator_sets{{Partition::trivial(ground)}};
    for (std::size_t i = 0; i < two_atom.size(); ++i) {
      generator_sets.push_back({two_atom[i]});
      for (std::size_t j = i + 1; j < two_atom.size(); ++j) generator_sets.push_back({two_atom[i], two_atom[j]});
    }

    for (const auto& gens : generator_sets) {
      const bool pair_commutes = gens.size() < 2 || commute(gens[0], gens[1]).commuting;
      std::optional<CompatibilityDomain> domain;
      try {
        domain = build_domain(gens);
      } catch (const CommutativityViolationError&) {
      }
      t.check(domain.has_value() == pair_commutes,
              [&] { return "domain validity for " + to_string(gens.back()); });
      if (!domain) continue;

      // Reference answer: the members with no strict refinement in the domain,
      // each carrying its Aut-invariant representative.
      std::set<Partition> expected;
      for (const auto& p : domain->members()) {
        bool maximal = std::none_of(domain->members().begin(), domain->members().end(),
                                    [&](const Partition& q) { return strictly_refines(p, q); });
        if (maximal) expected.insert(p);
      }
      const auto pairs = solve_endogenous(*domain);
      std::set<Partition> got;
      bool ok = true;
      for (const auto& pair : pairs) {
        got.insert(pair.algebra);
        ok = ok && pair.polytope.contains(pair.measure) &&
             check_self_consistent(pair.algebra, pair.measure, *domain).ok();
        for (const auto& c : pair.minimality) ok = ok && c.degenerate;
      }
      t.check(ok && got == expected, [&] {
        std::string s = "domain generated by";
        for (const auto& g : gens) s += " " + to_string(g);
        return s;
      });
    }
  }
  return t.result;
}

// Precedence from the definition over label chains.
bool defined_precedes(const std::vector<std::vector<std::string>>& chains, const std::string& a,
                      const std::string& b) {
  bool shared = false;
  for (const auto& c : chains) {
    auto ia = std::find(c.begin(), c.end(), a), ib = std::find(c.begin(), c.end(), b);
    if (ia == c.end() || ib == c.end()) continue;
    shared = true;
    if (ia > ib) return false;
  }
  return shared && a != b;
}

std::set<std::pair<std::string, std::string>> closure(
    const std::vector<std::string>& nodes, const std::vector<std::pair<std::string, std::string>>& edges) {
  std::set<std::pair<std::string, std::string>> out(edges.begin(), edges.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& m : nodes)
      for (const auto& a : nodes)
        for (const auto& b : nodes)
          if (out.count({a, m}) && out.count({m, b}) && out.insert({a, b}).second) grew = true;
  }
  return out;
}

bool has_cycle(const std::vector<std::string>& nodes, const std::set<std::pair<std::string, std::string>>& closed) {
  return std::any_of(nodes.begin(), nodes.end(), [&](const auto& a) { return closed.count({a, a}) > 0; });
}

SuiteResult suite_eventgraph(const OracleConfig& cfg, Rng& rng) {
  Tally t;
  const std::size_t top = std::max<std::size_t>(2, std::min<std::size_t>(cfg.max_n, 5));

  // Chains from actual refinement runs: the theorem says the result is acyclic.
  for (int sample = 0; sample < 60; ++sample) {
    const GroundSet ground(static_cast<int>(2 + rng.below(top - 1)));
    std::vector<RefinementChain> chains;
    const std::size_t count = 1 + rng.below(4);
    for (std::size_t c = 0; c < count; ++c) {
      SimulationPolicy policy;
      policy.kind = SimulationPolicy::Kind::RuleDriven;
      policy.rule = SimulationPolicy::Rule::Random;
      policy.seed = rng.below(1u << 30);
      const auto run = simulate(Partition::trivial(ground), policy, ground.size());
      std::vector<AtomicRefinement> steps;
      for (const auto& s : run.trace.steps())
        steps.emplace_back(s.source(), s.atom(), s.parts(), to_string(s.source()) + "/" + s.label());
      if (!steps.empty()) chains.emplace_back(std::move(steps));
    }
    bool ok = true;
    std::string why;
    try {
      const auto g = EventGraph::from_chains(chains);
      std::set<std::pair<std::string, std::string>> expected;
      for (const auto& a : g.nodes())
        for (const auto& b : g.nodes())
          if (defined_precedes(g.chains(), a, b)) expected.insert({a, b});
      const auto rel = std::set<std::pair<std::string, std::string>>(g.relation().begin(), g.relation().end());
      const auto closed = closure(g.nodes(), g.relation());
      ok = rel == expected && !has_cycle(g.nodes(), closed) && closure(g.nodes(), g.covers()) == closed;
    } catch (const Error& e) {
      ok = false;
      why = e.what();
    }
    t.check(ok, [&] { return "refinement chains sample " + std::to_string(sample) + " " + why; });
  }

  // Abstract label chains: cycle detection must agree with the closure.
  for (int sample = 0; sample < 200; ++sample) {
    const std::size_t labels = 2 + rng.below(4);
    std::vector<std::vector<std::string>> chains(1 + rng.below(4));
    for (auto& c : chains) {
      std::vector<std::string> pool;
      for (std::size_t i = 0; i < labels; ++i) pool.push_back("R" + std::to_string(i + 1));
      for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
      pool.resize(1 + rng.below(pool.size()));
      c = pool;
    }
    std::set<std::string> node_set;
    for (const auto& c : chains) node_set.insert(c.begin(), c.end());
    const std::vector<std::string> nodes(node_set.begin(), node_set.end());
    std::vector<std::pair<std::string, std::string>> expected;
    for (const auto& a : nodes)
      for (const auto& b : nodes)
        if (defined_precedes(chains, a, b)) expected.emplace_back(a, b);
    const bool cyclic = has_cycle(nodes, closure(nodes, expected));
    bool ok;
    try {
      const auto g = EventGraph::from_label_chains(chains);
      ok = !cyclic && g.relation() == expected;
    } catch (const Error& e) {
      ok = cyclic && e.code() == ErrorCode::Cyclicity;
    }
    t.check(ok, [&] { return "label chains sample " + std::to_string(sample); });
  }
  return t.result;
}

using SuiteFn = SuiteResult (*)(const OracleConfig&, Rng&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"bell", suite_bell},         {"lattice", suite_lattice},       {"canonical", suite_canonical},
      {"commute", suite_commute},   {"decompose", suite_decompose},   {"measures", suite_measures},
      {"averaging", suite_averaging}, {"transitive", suite_transitive},   {"orbit", suite_orbit},
      {"pushforward", suite_pushforward}, {"endogenous", suite_endogenous}, {"eventgraph", suite_eventgraph},
  };
  return suites;
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) {
  // FNV-1a over the name, so each suite draws its own stream.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
  return seed ^ h;
}

}  // namespace

bool OracleReport::ok() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

const std::vector<std::string>& oracle_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::size_t oracle_max_n_from_env(std::size_t fallback) {
  const char* raw = std::getenv("SIGMA_ORACLE_MAX_N");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > static_cast<long>(kMaxN))
    fail(ErrorCode::InvalidArgument, std::string("SIGMA_ORACLE_MAX_N must be an integer in [1, 8], got ") + raw);
  return static_cast<std::size_t>(value);
}

OracleReport run_oracle(const OracleConfig& config) {
  if (config.max_n < 1 || config.max_n > kMaxN)
    fail(ErrorCode::InvalidArgument, "max_n must lie in [1, 8]");
  std::vector<std::pair<std::string, SuiteFn>> chosen;
  if (config.suites.empty()) {
    chosen = registry();
  } else {
    for (const auto& name : config.suites) {
      auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == name; });
      if (it == registry().end()) fail(ErrorCode::InvalidArgument, "unknown oracle suite: " + name);
      chosen.push_back(*it);
    }
  }
  if (oracle_bound() < config.max_n) set_oracle_bound(config.max_n);

  // Suites are independent; results are merged in request order.
  std::vector<std::future<SuiteResult>> running;
  for (const auto& [name, fn] : chosen)
    running.push_back(std::async(std::launch::async, [&config, name = name, fn = fn] {
      Rng rng(suite_seed(config.seed, name));
      auto result = fn(config, rng);
      result.name = name;
      return result;
    }));
  OracleReport report{config, {}};
  for (auto& f : running) report.suites.push_back(f.get());
  return report;
}

}  // namespace sigma
