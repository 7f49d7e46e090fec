#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "sigma/endogenous.hpp"
#include "sigma/relation.hpp"
#include "support.hpp"

using namespace sigma;
using namespace sigma::test;

namespace {

Permutation cyc(std::vector<std::vector<Element>> cycles, int n = 4) {
  for (auto& c : cycles)
    for (auto& x : c) --x;
  return Permutation::from_cycles(GroundSet(n), cycles);
}

const Partition PC() { return P({{1, 4}, {2, 3}}); }

CompatibilityDomain toy_domain() { return build_domain({PA(), PB()}); }

// Every permutation of {0..n-1} mapping each atom of p onto an atom of p.
std::vector<std::vector<Element>> automorphisms_brute(const Partition& p) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> img(static_cast<std::size_t>(p.size()));
  std::iota(img.begin(), img.end(), 0);
  do {
    bool ok = true;
    for (const auto& atom : p.atoms()) {
      Block b;
      for (auto x : atom) b.push_back(img[static_cast<std::size_t>(x)]);
      std::sort(b.begin(), b.end());
      ok = ok && p.find_atom(b).has_value();
    }
    if (ok) out.push_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// All weight vectors on the fine atoms with denominator `den` restricting to mu.
std::vector<std::vector<Rational>> grid_extensions(const ProbMeasure& mu, const Partition& fine, long den) {
  const auto map = is_refinement(mu.base(), fine)->block_map;
  std::vector<std::vector<Rational>> out{std::vector<Rational>(fine.atom_count())};
  for (std::size_t c = 0; c < mu.base().atom_count(); ++c) {
    std::vector<std::size_t> parts;
    for (std::size_t j = 0; j < map.size(); ++j)
      if (map[j] == c) parts.push_back(j);
    const Rational scaled = mu.weight(c) * den;
    if (denominator(scaled) != 1) return {};
    const long total = static_cast<long>(numerator(scaled));
    std::vector<std::vector<Rational>> next;
    std::vector<long> cut(parts.size(), 0);
    // Enumerate compositions of `total` into parts.size() nonnegative pieces.
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
      if (i + 1 == parts.size()) {
        cut[i] = left;
        for (const auto& base : out) {
          auto w = base;
          for (std::size_t t = 0; t < parts.size(); ++t) w[parts[t]] = Rational(cut[t], den);
          next.push_back(std::move(w));
        }
        return;
      }
      for (long v = 0; v <= left; ++v) {
        cut[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, total);
    out = std::move(next);
  }
  return out;
}

bool invariant_under(const std::vector<Rational>& w, const Partition& fine, const std::vector<Element>& img) {
  for (std::size_t j = 0; j < fine.atom_count(); ++j) {
    Block b;
    for (auto x : fine.atom(j)) b.push_back(img[static_cast<std::size_t>(x)]);
    std::sort(b.begin(), b.end());
    if (w[*fine.find_atom(b)] != w[j]) return false;
  }
  return true;
}

// Some extension invariant under some nontrivial automorphism of fine.
bool grid_violates(const ProbMeasure& mu, const Partition& fine) {
  const auto exts = grid_extensions(mu, fine, 24);
  for (const auto& img : automorphisms_brute(fine)) {
    if (std::is_sorted(img.begin(), img.end())) continue;
    for (const auto& w : exts)
      if (invariant_under(w, fine, img)) return true;
  }
  return false;
}

// Some extension invariant under every automorphism of fine.
bool grid_violates_full(const ProbMeasure& mu, const Partition& fine, long den) {
  const auto auts = automorphisms_brute(fine);
  for (const auto& w : grid_extensions(mu, fine, den))
    if (std::all_of(auts.begin(), auts.end(), [&](const auto& img) { return invariant_under(w, fine, img); }))
      return true;
  return false;
}

// Domains from at most two generators at n ≤ 4 that pass validation.
std::vector<CompatibilityDomain> small_domains(int n) {
  std::vector<CompatibilityDomain> out;
  const auto all = enumerate_partitions(GroundSet(n));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) {
      try {
        out.push_back(build_domain({all[i], all[j]}));
      } catch (const Error&) {
      }
    }
  return out;
}

std::vector<ProbMeasure> vertices_and_centre(const Partition& f) {
  auto poly = invariant_measures(f, automorphism_group(f));
  auto v = poly.vertices;
  v.push_back(poly.representative);
  return v;
}

}  // namespace

TEST_SUITE("endogenous") {
  TEST_CASE("build_domain") {
    const auto d = toy_domain();
    CHECK(d.members() == std::vector<Partition>{F0(), PA(), PB()});
    CHECK(build_domain({F0()}).members() == std::vector<Partition>{F0()});
    CHECK(build_domain({PA()}).members().size() == 2);
    try {
      build_domain({PA(), PBp()});
      FAIL("expected a violation");
    } catch (const CommutativityViolationError& e) {
      CHECK(e.code() == ErrorCode::CommutativityViolation);
      CHECK(e.witness() == std::pair<Element, Element>{1, 2});
      CHECK(std::string(e.what()).find("(2,3)") != std::string::npos);
    }
    CHECK_THROWS_AS(build_domain({}), Error);
    CHECK_THROWS_AS(build_domain({PA(), D(3)}), Error);
  }

  TEST_CASE("from_members validates every condition") {
    CHECK_THROWS_AS(CompatibilityDomain::from_members({}), Error);
    try {
      CompatibilityDomain::from_members({PA()});
      FAIL("not coarsening-closed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
    CHECK_THROWS_AS(CompatibilityDomain::from_members({F0(), PA(), PBp()}), CommutativityViolationError);
  }

  TEST_CASE("build_domain output re-verifies") {
    for (int n = 1; n <= 4; ++n)
      for (const auto& d : small_domains(n)) {
        const auto& m = d.members();
        REQUIRE(CompatibilityDomain::from_members(m).members() == m);
        for (const auto& a : m)
          for (const auto& b : m) REQUIRE(commute(a, b).commuting);
      }
  }

  TEST_CASE("maximal and minimal elements") {
    CHECK(maximal_elements(toy_domain()) == std::vector<Partition>{PA(), PB()});
    CHECK(maximal_elements(build_domain({F0()})) == std::vector<Partition>{F0()});
    // All coarsenings of {1}|{2}|{3,4}: not a valid domain, but the family has one top.
    const auto top = P({{1}, {2}, {3, 4}});
    const auto family = coarsenings(top);
    CHECK(maximal_elements(std::span<const Partition>(family)) == std::vector<Partition>{top});
    CHECK(minimal_elements(std::span<const Partition>(family)) == std::vector<Partition>{F0()});
    CHECK_THROWS_AS(build_domain({top}), CommutativityViolationError);
  }

  TEST_CASE("check_self_consistent") {
    const auto d = toy_domain();
    auto r = check_self_consistent(PA(), ProbMeasure::uniform(PA()), d);
    CHECK(r.compat_ok);
    CHECK(r.invariance_ok);
    CHECK(r.refinement_ok);
    CHECK(r.ok());
    CHECK(r.violations.empty());

    r = check_self_consistent(PA(), ProbMeasure(PA(), {R(1, 3), R(2, 3)}), d);
    CHECK(r.compat_ok);
    CHECK_FALSE(r.invariance_ok);
    CHECK_FALSE(r.ok());
    CHECK(r.violations.front().clause == "invariance");

    r = check_self_consistent(PBp(), ProbMeasure(PBp(), {R(1, 5), R(4, 5)}), d);
    CHECK_FALSE(r.compat_ok);
    CHECK(r.violations.front().clause == "compatibility");

    CHECK_THROWS_AS(check_self_consistent(PA(), ProbMeasure::uniform(PB()), d), Error);
    CHECK_THROWS_AS(check_self_consistent(D(3), ProbMeasure::uniform(D(3)), d), Error);
  }

  TEST_CASE("refinement clause examines only non-commuting outsiders") {
    const auto d = toy_domain();
    const auto r = check_self_consistent(PA(), ProbMeasure::uniform(PA()), d);
    std::size_t expected = 0;
    for (const auto& q : enumerate_partitions(omega4))
      if (strictly_refines(PA(), q) && !d.contains(q) && !(commute(q, PA()).commuting && commute(q, PB()).commuting))
        ++expected;
    CHECK(r.refinements_examined == expected);
    ConsistencyOptions admissible;
    admissible.admissible_only = true;
    CHECK(check_self_consistent(PA(), ProbMeasure::uniform(PA()), d, admissible).refinements_examined == 0);
  }

  TEST_CASE("check_axiom_c examples") {
    const auto d = toy_domain();
    CHECK(check_axiom_c(ProbMeasure::point(F0(), 0), PA(), d).kind == AxiomCVerdict::Kind::Vacuous);

    const auto fine = join(PA(), PBp());
    REQUIRE(fine == P({{1}, {2}, {3, 4}}));
    auto v = check_axiom_c(ProbMeasure::uniform(PA()), fine, d);
    CHECK(v.kind == AxiomCVerdict::Kind::Violated);
    REQUIRE(v.extension);
    CHECK(v.extension->weights() == W({R(1, 2), R(0), R(1, 2)}));
    CHECK(to_string(*v.symmetry) == "(3 4)");
    CHECK(restrict(*v.extension, PA()) == ProbMeasure::uniform(PA()));

    v = check_axiom_c(ProbMeasure::uniform(PA()), fine, d, AxiomCMode::FullAut);
    CHECK(v.kind == AxiomCVerdict::Kind::Violated);
    CHECK(v.extension->weights() == W({R(1, 4), R(1, 4), R(1, 2)}));

    // (1 3)(2 4) keeps the uniform measure but breaks the finer partition.
    v = check_axiom_c(ProbMeasure::uniform(PA()), fine, d, AxiomCMode::Persistent);
    CHECK(v.kind == AxiomCVerdict::Kind::Blocked);

    v = check_axiom_c(ProbMeasure(PA(), {R(1), R(0)}), D(), d);
    CHECK(v.kind == AxiomCVerdict::Kind::Violated);
    CHECK(grid_violates(ProbMeasure(PA(), {R(1), R(0)}), D()));

    CHECK_THROWS_AS(check_axiom_c(ProbMeasure::uniform(PA()), PB(), d), Error);
  }

  TEST_CASE("check_axiom_c agrees with an exact grid search") {
    const auto d = toy_domain();
    std::size_t violated = 0, blocked = 0;
    for (const auto& p : enumerate_partitions(omega4)) {
      std::vector<ProbMeasure> mus{ProbMeasure::point(p, 0)};
      if (p.atom_count() == 2) mus.push_back(ProbMeasure::uniform(p));
      for (const auto& mu : mus)
        for (const auto& fine : enumerate_partitions(omega4)) {
          if (!strictly_refines(p, fine) || d.contains(fine)) continue;
          const auto v = check_axiom_c(mu, fine, d);
          const bool grid = grid_violates(mu, fine);
          REQUIRE(grid == (v.kind == AxiomCVerdict::Kind::Violated));
          if (v.extension) {
            ++violated;
            REQUIRE(restrict(*v.extension, p) == mu);
            REQUIRE(pushforward(*v.symmetry, *v.extension) == *v.extension);
          } else {
            ++blocked;
          }
        }
    }
    CHECK(violated > 0);
    MESSAGE("any-nontrivial: violated " << violated << ", blocked " << blocked);
  }

  TEST_CASE("full-aut mode agrees with an exact grid search") {
    const auto d = toy_domain();
    std::size_t violated = 0, blocked = 0;
    for (const auto& p : enumerate_partitions(omega4)) {
      std::vector<ProbMeasure> mus{ProbMeasure::point(p, 0), ProbMeasure::uniform(p)};
      if (p.atom_count() == 2) mus.push_back(ProbMeasure(p, {R(1, 4), R(3, 4)}));
      if (p.atom_count() == 3) mus.push_back(ProbMeasure(p, {R(1, 2), R(1, 4), R(1, 4)}));
      for (const auto& mu : mus)
        for (const auto& fine : enumerate_partitions(omega4)) {
          if (!strictly_refines(p, fine) || d.contains(fine)) continue;
          const auto v = check_axiom_c(mu, fine, d, AxiomCMode::FullAut);
          REQUIRE(grid_violates_full(mu, fine, 48) == (v.kind == AxiomCVerdict::Kind::Violated));
          if (v.extension) {
            ++violated;
            REQUIRE(restrict(*v.extension, p) == mu);
            REQUIRE(is_invariant(*v.extension, automorphism_group(fine)));
          } else {
            ++blocked;
          }
        }
    }
    CHECK(violated > 0);
    CHECK(blocked > 0);
    MESSAGE("full-aut: violated " << violated << ", blocked " << blocked);
  }

  TEST_CASE("persistent mode examples") {
    // Stabiliser of (1/3,2/3) on P_A is <(1 2),(3 4)>, which keeps {1}|{2}|{3,4}.
    const auto d = toy_domain();
    const ProbMeasure mu(PA(), {R(1, 3), R(2, 3)});
    const auto v = check_axiom_c(mu, P({{1}, {2}, {3, 4}}), d, AxiomCMode::Persistent);
    CHECK(v.kind == AxiomCVerdict::Kind::Violated);
    CHECK(v.extension->weights() == W({R(1, 6), R(1, 6), R(2, 3)}));
    const auto r = check_self_consistent(PA(), mu, d);
    CHECK_FALSE(r.refinement_ok);
  }

  TEST_CASE("find_invariant_extension") {
    const Permutation swap[] = {cyc({{1, 2}})};
    auto nu = find_invariant_extension(ProbMeasure::uniform(PA()), D(), swap);
    REQUIRE(nu);
    CHECK((*nu).weight(0) == (*nu).weight(1));
    CHECK(restrict(*nu, PA()) == ProbMeasure::uniform(PA()));
    // Swapping the two halves forces equal halves.
    const Permutation cross[] = {cyc({{1, 3}, {2, 4}})};
    CHECK_FALSE(find_invariant_extension(ProbMeasure(PA(), {R(1, 3), R(2, 3)}), D(), cross));
  }

  TEST_CASE("solve_endogenous examples") {
    auto pairs = solve_endogenous(toy_domain());
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].algebra == PA());
    CHECK(pairs[1].algebra == PB());
    for (const auto& pair : pairs) {
      CHECK(pair.measure.weights() == W({R(1, 2), R(1, 2)}));
      CHECK(pair.maximal_in_domain);
      REQUIRE(pair.minimality.size() == 1);
      CHECK(pair.minimality[0].coarsening == F0());
      CHECK(pair.minimality[0].degenerate);
      CHECK(pair.minimality[0].restricted.weights() == W({R(1)}));
      CHECK_FALSE(pair.maximality.empty());
      for (const auto& rej : pair.maximality) CHECK(strictly_refines(pair.algebra, rej.refinement));
    }

    pairs = solve_endogenous(build_domain({F0()}));
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].algebra == F0());
    CHECK(pairs[0].measure.weights() == W({R(1)}));
    CHECK(pairs[0].minimality.empty());

    pairs = solve_endogenous(build_domain({PA(), PB(), PC()}));
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[2].algebra == PC());
    for (const auto& pair : pairs) CHECK(pair.measure == ProbMeasure::uniform(pair.algebra));
  }

  TEST_CASE("solve_endogenous output is self-consistent and certified") {
    for (int n = 1; n <= 4; ++n)
      for (const auto& d : small_domains(n))
        for (const auto& pair : solve_endogenous(d)) {
          REQUIRE(d.contains(pair.algebra));
          REQUIRE(check_self_consistent(pair.algebra, pair.measure, d).ok());
          REQUIRE(is_invariant(pair.measure, automorphism_group(pair.algebra)));
          REQUIRE(pair.polytope.contains(pair.measure));
          for (const auto& c : pair.minimality) {
            REQUIRE(strictly_refines(c.coarsening, pair.algebra));
            REQUIRE(c.degenerate);
            REQUIRE(c.restricted == restrict(pair.measure, c.coarsening));
          }
        }
  }

  TEST_CASE("solve_endogenous agrees with a brute-force search") {
    for (int n = 1; n <= 4; ++n)
      for (const auto& d : small_domains(n)) {
        // Fixed points: self-consistent and not carried to a finer member.
        std::vector<Partition> fixed;
        for (const auto& f : d.members())
          for (const auto& mu : vertices_and_centre(f)) {
            if (!check_self_consistent(f, mu, d).ok()) continue;
            bool extends = false;
            for (const auto& g : d.members()) {
              if (!strictly_refines(f, g)) continue;
              for (const auto& w : grid_extensions(mu, g, 24)) {
                const ProbMeasure nu(g, w);
                if (is_invariant(nu, automorphism_group(g))) extends = true;
              }
            }
            if (!extends) fixed.push_back(f);
          }
        std::sort(fixed.begin(), fixed.end());
        fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
        std::vector<Partition> expected;
        for (const auto& f : fixed)
          if (std::none_of(fixed.begin(), fixed.end(), [&](const Partition& g) { return strictly_refines(g, f); }))
            expected.push_back(f);

        std::vector<Partition> got;
        for (const auto& pair : solve_endogenous(d)) got.push_back(pair.algebra);
        REQUIRE(got == expected);
        REQUIRE(got == maximal_elements(d));
      }
  }

  TEST_CASE("restriction keeps admissible self-consistency") {
    ConsistencyOptions admissible;
    admissible.admissible_only = true;
    std::size_t checked = 0;
    for (int n = 1; n <= 4; ++n)
      for (const auto& d : small_domains(n))
        for (const auto& f : d.members())
          for (const auto& mu : vertices_and_centre(f)) {
            if (!check_self_consistent(f, mu, d).ok()) continue;
            for (const auto& g : d.members()) {
              if (!refines(g, f)) continue;
              REQUIRE(check_self_consistent(g, restrict(mu, g), d, admissible).ok());
              ++checked;
            }
          }
    CHECK(checked > 100);
  }

  TEST_CASE("uniqueness up to symmetry") {
    const auto d = toy_domain();
    const auto pairs = solve_endogenous(d);
    const auto g23 = PermGroup::generate(omega4, {cyc({{2, 3}})});
    auto u = check_uniqueness_up_to_symmetry(pairs, g23, d);
    CHECK(u.established());
    CHECK(std::string(to_string(u.status)) == "unique up to symmetry");
    REQUIRE(u.mappings.size() == 2);
    CHECK(to_string(u.mappings[0].g) == "(2 3)");
    CHECK(pushforward(u.mappings[0].g, pairs[0].measure) == pairs[1].measure);

    u = check_uniqueness_up_to_symmetry(pairs, PermGroup::trivial(omega4), d);
    CHECK_FALSE(u.established());
    CHECK(u.status == UniquenessVerdict::Status::NotTransitive);

    u = check_uniqueness_up_to_symmetry(std::span<const EndogenousPair>(pairs.data(), 1),
                                        automorphism_group(PA()), build_domain({PA()}));
    CHECK(u.established());
    CHECK(u.stabiliser_transitive == std::vector<bool>{true});

    u = check_uniqueness_up_to_symmetry(pairs, PermGroup::generate(omega4, {cyc({{1, 2}})}), d);
    CHECK(u.status == UniquenessVerdict::Status::DomainNotPreserved);

    const auto three = solve_endogenous(build_domain({PA(), PB(), PC()}));
    u = check_uniqueness_up_to_symmetry(three, PermGroup::symmetric(omega4), build_domain({PA(), PB(), PC()}));
    CHECK(u.established());
    CHECK(u.mappings.size() == 6);
  }

  TEST_CASE("algebras_for") {
    const auto d = toy_domain();
    auto a = algebras_for(ProbMeasure::uniform(PA()), d);
    CHECK(a.algebras == std::vector<Partition>{F0(), PA()});
    CHECK(a.skipped == std::vector<Partition>{PB()});
    CHECK(a.meet == F0());

    a = algebras_for(ProbMeasure::point(F0(), 0), d);
    CHECK(a.algebras == std::vector<Partition>{F0()});
    CHECK(a.meet == F0());

    a = algebras_for(ProbMeasure(PA(), {R(1, 3), R(2, 3)}), d);
    CHECK(a.algebras == std::vector<Partition>{F0()});
    CHECK(a.meet == F0());
  }
}
