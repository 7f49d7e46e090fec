#include "sigma/toy.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "sigma/dynamics.hpp"
#include "sigma/endogenous.hpp"
#include "sigma/measure.hpp"
#include "sigma/relation.hpp"

namespace sigma {

namespace {

std::string block_text(const Block& b) {
  if (b.empty()) return "∅";
  std::string s = "{";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i] + 1);
  return s + "}";
}

Block intersect(const Block& a, const Block& b) {
  Block out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string verdict_text(const CommuteVerdict& v) {
  if (v.commuting) return "commuting";
  return "non_commuting, witness (" + std::to_string(v.witness->first + 1) + "," +
         std::to_string(v.witness->second + 1) + ") in " + (v.witness_in_ab ? "~a∘~b" : "~b∘~a");
}

void intersections(std::ostream& os, const Partition& a, const Partition& b) {
  for (const auto& x : a.atoms())
    for (const auto& y : b.atoms())
      os << "    " << block_text(x) << " ∩ " << block_text(y) << " = " << block_text(intersect(x, y)) << "\n";
}

}  // namespace

std::string toy_transcript() {
  const GroundSet omega(4);
  const auto f0 = Partition::trivial(omega);
  const auto pa = Partition::canonicalize({{0, 1}, {2, 3}}, omega);
  const auto pb = Partition::canonicalize({{0, 2}, {1, 3}}, omega);
  const auto pbp = Partition::canonicalize({{0, 2, 3}, {1}}, omega);
  const auto mu0 = ProbMeasure::point(f0, 0);

  std::ostringstream os;
  os << "toy universe on Ω = {1,2,3,4}\n\n";

  os << "[1] undifferentiated start\n";
  os << "  F0 atoms: " << to_string(f0) << "\n";
  os << "  mu0: " << to_string(mu0) << "\n\n";

  os << "[2] first distinction A\n";
  const AtomicRefinement ra(f0, {0, 1, 2, 3}, {{0, 1}, {2, 3}}, "A");
  os << "  step " << ra.label() << ": " << to_string(ra.source()) << " -> " << to_string(ra.target()) << "\n";
  for (const Rational& p : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
    const auto mu = extend_with_weights(mu0, pa, {{p, 1 - p}});
    os << "  p = " << to_string(p) << ": mu_A = " << to_string(mu) << "\n";
  }
  const auto aut_a = automorphism_group(pa);
  os << "  |Aut(P_A)| = " << aut_a.order() << ", invariant measure "
     << to_string(invariant_measures(pa, aut_a).representative) << "\n\n";

  os << "[3] commuting second distinction B\n";
  os << "  P_B: " << to_string(pb) << "\n";
  os << "  commute(P_A, P_B): " << verdict_text(commute(pa, pb)) << "\n";
  const AtomicRefinement rb(f0, {0, 1, 2, 3}, {{0, 2}, {1, 3}}, "B");
  os << "  classify(A, B): " << to_string(classify(ra, rb)) << "\n";
  const auto ab = join(pa, pb);
  os << "  joint algebra: " << to_string(ab) << "\n";
  intersections(os, pa, pb);
  for (const Rational& p : {Rational(0), Rational(1, 3), Rational(1)}) {
    const auto mu_a = extend_with_weights(mu0, pa, {{p, 1 - p}});
    const auto mu_ab = extend_with_weights(mu_a, ab, {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}});
    const auto& w = mu_ab.weights();
    os << "  p = " << to_string(p) << ": mu_AB = " << format_weights(w) << ", p1+p2 = " << to_string(w[0] + w[1])
       << ", p3+p4 = " << to_string(w[2] + w[3]) << "\n";
  }
  os << "\n";

  os << "[4] non-commuting second distinction B'\n";
  os << "  P_B': " << to_string(pbp) << "\n";
  intersections(os, pa, pbp);
  os << "  commute(P_A, P_B'): " << verdict_text(commute(pa, pbp)) << "\n";
  const AtomicRefinement rbp(f0, {0, 1, 2, 3}, {{0, 2, 3}, {1}}, "B'");
  os << "  classify(A, B'): " << to_string(classify(ra, rbp)) << "\n";
  const auto abp = join(pa, pbp);
  os << "  joint algebra: " << to_string(abp) << "\n";
  const auto seq = decompose(pa, abp);
  os << "  sequential route: A";
  for (const auto& st : seq.steps()) os << ", " << st.label();
  os << "\n\n";

  os << "[5] endogenous pairs on {F0, P_A, P_B}\n";
  const auto domain = build_domain({pa, pb});
  const auto pairs = solve_endogenous(domain);
  for (const auto& pr : pairs) os << "  " << to_string(pr.measure) << "\n";
  const auto swap23 = PermGroup::generate(omega, {Permutation::from_cycles(omega, {{1, 2}})});
  os << "  uniqueness under <(2 3)>: "
     << to_string(check_uniqueness_up_to_symmetry(pairs, swap23, domain).status) << "\n\n";

  os << "[6] event graph of the chains (A,B), (B,A), (A,B')\n";
  const auto g = EventGraph::from_label_chains({{"A", "B"}, {"B", "A"}, {"A", "B'"}});
  for (const auto& [x, y] : g.covers()) os << "  " << x << " -> " << y << "\n";
  for (std::size_t i = 0; i < g.nodes().size(); ++i)
    for (std::size_t j = i + 1; j < g.nodes().size(); ++j)
      if (!g.comparable(g.nodes()[i], g.nodes()[j]))
        os << "  " << g.nodes()[i] << " || " << g.nodes()[j] << "\n";
  os << "\n";

  os << "summary\n";
  os << "  pair      relation   joint atoms  extension constraints\n";
  os << "  A, B      " << (commute(pa, pb).commuting ? "spacelike" : "timelike ") << "  " << ab.atom_count()
     << "            p1+p2 = p, p3+p4 = 1-p\n";
  os << "  A, B'     " << (commute(pa, pbp).commuting ? "spacelike" : "timelike ") << "  " << abp.atom_count()
     << "            sequential only\n";
  return os.str();
}

}  // namespace sigma
