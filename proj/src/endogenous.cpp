#include "sigma/endogenous.hpp"

#include <algorithm>
#include <numeric>

#include "sigma/feasibility.hpp"
#include "sigma/relation.hpp"

namespace sigma {

namespace {

std::string describe_witness(std::pair<Element, Element> w) {
  return "(" + std::to_string(w.first + 1) + "," + std::to_string(w.second + 1) + ")";
}

// Strict refinements of p, in canonical order.
std::vector<Partition> strict_refinements(const Partition& p) {
  std::vector<Partition> out;
  for_each_partition(p.ground(), [&](const Partition& q) {
    if (strictly_refines(p, q)) out.push_back(q);
  });
  return out;
}

// Refinements of p splitting exactly one atom into two pieces.
std::vector<Partition> upper_covers(const Partition& p) {
  std::vector<Partition> out;
  for (std::size_t i = 0; i < p.atom_count(); ++i) {
    const auto& atom = p.atom(i);
    if (atom.size() < 2) continue;
    // Subsets containing the atom's minimum, other than the whole atom.
    const std::size_t rest = atom.size() - 1;
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << rest); ++mask) {
      std::vector<int> labels(p.atom_of());
      const int fresh = static_cast<int>(p.atom_count());
      for (std::size_t b = 0; b < rest; ++b)
        if (!(mask >> b & 1)) labels[static_cast<std::size_t>(atom[b + 1])] = fresh;
      out.push_back(Partition::from_labels(labels));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Nontrivial automorphisms of base(mu) that leave mu unchanged.
std::vector<Permutation> measure_stabiliser(const ProbMeasure& mu) {
  std::vector<Permutation> out;
  const auto aut = automorphism_group(mu.base());
  for (const auto& g : aut.elements())
    if (!g.is_identity() && pushforward(g, mu) == mu) out.push_back(g);
  return out;
}

}  // namespace

CommutativityViolationError::CommutativityViolationError(Partition a, Partition b,
                                                         std::pair<Element, Element> witness)
    : Error(ErrorCode::CommutativityViolation,
            to_string(a) + " and " + to_string(b) + " do not commute; witness " +
                describe_witness(witness)),
      a_(std::move(a)),
      b_(std::move(b)),
      witness_(witness) {}

CompatibilityDomain CompatibilityDomain::from_members(std::vector<Partition> members) {
  if (members.empty()) fail(ErrorCode::EmptyDomain, "compatibility domain must be nonempty");
  for (const auto& m : members) require_same_ground(members.front(), m);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      auto v = commute(members[i], members[j]);
      if (!v.commuting) throw CommutativityViolationError(members[i], members[j], *v.witness);
    }
  for (const auto& m : members)
    for (const auto& c : coarsenings(m))
      if (!std::binary_search(members.begin(), members.end(), c))
        fail(ErrorCode::InvalidArgument, "family is not closed under coarsening: " +
                                             to_string(c) + " coarsens " + to_string(m));
  return CompatibilityDomain(std::move(members));
}

bool CompatibilityDomain::contains(const Partition& p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

bool CompatibilityDomain::commutes_with_all(const Partition& p) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](const Partition& m) { return commute(m, p).commuting; });
}

CompatibilityDomain build_domain(const std::vector<Partition>& generators) {
  if (generators.empty()) fail(ErrorCode::EmptyDomain, "no generators given");
  std::vector<Partition> closure;
  for (const auto& g : generators) {
    require_same_ground(generators.front(), g);
    for (auto& c : coarsenings(g)) closure.push_back(std::move(c));
  }
  return CompatibilityDomain::from_members(std::move(closure));
}

std::vector<Partition> maximal_elements(std::span<const Partition> family) {
  std::vector<Partition> out;
  for (const auto& p : family) {
    bool dominated = std::any_of(family.begin(), family.end(),
                                 [&](const Partition& q) { return strictly_refines(p, q); });
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Partition> maximal_elements(const CompatibilityDomain& domain) {
  return maximal_elements(std::span<const Partition>(domain.members()));
}

std::vector<Partition> minimal_elements(std::span<const Partition> family) {
  std::vector<Partition> out;
  for (const auto& p : family) {
    bool dominated = std::any_of(family.begin(), family.end(),
                                 [&](const Partition& q) { return strictly_refines(q, p); });
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* axiom_c_mode_name(AxiomCMode mode) noexcept {
  switch (mode) {
    case AxiomCMode::AnyNontrivial: return "any-nontrivial";
    case AxiomCMode::FullAut: return "full-aut";
    case AxiomCMode::Persistent: return "persistent";
  }
  return "?";
}

const char* to_string(AxiomCVerdict::Kind kind) noexcept {
  switch (kind) {
    case AxiomCVerdict::Kind::Vacuous: return "vacuous";
    case AxiomCVerdict::Kind::Blocked: return "blocked";
    case AxiomCVerdict::Kind::Violated: return "violated";
  }
  return "?";
}

std::optional<ProbMeasure> find_invariant_extension(const ProbMeasure& mu, const Partition& fine,
                                                    std::span<const Permutation> symmetries) {
  auto witness = is_refinement(mu.base(), fine);
  if (!witness)
    fail(ErrorCode::NotARefinement, to_string(fine) + " does not refine " + to_string(mu.base()));
  const auto k = fine.atom_count();

  // Orbits of the generated group on fine atoms.
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : symmetries) {
    auto action = g.atom_action(fine);
    for (std::size_t j = 0; j < k; ++j) {
      auto a = find(j), b = find(action[j]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> orbit_index(k, k);
  std::size_t orbits = 0;
  for (std::size_t j = 0; j < k; ++j) {
    auto r = find(j);
    if (orbit_index[r] == k) orbit_index[r] = orbits++;
    orbit_index[j] = orbit_index[r];
  }

  // One variable per orbit; each coarse atom's mass is matched exactly.
  NonnegativeSystem system;
  system.variables = orbits;
  for (std::size_t i = 0; i < mu.base().atom_count(); ++i) {
    std::vector<Rational> row(orbits, 0);
    for (std::size_t j = 0; j < k; ++j)
      if (witness->block_map[j] == i) row[orbit_index[j]] += 1;
    system.add_equation(std::move(row), mu.weight(i));
  }
  auto solution = solve_nonnegative(system);
  if (!solution) return std::nullopt;
  std::vector<Rational> nu(k);
  for (std::size_t j = 0; j < k; ++j) nu[j] = (*solution)[orbit_index[j]];
  return ProbMeasure(fine, std::move(nu));
}

namespace {

AxiomCVerdict persistent_verdict(const ProbMeasure& mu, const Partition& fine,
                                 std::span<const Permutation> stabiliser) {
  AxiomCVerdict verdict;
  verdict.kind = AxiomCVerdict::Kind::Blocked;
  bool all_preserve = std::all_of(stabiliser.begin(), stabiliser.end(),
                                  [&](const Permutation& g) { return g.preserves(fine); });
  if (!all_preserve) return verdict;
  if (auto nu = find_invariant_extension(mu, fine, stabiliser)) {
    verdict.kind = AxiomCVerdict::Kind::Violated;
    verdict.extension = std::move(nu);
  }
  return verdict;
}

}  // namespace

AxiomCVerdict check_axiom_c(const ProbMeasure& mu, const Partition& fine,
                            const CompatibilityDomain& domain, AxiomCMode mode) {
  if (!refines(mu.base(), fine))
    fail(ErrorCode::NotARefinement, to_string(fine) + " does not refine " + to_string(mu.base()));
  AxiomCVerdict verdict;
  if (domain.contains(fine)) return verdict;
  verdict.kind = AxiomCVerdict::Kind::Blocked;

  switch (mode) {
    case AxiomCMode::AnyNontrivial: {
      auto aut = automorphism_group(fine);
      for (const auto& g : aut.elements()) {
        if (g.is_identity()) continue;
        const Permutation one[] = {g};
        if (auto nu = find_invariant_extension(mu, fine, one)) {
          verdict.kind = AxiomCVerdict::Kind::Violated;
          verdict.extension = std::move(nu);
          verdict.symmetry = g;
          break;
        }
      }
      break;
    }
    case AxiomCMode::FullAut: {
      auto aut = automorphism_group(fine);
      if (auto nu = find_invariant_extension(mu, fine, aut.generators())) {
        verdict.kind = AxiomCVerdict::Kind::Violated;
        verdict.extension = std::move(nu);
      }
      break;
    }
    case AxiomCMode::Persistent:
      verdict = persistent_verdict(mu, fine, measure_stabiliser(mu));
      break;
  }
  return verdict;
}

SelfConsistencyReport check_self_consistent(const Partition& p, const ProbMeasure& mu,
                                            const CompatibilityDomain& domain,
                                            const ConsistencyOptions& options) {
  require_same_ground(p, domain.members().front());
  if (mu.base() != p)
    fail(ErrorCode::InvalidArgument, "measure lives on " + to_string(mu.base()) + ", not on " +
                                         to_string(p));
  SelfConsistencyReport report{p, mu, false, false, false, 0, {}};

  report.compat_ok = domain.contains(p);
  if (!report.compat_ok)
    report.violations.push_back({"compatibility", to_string(p) + " is not in the domain"});

  auto aut = automorphism_group(p);
  report.invariance_ok = true;
  for (const auto& g : aut.elements()) {
    if (pushforward(g, mu) != mu) {
      report.invariance_ok = false;
      report.violations.push_back(
          {"invariance", "automorphism " + to_string(g) + " moves " + format_weights(mu.weights()) +
                             " to " + format_weights(pushforward(g, mu).weights())});
      break;
    }
  }

  report.refinement_ok = true;
  if (!options.admissible_only) {
    std::vector<Permutation> stabiliser;
    if (options.refinement_mode == AxiomCMode::Persistent) stabiliser = measure_stabiliser(mu);
    for (const auto& q : strict_refinements(p)) {
      if (domain.contains(q) || domain.commutes_with_all(q)) continue;
      ++report.refinements_examined;
      auto verdict = options.refinement_mode == AxiomCMode::Persistent
                         ? persistent_verdict(mu, q, stabiliser)
                         : check_axiom_c(mu, q, domain, options.refinement_mode);
      if (verdict.kind == AxiomCVerdict::Kind::Violated) {
        report.refinement_ok = false;
        report.violations.push_back(
            {"refinement", "extends to non-commuting refinement " + to_string(q) + " as " +
                               format_weights(verdict.extension->weights()) + " (" +
                               axiom_c_mode_name(options.refinement_mode) + ")"});
      }
    }
  }
  return report;
}

std::vector<EndogenousPair> solve_endogenous(const CompatibilityDomain& domain) {
  const auto& members = domain.members();
  if (members.empty()) fail(ErrorCode::EmptyDomain, "empty compatibility domain");
  const auto maxima = maximal_elements(domain);

  // Candidates: members whose canonical invariant measure is self-consistent
  // and cannot be carried to any strictly finer member as an invariant
  // measure. Maximal members qualify vacuously.
  std::vector<EndogenousPair> candidates;
  for (const auto& f : members) {
    auto polytope = invariant_measures(f, automorphism_group(f));
    const auto& mu = polytope.representative;
    bool extendable = false;
    for (const auto& g : members) {
      if (!strictly_refines(f, g)) continue;
      auto aut_g = automorphism_group(g);
      if (find_invariant_extension(mu, g, aut_g.generators())) {
        extendable = true;
        break;
      }
    }
    if (extendable) continue;
    if (!check_self_consistent(f, mu, domain).ok()) continue;
    EndogenousPair pair{f, mu, polytope, false, {}, {}};
    pair.maximal_in_domain = std::binary_search(maxima.begin(), maxima.end(), f);
    candidates.push_back(std::move(pair));
  }
  if (candidates.empty())
    fail(ErrorCode::InvalidArgument, "no self-consistent non-extendable pair in the domain");

  std::vector<Partition> algebras;
  for (const auto& c : candidates) algebras.push_back(c.algebra);
  const auto minimal = minimal_elements(algebras);

  std::vector<EndogenousPair> out;
  for (auto& c : candidates) {
    if (!std::binary_search(minimal.begin(), minimal.end(), c.algebra)) continue;
    for (auto& cover : upper_covers(c.algebra))
      if (!domain.contains(cover))
        c.maximality.push_back({std::move(cover), "not in the compatibility domain"});
    for (const auto& g : members) {
      if (!strictly_refines(g, c.algebra)) continue;
      auto restricted = restrict(c.measure, g);
      bool degenerate = is_degenerate(restricted);
      bool nondegenerate = is_nondegenerate(restricted);
      c.minimality.push_back({g, std::move(restricted), degenerate, nondegenerate});
    }
    out.push_back(std::move(c));
  }
  return out;
}

const char* to_string(UniquenessVerdict::Status status) noexcept {
  switch (status) {
    case UniquenessVerdict::Status::UniqueUpToSymmetry: return "unique up to symmetry";
    case UniquenessVerdict::Status::DomainNotPreserved: return "group does not preserve the domain";
    case UniquenessVerdict::Status::NotTransitive: return "group is not transitive on the endogenous algebras";
    case UniquenessVerdict::Status::MeasureMismatch: return "pushforward measure differs";
  }
  return "?";
}

UniquenessVerdict check_uniqueness_up_to_symmetry(std::span<const EndogenousPair> pairs,
                                                  const PermGroup& group,
                                                  const CompatibilityDomain& domain) {
  UniquenessVerdict v;
  for (const auto& g : group.generators())
    for (const auto& m : domain.members())
      if (!domain.contains(g.apply(m))) {
        v.status = UniquenessVerdict::Status::DomainNotPreserved;
        v.detail = to_string(g) + " maps " + to_string(m) + " to " + to_string(g.apply(m)) +
                   ", outside the domain";
        return v;
      }

  for (const auto& pair : pairs) {
    std::vector<Permutation> stabiliser;
    for (const auto& g : group.elements())
      if (g.preserves(pair.algebra)) stabiliser.push_back(g);
    auto sub = PermGroup::generate(pair.algebra.ground(), std::move(stabiliser));
    v.stabiliser_transitive.push_back(sub.atom_orbits(pair.algebra).size() == 1);
  }

  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      const Permutation* found = nullptr;
      for (const auto& g : group.elements())
        if (g.apply(pairs[i].algebra) == pairs[j].algebra) {
          found = &g;
          break;
        }
      if (!found) {
        v.status = UniquenessVerdict::Status::NotTransitive;
        v.detail = "no group element maps " + to_string(pairs[i].algebra) + " to " +
                   to_string(pairs[j].algebra);
        v.mappings.clear();
        return v;
      }
      if (pushforward(*found, pairs[i].measure) != pairs[j].measure) {
        v.status = UniquenessVerdict::Status::MeasureMismatch;
        v.detail = to_string(*found) + " pushes " + to_string(pairs[i].measure) + " to " +
                   to_string(pushforward(*found, pairs[i].measure)) + ", expected " +
                   to_string(pairs[j].measure);
        return v;
      }
      v.mappings.push_back({i, j, *found});
    }
  v.detail = pairs.size() <= 1 ? "at most one endogenous pair"
                               : "every pair is carried onto every other with equal measures";
  return v;
}

AlgebrasFor algebras_for(const ProbMeasure& mu, const CompatibilityDomain& domain) {
  AlgebrasFor out;
  for (const auto& f : domain.members()) {
    if (!refines(f, mu.base())) {
      out.skipped.push_back(f);
      continue;
    }
    auto restricted = restrict(mu, f);
    if (check_self_consistent(f, restricted, domain).ok()) out.algebras.push_back(f);
  }
  if (!out.algebras.empty()) {
    Partition m = out.algebras.front();
    for (const auto& f : out.algebras) m = meet(m, f);
    out.meet = m;
  }
  return out;
}

}  // namespace sigma
