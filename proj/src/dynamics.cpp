#include "sigma/dynamics.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <random>
#include <set>

#include "sigma/relation.hpp"

namespace sigma {

namespace {

std::vector<Block> canonical_blocks(std::vector<Block> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
  return blocks;
}

std::string block_text(const Block& b) {
  std::string s = "{";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(b[i] + 1);
  }
  return s + "}";
}

}  // namespace

std::string canonical_label(const Block& atom, const std::vector<Block>& parts) {
  std::string s = block_text(atom) + ">";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += '|';
    s += block_text(parts[i]);
  }
  return s;
}

AtomicRefinement::AtomicRefinement(Partition source, Block atom, std::vector<Block> parts,
                                   std::optional<std::string> label)
    : source_(source), target_(source) {
  std::sort(atom.begin(), atom.end());
  auto idx = source.find_atom(atom);
  if (!idx)
    fail(ErrorCode::NotApplicable, block_text(atom) + " is not an atom of " + to_string(source));
  if (parts.size() < 2) fail(ErrorCode::Shape, "an atomic refinement needs at least two parts");
  for (const auto& p : parts)
    if (p.empty()) fail(ErrorCode::Shape, "empty part in atomic refinement");
  parts = canonical_blocks(std::move(parts));
  Block covered;
  for (const auto& p : parts) covered.insert(covered.end(), p.begin(), p.end());
  std::sort(covered.begin(), covered.end());
  if (covered != atom)
    fail(ErrorCode::Shape, "parts do not partition the atom " + block_text(atom));

  std::vector<int> labels(source.atom_of());
  int fresh = static_cast<int>(source.atom_count());
  for (std::size_t i = 1; i < parts.size(); ++i, ++fresh)
    for (Element x : parts[i]) labels[static_cast<std::size_t>(x)] = fresh;
  target_ = Partition::from_labels(labels);
  split_atom_ = *idx;
  atom_ = std::move(atom);
  parts_ = std::move(parts);
  label_ = label ? *label : canonical_label(atom_, parts_);
}

AtomicRefinement AtomicRefinement::between(const Partition& source, const Partition& target,
                                           std::optional<std::string> label) {
  if (!strictly_refines(source, target))
    fail(ErrorCode::NotARefinement, to_string(target) + " does not strictly refine " +
                                        to_string(source));
  if (target.atom_count() < source.atom_count() + 1)
    fail(ErrorCode::InvalidArgument, "not a refinement step");
  std::optional<std::size_t> split;
  for (std::size_t i = 0; i < source.atom_count(); ++i) {
    if (target.find_atom(source.atom(i))) continue;
    if (split)
      fail(ErrorCode::InvalidArgument, to_string(source) + " -> " + to_string(target) +
                                           " subdivides more than one atom");
    split = i;
  }
  const auto& atom = source.atom(*split);
  std::vector<Block> parts;
  for (const auto& t : target.atoms())
    if (source.atom_of(t.front()) == static_cast<int>(*split)) parts.push_back(t);
  return AtomicRefinement(source, atom, std::move(parts), std::move(label));
}

Partition AtomicRefinement::apply(const Partition& p) const {
  if (p.size() != source_.size()) fail(ErrorCode::GroundMismatch, "refinement applied across ground sets");
  if (!applicable(p))
    fail(ErrorCode::NotApplicable, block_text(atom_) + " is not an atom of " + to_string(p));
  std::vector<int> labels(p.atom_of());
  int fresh = static_cast<int>(p.atom_count());
  for (std::size_t i = 1; i < parts_.size(); ++i, ++fresh)
    for (Element x : parts_[i]) labels[static_cast<std::size_t>(x)] = fresh;
  return Partition::from_labels(labels);
}

std::vector<AtomicRefinement> enumerate_atomic_refinements(const Partition& p) {
  std::vector<AtomicRefinement> out;
  for (const auto& atom : p.atoms()) {
    if (atom.size() < 2) continue;
    for_each_partition(GroundSet(static_cast<int>(atom.size())), [&](const Partition& sub) {
      if (sub.is_trivial()) return;
      std::vector<Block> parts;
      for (const auto& local : sub.atoms()) {
        Block b;
        for (Element i : local) b.push_back(atom[static_cast<std::size_t>(i)]);
        parts.push_back(std::move(b));
      }
      out.emplace_back(p, atom, std::move(parts));
    });
  }
  return out;
}

RefinementChain::RefinementChain(std::vector<AtomicRefinement> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) fail(ErrorCode::InvalidArgument, "use RefinementChain::empty for a chain without steps");
  algebras_.push_back(steps_.front().source());
  for (const auto& s : steps_) {
    if (s.source() != algebras_.back())
      fail(ErrorCode::InvalidArgument, "step " + s.label() + " starts at " + to_string(s.source()) +
                                           " but the chain is at " + to_string(algebras_.back()));
    algebras_.push_back(s.target());
  }
}

RefinementChain RefinementChain::empty(const Partition& start) {
  RefinementChain c;
  c.algebras_.push_back(start);
  return c;
}

RefinementChain decompose(const Partition& coarse, const Partition& fine) {
  if (!refines(coarse, fine))
    fail(ErrorCode::NotARefinement, to_string(fine) + " does not refine " + to_string(coarse));
  std::vector<AtomicRefinement> steps;
  Partition current = coarse;
  while (current != fine) {
    for (const auto& atom : current.atoms()) {
      if (fine.find_atom(atom)) continue;
      const int head = fine.atom_of(atom.front());
      Block first, rest;
      for (Element x : atom) (fine.atom_of(x) == head ? first : rest).push_back(x);
      steps.emplace_back(current, atom, std::vector<Block>{first, rest});
      break;
    }
    current = steps.back().target();
  }
  if (steps.empty()) return RefinementChain::empty(coarse);
  return RefinementChain(std::move(steps));
}

const char* to_string(CausalRelation r) noexcept {
  return r == CausalRelation::Spacelike ? "spacelike" : "timelike";
}

CausalRelation classify(const AtomicRefinement& a, const AtomicRefinement& b) {
  if (a.source() != b.source())
    fail(ErrorCode::SourceMismatch, a.label() + " and " + b.label() + " refine different partitions");
  return commute(a.target(), b.target()).commuting ? CausalRelation::Spacelike
                                                   : CausalRelation::Timelike;
}

bool operators_commute(const AtomicRefinement& a, const AtomicRefinement& b,
                       const std::optional<Partition>& common) {
  const Partition& p = common ? *common : a.source();
  if (!a.applicable(p))
    fail(ErrorCode::NotApplicable, a.label() + " is not applicable to " + to_string(p));
  if (!b.applicable(p))
    fail(ErrorCode::NotApplicable, b.label() + " is not applicable to " + to_string(p));
  if (a.atom() == b.atom()) return false;
  auto ab = a.apply(b.apply(p));
  auto ba = b.apply(a.apply(p));
  if (ab != ba)
    fail(ErrorCode::InvalidArgument, "refinements of disjoint atoms gave different results");
  return true;
}

std::vector<Rational> branching_weights(const std::vector<AtomicRefinement>& branches,
                                        const BranchingRule& rule) {
  if (branches.empty()) fail(ErrorCode::EmptyBranchSet, "no branches");
  for (std::size_t i = 0; i < branches.size(); ++i)
    for (std::size_t j = i + 1; j < branches.size(); ++j)
      if (classify(branches[i], branches[j]) == CausalRelation::Spacelike)
        fail(ErrorCode::IncompatibleInput, branches[i].label() + " and " + branches[j].label() +
                                               " are spacelike, not alternative futures");
  const auto k = branches.size();
  std::vector<Rational> w;
  switch (rule.kind) {
    case BranchingRule::Kind::Uniform:
      w.assign(k, Rational(1, static_cast<long>(k)));
      break;
    case BranchingRule::Kind::ProportionalToParts: {
      long total = 0;
      for (const auto& b : branches) total += static_cast<long>(b.parts().size());
      for (const auto& b : branches) w.emplace_back(static_cast<long>(b.parts().size()), total);
      break;
    }
    case BranchingRule::Kind::Table:
      if (rule.table.size() != k)
        fail(ErrorCode::Shape, "table has " + std::to_string(rule.table.size()) + " weights for " +
                                   std::to_string(k) + " branches");
      w = rule.table;
      break;
  }
  for (const auto& x : w)
    if (x < 0) fail(ErrorCode::NegativeWeight, "negative branching weight " + to_string(x));
  if (auto total = sum(w); total != 1)
    fail(ErrorCode::WeightSum, "branching weights sum to " + to_string(total));
  return w;
}

ProbMeasure extend_along(const ProbMeasure& mu, const RefinementChain& chain,
                         const std::vector<std::vector<Rational>>& weights) {
  if (mu.base() != chain.algebras().front())
    fail(ErrorCode::InvalidArgument, "measure does not live on the chain's start");
  if (weights.size() != chain.length())
    fail(ErrorCode::Shape, "need one weight list per step");
  ProbMeasure current = mu;
  for (std::size_t s = 0; s < chain.length(); ++s) {
    const auto& step = chain.steps()[s];
    std::vector<std::vector<Rational>> split(step.source().atom_count());
    split[step.split_atom()] = weights[s];
    current = extend_with_weights(current, step.target(), split);
  }
  return current;
}

ProbMeasure extend_spacelike(const ProbMeasure& mu, const AtomicRefinement& first,
                             const std::vector<Rational>& w_first,
                             const AtomicRefinement& second,
                             const std::vector<Rational>& w_second) {
  if (classify(first, second) != CausalRelation::Spacelike)
    fail(ErrorCode::IncompatibleInput, first.label() + " and " + second.label() + " are timelike");
  if (mu.base() != first.source())
    fail(ErrorCode::InvalidArgument, "measure does not live on the common source");
  if (w_second.size() != second.parts().size())
    fail(ErrorCode::Shape, "second weight list does not match its parts");
  if (first.atom() == second.atom())
    for (const auto& a : first.parts())
      for (const auto& b : second.parts()) {
        Block cap;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(cap));
        if (cap.empty())
          fail(ErrorCode::IncompatibleInput, "parts " + block_text(a) + " and " + block_text(b) +
                                                 " do not meet; no product structure on " +
                                                 block_text(first.atom()));
      }

  std::vector<std::vector<Rational>> split(first.source().atom_count());
  split[first.split_atom()] = w_first;
  auto after_first = extend_with_weights(mu, first.target(), split);

  const auto& mid = first.target();
  auto joint = join(mid, second.target());
  auto witness = is_refinement(mid, joint);
  std::vector<std::vector<Rational>> second_split(mid.atom_count());
  for (std::size_t c = 0; c < mid.atom_count(); ++c) {
    std::vector<std::size_t> pieces;
    for (std::size_t j = 0; j < joint.atom_count(); ++j)
      if (witness->block_map[j] == c) pieces.push_back(j);
    if (pieces.size() == 1) continue;
    // Every piece of c lies inside one part of `second`; c must meet all of
    // them for the product rule to apply.
    if (pieces.size() != second.parts().size())
      fail(ErrorCode::IncompatibleInput, "spacelike pair without a product structure on " +
                                             block_text(mid.atom(c)));
    for (auto j : pieces) {
      Element x = joint.atom(j).front();
      for (std::size_t b = 0; b < second.parts().size(); ++b) {
        const auto& part = second.parts()[b];
        if (std::binary_search(part.begin(), part.end(), x)) second_split[c].push_back(w_second[b]);
      }
    }
  }
  return extend_with_weights(after_first, joint, second_split);
}

bool histories_coherent(const RefinementChain& h1, const RefinementChain& h2) {
  require_same_ground(h1.algebras().front(), h2.algebras().front());
  for (const auto& a : h1.steps())
    for (const auto& b : h2.steps())
      if (!commute(a.target(), b.target()).commuting) return false;
  return true;
}

EventGraph EventGraph::from_label_chains(const std::vector<std::vector<std::string>>& chains) {
  EventGraph g;
  g.chains_ = chains;
  std::set<std::string> nodes;
  std::vector<std::map<std::string, std::size_t>> position(chains.size());
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (std::size_t i = 0; i < chains[c].size(); ++i) {
      if (!position[c].emplace(chains[c][i], i).second)
        fail(ErrorCode::InvalidArgument, "label " + chains[c][i] + " repeats inside chain " +
                                             std::to_string(c + 1));
      nodes.insert(chains[c][i]);
    }
  g.nodes_.assign(nodes.begin(), nodes.end());

  for (const auto& a : g.nodes_)
    for (const auto& b : g.nodes_) {
      if (a == b) continue;
      bool shared = false, always_before = true;
      for (const auto& pos : position) {
        auto ia = pos.find(a), ib = pos.find(b);
        if (ia == pos.end() || ib == pos.end()) continue;
        shared = true;
        if (ia->second > ib->second) always_before = false;
      }
      if (shared && always_before) g.relation_.emplace_back(a, b);
    }

  // Kahn's algorithm over the relation.
  std::map<std::string, std::size_t> indegree;
  for (const auto& n : g.nodes_) indegree[n] = 0;
  for (const auto& [a, b] : g.relation_) ++indegree[b];
  std::vector<std::string> ready;
  for (const auto& [n, d] : indegree)
    if (d == 0) ready.push_back(n);
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto n = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& [a, b] : g.relation_)
      if (a == n && --indegree[b] == 0) ready.push_back(b);
  }
  if (seen != g.nodes_.size())
    fail(ErrorCode::Cyclicity, "precedence relation has a cycle; the chain set disagrees "
                               "on the order of steps that never share a chain");
  return g;
}

EventGraph EventGraph::from_chains(const std::vector<RefinementChain>& chains) {
  std::map<std::string, const AtomicRefinement*> by_label;
  std::vector<std::vector<std::string>> labels;
  for (const auto& chain : chains) {
    std::vector<std::string> seq;
    for (const auto& step : chain.steps()) {
      auto [it, fresh] = by_label.emplace(step.label(), &step);
      if (!fresh && (it->second->source() != step.source() || it->second->target() != step.target()))
        fail(ErrorCode::LabelConflict, "label " + step.label() + " names two different refinements");
      seq.push_back(step.label());
    }
    labels.push_back(std::move(seq));
  }
  return from_label_chains(labels);
}

std::vector<std::pair<std::string, std::string>> EventGraph::covers() const {
  // The relation need not be transitive, so reduce against its closure.
  const std::size_t k = nodes_.size();
  auto index = [&](const std::string& s) {
    return static_cast<std::size_t>(std::lower_bound(nodes_.begin(), nodes_.end(), s) - nodes_.begin());
  };
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (const auto& [a, b] : relation_) reach[index(a)][index(b)] = true;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (reach[i][m])
        for (std::size_t j = 0; j < k; ++j)
          if (reach[m][j]) reach[i][j] = true;

  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : relation_) {
    const auto i = index(a), j = index(b);
    bool through = false;
    for (std::size_t m = 0; m < k && !through; ++m) through = m != i && m != j && reach[i][m] && reach[m][j];
    if (!through) out.emplace_back(a, b);
  }
  return out;
}

bool EventGraph::precedes(const std::string& a, const std::string& b) const {
  return std::binary_search(relation_.begin(), relation_.end(), std::make_pair(a, b));
}

const char* to_string(SimulationResult::Outcome o) noexcept {
  switch (o) {
    case SimulationResult::Outcome::Stabilized: return "stabilized";
    case SimulationResult::Outcome::StepBudgetExhausted: return "step_budget_exhausted";
    case SimulationResult::Outcome::ScriptCompleted: return "script_completed";
  }
  return "?";
}

SimulationResult simulate(const Partition& start, const SimulationPolicy& policy,
                          std::size_t max_steps, const std::optional<CompatibilityDomain>& domain) {
  if (domain) require_same_ground(start, domain->members().front());
  auto admissible = [&](const Partition& p) {
    std::vector<AtomicRefinement> out;
    for (auto& r : enumerate_atomic_refinements(p))
      if (!domain || domain->contains(r.target())) out.push_back(std::move(r));
    return out;
  };

  std::mt19937_64 rng(policy.seed);
  std::vector<AtomicRefinement> steps;
  Partition current = start;
  std::size_t scripted = 0;
  while (true) {
    auto options = admissible(current);
    const bool is_script = policy.kind == SimulationPolicy::Kind::Scripted;
    const bool script_done = is_script && scripted == policy.script.size();
    // A pending scripted step is attempted even when nothing is admissible.
    if ((options.empty() && (!is_script || script_done)) || script_done || steps.size() == max_steps) {
      SimulationResult::Outcome outcome = SimulationResult::Outcome::Stabilized;
      if (!options.empty())
        outcome = script_done ? SimulationResult::Outcome::ScriptCompleted
                              : SimulationResult::Outcome::StepBudgetExhausted;
      auto trace = steps.empty() ? RefinementChain::empty(start) : RefinementChain(std::move(steps));
      return SimulationResult{current, std::move(trace), outcome};
    }

    std::optional<AtomicRefinement> chosen;
    switch (policy.kind) {
      case SimulationPolicy::Kind::Exhaustive:
        for (auto& r : options)
          if (r.parts().size() == 2) {
            chosen = std::move(r);
            break;
          }
        if (!chosen) chosen = options.front();
        break;
      case SimulationPolicy::Kind::Scripted: {
        const auto& [atom, parts] = policy.script[scripted++];
        Block sorted_atom = atom;
        std::sort(sorted_atom.begin(), sorted_atom.end());
        if (!current.find_atom(sorted_atom))
          fail(ErrorCode::Policy, "scripted step " + std::to_string(scripted) + ": " +
                                      block_text(sorted_atom) + " is not an atom of " +
                                      to_string(current));
        try {
          chosen.emplace(current, sorted_atom, parts);
        } catch (const Error& e) {
          fail(ErrorCode::Policy, "scripted step " + std::to_string(scripted) + ": " + e.what());
        }
        if (domain && !domain->contains(chosen->target()))
          fail(ErrorCode::Policy, "scripted step " + std::to_string(scripted) + " leaves the domain");
        break;
      }
      case SimulationPolicy::Kind::RuleDriven:
        if (policy.rule == SimulationPolicy::Rule::Random) {
          chosen = options[static_cast<std::size_t>(rng() % options.size())];
        } else {
          // Largest atom first, then the most even binary split.
          auto score = [](const AtomicRefinement& r) {
            auto a = r.parts()[0].size(), b = r.parts()[1].size();
            return std::make_pair(r.atom().size(), -static_cast<long>(a > b ? a - b : b - a));
          };
          const AtomicRefinement* best = nullptr;
          for (const auto& r : options)
            if (r.parts().size() == 2 && (!best || score(r) > score(*best))) best = &r;
          chosen = best ? *best : options.front();
        }
        break;
    }
    current = chosen->target();
    steps.push_back(std::move(*chosen));
  }
}

}  // namespace sigma
