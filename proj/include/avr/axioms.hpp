#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avr/error.hpp"
#include "avr/profile.hpp"
#include "avr/random.hpp"
#include "avr/rules.hpp"
#include "avr/runoff.hpp"

namespace avr {

enum class Axiom {
  FavoriteConsistency,
  ParetoEfficiency,
  Monotonicity,
  WeakStrategyProofness,
  StrongStrategyProofness,
  CloneProofness,
  WeakCloneProofness,
};

inline std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::FavoriteConsistency: return "favorite-consistent";
    case Axiom::ParetoEfficiency: return "pareto-efficient";
    case Axiom::Monotonicity: return "monotonic";
    case Axiom::WeakStrategyProofness: return "weakly-strategy-proof";
    case Axiom::StrongStrategyProofness: return "strongly-strategy-proof";
    case Axiom::CloneProofness: return "clone-proof";
    case Axiom::WeakCloneProofness: return "weakly-clone-proof";
  }
  return "?";
}

// A concrete failure of an axiom. `before` is the input profile, `after`
// the deviation, improvement or cloning extension (absent for Pareto and
// favorite-consistency). Winner sets are recorded so the witness can be
// replayed.
struct Violation {
  Axiom axiom = Axiom::ParetoEfficiency;
  RuleSpec rule;
  std::optional<ApprovalProfile> approvals;  // favorite-consistency only
  std::optional<APProfile> before;
  std::optional<APProfile> after;
  std::vector<Candidate> winners_before;
  std::vector<Candidate> winners_after;
  // Pareto: {dominator, dominated}. Monotonicity: {a}. Cloning: {a, clone}.
  // Favorite-consistency: the offending pair.
  std::vector<Candidate> subjects;
  std::optional<std::size_t> group;  // ballot group of the deviating voter
  std::string description;
};

enum class DeviationSpace { Consistent, Unrestricted };

struct SearchBudget {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t max_space = 2'000'000;  // exhaustive searches above this are refused
  DeviationSpace space = DeviationSpace::Consistent;

  static SearchBudget exhaustive(std::size_t max_space = 2'000'000) {
    SearchBudget b;
    b.max_space = max_space;
    return b;
  }
  static SearchBudget sampled(std::size_t count, std::uint64_t seed) {
    SearchBudget b;
    b.mode = Mode::Sampled;
    b.samples = count;
    b.seed = seed;
    return b;
  }
};

// Inconclusive is reported whenever the search did not cover the whole
// space; NotFound is only ever returned by a complete enumeration.
enum class SearchStatus { Found, NotFound, Inconclusive, OutOfDomain };

inline std::string_view status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "violation";
    case SearchStatus::NotFound: return "none";
    case SearchStatus::Inconclusive: return "inconclusive";
    case SearchStatus::OutOfDomain: return "out-of-domain";
  }
  return "?";
}

struct SearchResult {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<Violation> violation;
  std::size_t evaluated = 0;
  std::string note;
};

namespace detail {

inline bool contains(const std::vector<Candidate>& sorted, Candidate c) {
  return std::binary_search(sorted.begin(), sorted.end(), c);
}

inline std::int64_t voter_count(const APBallot& b) {
  if (!b.weight.is_integer()) throw InputError("axiom checks need integer ballot weights (voter counts)");
  return b.weight.num();
}

// One voter of group g replaced by `deviant`; the rest of the group stays.
inline APProfile replace_one_voter(const APProfile& p, std::size_t g, APBallot deviant) {
  std::vector<APBallot> out;
  out.reserve(p.ballots().size() + 1);
  for (std::size_t i = 0; i < p.ballots().size(); ++i) {
    const auto& b = p.ballots()[i];
    if (i != g) {
      out.push_back(b);
      continue;
    }
    deviant.weight = Rational(1);
    out.push_back(std::move(deviant));
    if (b.weight > Rational(1)) {
      APBallot rest = b;
      rest.weight -= Rational(1);
      out.push_back(std::move(rest));
    }
  }
  return APProfile(p.num_candidates(), std::move(out), p.labels(), Consistency::NotRequired);
}

inline std::size_t factorial(std::size_t m) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= i;
  return f;
}

inline std::string names(const APProfile& p, const std::vector<Candidate>& cs) {
  std::string s = "{";
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + p.label(cs[i]);
  return s + "}";
}

}  // namespace detail

// Every returned pair must contain an approval winner.
inline std::optional<Violation> check_favorite_consistency(const ApprovalProfile& v, const RuleSpec& spec) {
  auto outcome = evaluate(v, spec);
  auto winners = approval_winners(v);
  for (const auto& pair : outcome.pairs) {
    if (detail::contains(winners, pair.lo) || detail::contains(winners, pair.hi)) continue;
    Violation out;
    out.axiom = Axiom::FavoriteConsistency;
    out.rule = spec;
    out.approvals = v;
    out.subjects = {pair.lo, pair.hi};
    out.description = spec.name() + " selects {" + v.label(pair.lo) + "," + v.label(pair.hi) +
                      "} without an approval winner";
    return out;
  }
  return std::nullopt;
}

// One violation per (a, b) with a dominating b while b still wins.
inline std::vector<Violation> pareto_violations(const APProfile& p, const RuleSpec& spec) {
  std::vector<Violation> out;
  auto winners = avr_winners(p, spec);
  const auto m = static_cast<Candidate>(p.num_candidates());
  for (Candidate b : winners) {
    for (Candidate a = 0; a < m; ++a) {
      if (a == b || !dominates(p, a, b)) continue;
      Violation v;
      v.axiom = Axiom::ParetoEfficiency;
      v.rule = spec;
      v.before = p;
      v.winners_before = winners;
      v.subjects = {a, b};
      v.description = p.label(a) + " dominates " + p.label(b) + " yet " + p.label(b) + " wins under " +
                      spec.name() + "^R";
      out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) { return x.subjects < y.subjects; });
  return out;
}

// True iff q is an a-improvement of p: one voter (one unit of one group)
// may add a to the approval set and move a upward; nothing else changes.
inline bool is_a_improvement(const APProfile& p, const APProfile& q, Candidate a) {
  if (p.num_candidates() != q.num_candidates() || p == q) return false;
  // Compare as multisets of unit voters.
  auto expand = [](const APProfile& x) {
    std::vector<std::pair<std::vector<Candidate>, std::vector<Candidate>>> voters;
    for (const auto& b : x.ballots()) {
      for (std::int64_t k = 0; k < detail::voter_count(b); ++k) voters.emplace_back(b.ranking, b.approved);
    }
    std::sort(voters.begin(), voters.end());
    return voters;
  };
  auto vp = expand(p), vq = expand(q);
  if (vp.size() != vq.size()) return false;
  std::vector<std::pair<std::vector<Candidate>, std::vector<Candidate>>> only_p, only_q;
  std::set_difference(vp.begin(), vp.end(), vq.begin(), vq.end(), std::back_inserter(only_p));
  std::set_difference(vq.begin(), vq.end(), vp.begin(), vp.end(), std::back_inserter(only_q));
  if (only_p.size() != 1 || only_q.size() != 1) return false;
  const auto& [r0, a0] = only_p.front();
  const auto& [r1, a1] = only_q.front();
  std::vector<Candidate> with_a = a0;
  if (!detail::contains(with_a, a)) {
    with_a.insert(std::upper_bound(with_a.begin(), with_a.end(), a), a);
  }
  if (a1 != a0 && a1 != with_a) return false;
  // Relative order of everyone but a is unchanged, and a only moves up.
  std::vector<Candidate> rest0, rest1;
  for (Candidate c : r0) {
    if (c != a) rest0.push_back(c);
  }
  for (Candidate c : r1) {
    if (c != a) rest1.push_back(c);
  }
  if (rest0 != rest1) return false;
  auto pos = [&](const std::vector<Candidate>& r) { return std::find(r.begin(), r.end(), a) - r.begin(); };
  return pos(r1) <= pos(r0);
}

namespace detail {

// a-improvements of one voter of ballot b, in a fixed order.
inline std::vector<APBallot> improvements(const APBallot& b, Candidate a, std::size_t m, DeviationSpace space) {
  std::vector<APBallot> out;
  const std::size_t p = b.position(a);
  const bool approved = b.approves(a);
  auto moved = [&](std::size_t q) {
    std::vector<Candidate> r = b.ranking;
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(p));
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(q), a);
    return r;
  };
  auto add_a = [&](std::vector<Candidate> s) {
    if (!contains(s, a)) s.insert(std::upper_bound(s.begin(), s.end(), a), a);
    return s;
  };
  if (space == DeviationSpace::Unrestricted) {
    for (std::size_t q = 0; q <= p; ++q) {
      out.push_back({moved(q), b.approved, Rational(1)});
      if (!approved) out.push_back({moved(q), add_a(b.approved), Rational(1)});
    }
  } else {
    const std::size_t t = b.approved.size();
    if (approved) {
      for (std::size_t q = 0; q <= p; ++q) out.push_back({moved(q), b.approved, Rational(1)});
    } else {
      for (std::size_t q = t; q <= p; ++q) out.push_back({moved(q), b.approved, Rational(1)});
      for (std::size_t q = 0; q <= t && q <= p; ++q) out.push_back({moved(q), add_a(b.approved), Rational(1)});
    }
  }
  (void)m;
  std::erase_if(out, [&](const APBallot& x) { return x.ranking == b.ranking && x.approved == b.approved; });
  return out;
}

}  // namespace detail

// Searches every winner a and every single-voter a-improvement for one that
// makes a lose.
inline SearchResult find_monotonicity_violation(const APProfile& p, const RuleSpec& spec,
                                                const SearchBudget& budget = {}) {
  SearchResult res;
  auto winners = avr_winners(p, spec);
  const std::size_t m = p.num_candidates();

  struct Move {
    Candidate a;
    std::size_t group;
    APBallot ballot;
  };
  std::vector<Move> moves;
  for (Candidate a : winners) {
    for (std::size_t g = 0; g < p.ballots().size(); ++g) {
      if (detail::voter_count(p.ballots()[g]) < 1) continue;
      for (auto& b : detail::improvements(p.ballots()[g], a, m, budget.space)) moves.push_back({a, g, std::move(b)});
    }
  }

  auto try_move = [&](const Move& mv) -> bool {
    APProfile q = detail::replace_one_voter(p, mv.group, mv.ballot);
    auto after = avr_winners(q, spec);
    ++res.evaluated;
    if (detail::contains(after, mv.a)) return false;
    Violation v;
    v.axiom = Axiom::Monotonicity;
    v.rule = spec;
    v.before = p;
    v.after = std::move(q);
    v.winners_before = winners;
    v.winners_after = std::move(after);
    v.subjects = {mv.a};
    v.group = mv.group;
    v.description = p.label(mv.a) + " wins under " + spec.name() + "^R but loses after an " + p.label(mv.a) +
                    "-improvement by a voter of group " + std::to_string(mv.group + 1);
    res.violation = std::move(v);
    res.status = SearchStatus::Found;
    return true;
  };

  if (budget.mode == SearchBudget::Mode::Exhaustive) {
    if (moves.size() > budget.max_space) {
      res.status = SearchStatus::Inconclusive;
      res.note = "improvement space exceeds budget";
      return res;
    }
    for (const auto& mv : moves) {
      if (try_move(mv)) return res;
    }
    res.status = SearchStatus::NotFound;
    return res;
  }
  Rng rng(budget.seed);
  for (std::size_t s = 0; s < budget.samples && !moves.empty(); ++s) {
    if (try_move(moves[rng.index(moves.size())])) return res;
  }
  res.status = SearchStatus::Inconclusive;
  res.note = "sampled search found nothing";
  return res;
}

// No candidate is approved in every non-empty ballot (and some ballot is
// non-empty).
inline bool in_weak_clone_domain(const APProfile& p) {
  const auto m = static_cast<Candidate>(p.num_candidates());
  for (Candidate c = 0; c < m; ++c) {
    bool escapes = false;
    for (const auto& b : p.ballots()) {
      if (b.weight.sign() > 0 && !b.approved.empty() && !b.approves(c)) {
        escapes = true;
        break;
      }
    }
    if (!escapes) return false;
  }
  return true;
}

// a-cloning extension: `clone` (id m) is inserted next to a in every
// ranking and approved exactly when a is. `clone_first[g]` voters of group g
// rank the clone above a; the others rank it just below.
inline APProfile cloning_extension(const APProfile& p, Candidate a, const std::vector<std::int64_t>& clone_first) {
  const std::size_t m = p.num_candidates();
  const auto clone = static_cast<Candidate>(m);
  auto labels = p.labels();
  std::string name = p.label(a) + "'";
  while (std::find(labels.begin(), labels.end(), name) != labels.end()) name += "'";
  labels.push_back(name);
  std::vector<APBallot> out;
  for (std::size_t g = 0; g < p.ballots().size(); ++g) {
    const auto& b = p.ballots()[g];
    const std::int64_t w = detail::voter_count(b);
    const std::int64_t k = g < clone_first.size() ? clone_first[g] : 0;
    auto build = [&](bool clone_above) {
      APBallot x;
      for (Candidate c : b.ranking) {
        if (c == a && clone_above) x.ranking.push_back(clone);
        x.ranking.push_back(c);
        if (c == a && !clone_above) x.ranking.push_back(clone);
      }
      x.approved = b.approved;
      if (b.approves(a)) x.approved.push_back(clone);
      return x;
    };
    if (w - k > 0 || w == 0) {
      APBallot x = build(false);
      x.weight = Rational(w - k);
      out.push_back(std::move(x));
    }
    if (k > 0) {
      APBallot x = build(true);
      x.weight = Rational(k);
      out.push_back(std::move(x));
    }
  }
  return APProfile(m + 1, std::move(out), std::move(labels), Consistency::NotRequired);
}

// True iff q (over m + 1 candidates) is an a-cloning extension of p with the
// clone at id m.
inline bool is_cloning_extension(const APProfile& p, const APProfile& q, Candidate a) {
  const std::size_t m = p.num_candidates();
  if (q.num_candidates() != m + 1) return false;
  const auto clone = static_cast<Candidate>(m);
  // Removing the clone must give back p (as a multiset of voters), and each
  // voter must treat the clone like a.
  std::vector<std::pair<std::vector<Candidate>, std::vector<Candidate>>> vp, vq;
  for (const auto& b : p.ballots()) {
    for (std::int64_t k = 0; k < detail::voter_count(b); ++k) vp.emplace_back(b.ranking, b.approved);
  }
  for (const auto& b : q.ballots()) {
    if (b.approves(a) != b.approves(clone)) return false;
    const auto pa = b.position(a), pc = b.position(clone);
    if (pa + 1 != pc && pc + 1 != pa) return false;
    std::vector<Candidate> r, s;
    for (Candidate c : b.ranking) {
      if (c != clone) r.push_back(c);
    }
    for (Candidate c : b.approved) {
      if (c != clone) s.push_back(c);
    }
    for (std::int64_t k = 0; k < detail::voter_count(b); ++k) vq.emplace_back(r, s);
  }
  std::sort(vp.begin(), vp.end());
  std::sort(vq.begin(), vq.end());
  return vp == vq;
}

// Searches the a-cloning extensions of p for a breach of either
// clone-proofness condition. With `weak`, profiles outside the weak domain
// are reported OutOfDomain (the axiom holds vacuously there).
inline SearchResult find_clone_violation(const APProfile& p, Candidate a, const RuleSpec& spec,
                                         const SearchBudget& budget = {}, bool weak = false) {
  SearchResult res;
  detail::check_candidate(p.num_candidates(), a);
  if (weak && !in_weak_clone_domain(p)) {
    res.status = SearchStatus::OutOfDomain;
    res.note = "some candidate is approved in every non-empty ballot";
    return res;
  }
  const auto before = avr_winners(p, spec);
  const std::size_t groups = p.ballots().size();
  std::vector<std::int64_t> radix(groups);
  double space = 1.0;
  for (std::size_t g = 0; g < groups; ++g) {
    radix[g] = detail::voter_count(p.ballots()[g]) + 1;
    space *= static_cast<double>(radix[g]);
  }
  const auto clone = static_cast<Candidate>(p.num_candidates());
  const Axiom axiom = weak ? Axiom::WeakCloneProofness : Axiom::CloneProofness;

  auto try_split = [&](const std::vector<std::int64_t>& split) -> bool {
    APProfile q = cloning_extension(p, a, split);
    auto after = avr_winners(q, spec);
    ++res.evaluated;
    std::string broken;
    for (Candidate c = 0; c < static_cast<Candidate>(p.num_candidates()); ++c) {
      if (c == a) continue;
      if (detail::contains(before, c) != detail::contains(after, c)) {
        broken = p.label(c) + (detail::contains(before, c) ? " stops winning" : " starts winning");
        break;
      }
    }
    if (broken.empty()) {
      const bool was = detail::contains(before, a);
      const bool now = detail::contains(after, a) || detail::contains(after, clone);
      if (was != now) broken = was ? "neither clone wins any more" : "a clone starts winning";
    }
    if (broken.empty()) return false;
    Violation v;
    v.axiom = axiom;
    v.rule = spec;
    v.before = p;
    v.after = std::move(q);
    v.winners_before = before;
    v.winners_after = std::move(after);
    v.subjects = {a, clone};
    v.description = "cloning " + p.label(a) + " under " + spec.name() + "^R: " + broken;
    res.violation = std::move(v);
    res.status = SearchStatus::Found;
    return true;
  };

  if (budget.mode == SearchBudget::Mode::Exhaustive) {
    if (space > static_cast<double>(budget.max_space)) {
      res.status = SearchStatus::Inconclusive;
      res.note = "cloning space exceeds budget";
      return res;
    }
    std::vector<std::int64_t> split(groups, 0);
    while (true) {
      if (try_split(split)) return res;
      std::size_t g = groups;
      while (g > 0) {
        --g;
        if (++split[g] < radix[g]) break;
        split[g] = 0;
        if (g == 0) {
          res.status = SearchStatus::NotFound;
          return res;
        }
      }
      if (groups == 0) {
        res.status = SearchStatus::NotFound;
        return res;
      }
    }
  }
  Rng rng(budget.seed);
  for (std::size_t s = 0; s < budget.samples; ++s) {
    std::vector<std::int64_t> split(groups);
    for (std::size_t g = 0; g < groups; ++g) {
      split[g] = static_cast<std::int64_t>(rng.uniform_int(0, static_cast<std::uint64_t>(radix[g] - 1)));
    }
    if (try_split(split)) return res;
  }
  res.status = SearchStatus::Inconclusive;
  res.note = "sampled search found nothing";
  return res;
}

// Runs find_clone_violation for every candidate; first hit wins.
inline SearchResult find_any_clone_violation(const APProfile& p, const RuleSpec& spec, const SearchBudget& budget = {},
                                             bool weak = false) {
  SearchResult total;
  total.status = SearchStatus::NotFound;
  for (Candidate a = 0; a < static_cast<Candidate>(p.num_candidates()); ++a) {
    auto r = find_clone_violation(p, a, spec, budget, weak);
    total.evaluated += r.evaluated;
    if (r.status == SearchStatus::Found || r.status == SearchStatus::OutOfDomain) {
      r.evaluated = total.evaluated;
      return r;
    }
    if (r.status == SearchStatus::Inconclusive) {
      total.status = SearchStatus::Inconclusive;
      total.note = r.note;
    }
  }
  return total;
}

enum class ManipulationMode { Strong, Weak };

namespace detail {

// Does switching from `sincere` change the outcome in the voter's favor?
inline bool manipulation_succeeds(const APBallot& sincere, const std::vector<Candidate>& before,
                                  const std::vector<Candidate>& after, ManipulationMode mode) {
  if (mode == ManipulationMode::Strong) {
    return std::any_of(after.begin(), after.end(), [&](Candidate x) {
      return std::all_of(before.begin(), before.end(), [&](Candidate y) { return sincere.prefers(x, y); });
    });
  }
  auto approved_winner = [&](const std::vector<Candidate>& w) {
    return std::any_of(w.begin(), w.end(), [&](Candidate c) { return sincere.approves(c); });
  };
  return !approved_winner(before) && approved_winner(after);
}

}  // namespace detail

// Checks a single i-deviation: one voter of group g casts `deviant`.
inline std::optional<Violation> check_deviation(const APProfile& p, std::size_t g, const APBallot& deviant,
                                                const RuleSpec& spec, ManipulationMode mode) {
  if (g >= p.ballots().size() || detail::voter_count(p.ballots()[g]) < 1) throw InputError("no voter in that group");
  const auto before = avr_winners(p, spec);
  APProfile q = detail::replace_one_voter(p, g, deviant);
  auto after = avr_winners(q, spec);
  if (!detail::manipulation_succeeds(p.ballots()[g], before, after, mode)) return std::nullopt;
  Violation v;
  v.axiom = mode == ManipulationMode::Strong ? Axiom::StrongStrategyProofness : Axiom::WeakStrategyProofness;
  v.rule = spec;
  v.before = p;
  v.after = std::move(q);
  v.winners_before = before;
  v.winners_after = std::move(after);
  v.group = g;
  v.description = "a voter of group " + std::to_string(g + 1) + " moves the " + spec.name() + "^R outcome from " +
                  detail::names(p, v.winners_before) + " to " + detail::names(p, v.winners_after);
  return v;
}

// Enumerates i-deviations: every ranking with every threshold (or, in the
// unrestricted space, every approval subset) for one voter of each group.
inline SearchResult find_manipulation(const APProfile& p, const RuleSpec& spec, ManipulationMode mode,
                                      const SearchBudget& budget = {}) {
  SearchResult res;
  const std::size_t m = p.num_candidates();
  const auto before = avr_winners(p, spec);
  std::vector<std::size_t> groups;
  for (std::size_t g = 0; g < p.ballots().size(); ++g) {
    if (detail::voter_count(p.ballots()[g]) >= 1) groups.push_back(g);
  }
  const bool unrestricted = budget.space == DeviationSpace::Unrestricted;
  const std::size_t per_ranking = unrestricted ? (std::size_t{1} << m) : m + 1;
  const double space = static_cast<double>(groups.size()) * static_cast<double>(detail::factorial(m)) *
                       static_cast<double>(per_ranking);

  auto ballot_for = [&](const std::vector<Candidate>& ranking, std::size_t k) {
    if (!unrestricted) return APBallot::with_threshold(ranking, k, Rational(1));
    APBallot b{ranking, {}, Rational(1)};
    for (std::size_t c = 0; c < m; ++c) {
      if (k & (std::size_t{1} << c)) b.approved.push_back(static_cast<Candidate>(c));
    }
    return b;
  };
  auto try_ballot = [&](std::size_t g, const APBallot& deviant) -> bool {
    const auto& sincere = p.ballots()[g];
    if (deviant.ranking == sincere.ranking && deviant.approved == sincere.approved) return false;
    APProfile q = detail::replace_one_voter(p, g, deviant);
    auto after = avr_winners(q, spec);
    ++res.evaluated;
    if (!detail::manipulation_succeeds(sincere, before, after, mode)) return false;
    Violation v;
    v.axiom = mode == ManipulationMode::Strong ? Axiom::StrongStrategyProofness : Axiom::WeakStrategyProofness;
    v.rule = spec;
    v.before = p;
    v.after = std::move(q);
    v.winners_before = before;
    v.winners_after = std::move(after);
    v.group = g;
    v.description = "a voter of group " + std::to_string(g + 1) + " moves the " + spec.name() + "^R outcome from " +
                    detail::names(p, v.winners_before) + " to " + detail::names(p, v.winners_after);
    res.violation = std::move(v);
    res.status = SearchStatus::Found;
    return true;
  };

  if (budget.mode == SearchBudget::Mode::Exhaustive) {
    if (space > static_cast<double>(budget.max_space)) {
      res.status = SearchStatus::Inconclusive;
      res.note = "deviation space exceeds budget";
      return res;
    }
    for (std::size_t g : groups) {
      std::vector<Candidate> ranking(m);
      std::iota(ranking.begin(), ranking.end(), 0);
      do {
        for (std::size_t k = 0; k < per_ranking; ++k) {
          if (try_ballot(g, ballot_for(ranking, k))) return res;
        }
      } while (std::next_permutation(ranking.begin(), ranking.end()));
    }
    res.status = SearchStatus::NotFound;
    return res;
  }
  Rng rng(budget.seed);
  for (std::size_t s = 0; s < budget.samples && !groups.empty(); ++s) {
    std::size_t g = groups[rng.index(groups.size())];
    std::vector<Candidate> ranking(m);
    std::iota(ranking.begin(), ranking.end(), 0);
    rng.shuffle(ranking.begin(), ranking.end());
    if (try_ballot(g, ballot_for(ranking, rng.index(per_ranking)))) return res;
  }
  res.status = SearchStatus::Inconclusive;
  res.note = "sampled search found nothing";
  return res;
}

// Re-executes a witness and confirms both the recorded winner sets and the
// axiom breach itself.
inline bool replay(const Violation& v) {
  switch (v.axiom) {
    case Axiom::FavoriteConsistency: {
      if (!v.approvals || v.subjects.size() != 2) return false;
      auto again = check_favorite_consistency(*v.approvals, v.rule);
      return again && again->subjects == v.subjects;
    }
    case Axiom::ParetoEfficiency: {
      if (!v.before || v.subjects.size() != 2) return false;
      auto winners = avr_winners(*v.before, v.rule);
      return winners == v.winners_before && dominates(*v.before, v.subjects[0], v.subjects[1]) &&
             detail::contains(winners, v.subjects[1]);
    }
    case Axiom::Monotonicity: {
      if (!v.before || !v.after || v.subjects.size() != 1) return false;
      const Candidate a = v.subjects[0];
      auto w0 = avr_winners(*v.before, v.rule);
      auto w1 = avr_winners(*v.after, v.rule);
      return w0 == v.winners_before && w1 == v.winners_after && detail::contains(w0, a) && !detail::contains(w1, a) &&
             is_a_improvement(*v.before, *v.after, a);
    }
    case Axiom::WeakStrategyProofness:
    case Axiom::StrongStrategyProofness: {
      if (!v.before || !v.after || !v.group) return false;
      auto w0 = avr_winners(*v.before, v.rule);
      auto w1 = avr_winners(*v.after, v.rule);
      const auto mode =
          v.axiom == Axiom::StrongStrategyProofness ? ManipulationMode::Strong : ManipulationMode::Weak;
      return w0 == v.winners_before && w1 == v.winners_after &&
             detail::manipulation_succeeds(v.before->ballots()[*v.group], w0, w1, mode);
    }
    case Axiom::CloneProofness:
    case Axiom::WeakCloneProofness: {
      if (!v.before || !v.after || v.subjects.size() != 2) return false;
      const Candidate a = v.subjects[0], clone = v.subjects[1];
      if (!is_cloning_extension(*v.before, *v.after, a)) return false;
      if (v.axiom == Axiom::WeakCloneProofness && !in_weak_clone_domain(*v.before)) return false;
      auto w0 = avr_winners(*v.before, v.rule);
      auto w1 = avr_winners(*v.after, v.rule);
      if (w0 != v.winners_before || w1 != v.winners_after) return false;
      for (Candidate c = 0; c < static_cast<Candidate>(v.before->num_candidates()); ++c) {
        if (c != a && detail::contains(w0, c) != detail::contains(w1, c)) return true;
      }
      return detail::contains(w0, a) != (detail::contains(w1, a) || detail::contains(w1, clone));
    }
  }
  return false;
}

// n unit-weight voters with uniformly random rankings and thresholds.
inline APProfile random_ap_profile(Rng& rng, std::size_t m, std::size_t n) {
  std::vector<APBallot> ballots;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Candidate> ranking(m);
    std::iota(ranking.begin(), ranking.end(), 0);
    rng.shuffle(ranking.begin(), ranking.end());
    ballots.push_back(APBallot::with_threshold(std::move(ranking), rng.index(m + 1), Rational(1)));
  }
  return APProfile(m, std::move(ballots));
}

}  // namespace avr
