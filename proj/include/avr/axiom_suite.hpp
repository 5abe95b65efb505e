#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avr/axioms.hpp"
#include "avr/io.hpp"

namespace avr {

// Identical (ranking, approval) ballots merged into one group; order of
// first appearance kept.
inline APProfile merged(const APProfile& p) {
  std::vector<APBallot> out;
  for (const auto& b : p.ballots()) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const APBallot& x) { return x.ranking == b.ranking && x.approved == b.approved; });
    if (it == out.end()) {
      out.push_back(b);
    } else {
      it->weight += b.weight;
    }
  }
  return APProfile(p.num_candidates(), std::move(out), p.labels(), Consistency::NotRequired);
}

inline APProfile relabeled(const APProfile& p, std::vector<std::string> labels) {
  return APProfile(p.num_candidates(), p.ballots(), std::move(labels), Consistency::NotRequired);
}

namespace fixtures {

// Compact notation with "A" standing for the clone a'.
inline APProfile clone_notation(std::string_view chars, std::string_view text) {
  std::vector<std::string> names;
  for (char c : chars) names.push_back(c == 'A' ? "a'" : std::string(1, c));
  return relabeled(parse_compact(chars, text), std::move(names));
}

// b dominates c; CCAV-type rules still let c through. k > 3 dummy voters.
inline APProfile pareto_cc(int k = 4) {
  return parse_compact("abc", "abc|, ab|c, a|bc, " + std::to_string(k) + "*|bca");
}

// Smallest dummy count making EnePhr with quota fraction beta behave like
// S-CCAV on pareto_cc. None for beta = 0 (no discount at all).
inline std::optional<int> enephr_pareto_k(const Rational& beta) {
  if (beta.sign() <= 0) return std::nullopt;
  // beta (k + 3) >= 3  <=>  k >= 3 (1/beta - 1)
  Rational need = Rational(3) * (Rational(1) / beta - Rational(1));
  std::int64_t k = need.num() / need.den();
  if (Rational(k) < need) ++k;
  return static_cast<int>(std::max<std::int64_t>(4, k));
}

inline APProfile strategy_sp() { return parse_compact("abc", "ca|b, c|ab, b|ca, 10*abc|"); }
inline APProfile strategy_sp_deviation() {
  return parse_compact("abc", "a|cb, c|ab, b|ca, 10*abc|");
}

inline APProfile mono() { return parse_compact("abc", "a|bc, a|bc, b|ca, c|ba, 10*cab|"); }
inline APProfile mono_improved() { return parse_compact("abc", "a|bc, a|bc, ba|c, c|ba, 10*cab|"); }

inline APProfile clone_base() { return parse_compact("ab", "a|b, ba|, ba|"); }
inline APProfile clone_extended() { return clone_notation("abA", "aA|b, baA|, baA|"); }
inline APProfile clone_dominated() { return clone_notation("abA", "aA|b, Aba|, Aba|"); }

inline APProfile weak_clone() { return parse_compact("ab", "a|b, a|b, b|a, 10*ba|"); }
inline APProfile weak_clone_extended() { return clone_notation("abA", "aA|b, aA|b, b|aA, 10*baA|"); }
// Family used against EnePhr; k = 20 by default.
inline APProfile weak_clone_k(int k = 20) {
  return parse_compact("ab", "b|a, " + std::to_string(k) + "*a|b, " + std::to_string(k) + "*ba|");
}

}  // namespace fixtures

// One computationally decidable statement from a proof.
struct Claim {
  std::string source;  // e.g. "pareto-vs-sp"
  std::string profile;
  std::string statement;
  bool holds = false;
};

namespace detail {

inline std::string winners_text(const APProfile& p, const std::vector<Candidate>& w) { return names(p, w); }

inline std::vector<CandidatePair> finalists(const APProfile& p, const RuleSpec& spec) {
  return evaluate(p.approval_profile(), spec).pairs;
}

inline bool contains_pair(const std::vector<CandidatePair>& pairs, CandidatePair p) {
  return std::binary_search(pairs.begin(), pairs.end(), p);
}

inline std::vector<CandidatePair> pairs_of(std::initializer_list<std::pair<Candidate, Candidate>> xs) {
  std::vector<CandidatePair> out;
  for (auto [a, b] : xs) out.push_back(CandidatePair::of(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Replays the stored witness profiles of the axiom results and checks every
// claim about them that a computation can decide.
inline std::vector<Claim> regression_suite() {
  std::vector<Claim> out;
  auto claim = [&](std::string src, std::string prof, std::string what, bool ok) {
    out.push_back({std::move(src), std::move(prof), std::move(what), ok});
  };
  constexpr Candidate a = 0, b = 1, c = 2;
  const std::vector<Candidate> only_a{a}, only_b{b}, only_c{c};

  // Pareto efficiency.
  {
    const auto p = fixtures::pareto_cc(4);
    claim("pareto-rules", "P_cc", "b dominates c", dominates(p, b, c));
    claim("pareto-rules", "P_cc", "maj(a,c) = {c}", majority_winners(p, a, c) == only_c);
    for (const auto& spec : {RuleSpec::ccav(), RuleSpec::sccav()}) {
      claim("pareto-rules", "P_cc", spec.name() + " finalists = {a,b},{a,c}",
            detail::finalists(p, spec) == detail::pairs_of({{a, b}, {a, c}}));
      auto v = pareto_violations(p, spec);
      claim("pareto-rules", "P_cc", spec.name() + "^R elects the dominated c",
            !v.empty() && v.front().subjects == std::vector<Candidate>{b, c} && replay(v.front()));
    }
    claim("pareto-rules", "P_cc", "triv^R elects the dominated c", !pareto_violations(p, RuleSpec::triv()).empty());
    for (const auto& spec :
         {RuleSpec::mav(), RuleSpec::pav(), RuleSpec::spav(), RuleSpec::sphr(), RuleSpec::sav(), RuleSpec::ccav_plus()}) {
      claim("pareto-rules", "P_cc", spec.name() + "^R respects domination", pareto_violations(p, spec).empty());
    }
    for (const Rational beta : {Rational(1, 3), Rational(1, 2), Rational(1, 4), Rational(1)}) {
      const int k = *fixtures::enephr_pareto_k(beta);
      const auto pk = fixtures::pareto_cc(k);
      const auto spec = RuleSpec::enephr(Quota::fraction(beta));
      const auto outcome = evaluate(pk.approval_profile(), spec);
      const auto* stage = outcome.stage_for(a);
      claim("pareto-rules", "P_cc(k=" + std::to_string(k) + ")",
            spec.name() + " discount reaches 1", stage && stage->effective_alpha == Rational(1));
      claim("pareto-rules", "P_cc(k=" + std::to_string(k) + ")", spec.name() + "^R elects the dominated c",
            !pareto_violations(pk, spec).empty());
    }
  }

  // Weak strategy-proofness versus Pareto.
  {
    const auto p = parse_compact("abc", "a|bc, a|bc, c|ab, 10*abc|");
    claim("pareto-vs-sp", "P", "a dominates b", dominates(p, a, b));
    claim("pareto-vs-sp", "P", "maj(b,c) = {b}", majority_winners(p, b, c) == only_b);
    const auto p1 = parse_compact("abc", "a|cb, a|cb, c|ab, 10*cba|");
    claim("pareto-vs-sp", "P'", "c dominates b", dominates(p1, c, b));
    claim("pareto-vs-sp", "P'", "maj(a,b) = {b}", majority_winners(p1, a, b) == only_b);
    claim("pareto-vs-sp", "P'", "same approval ballots as P",
          serialize_approval_profile(merged(p).approval_profile()) ==
              serialize_approval_profile(merged(p1).approval_profile()));
    const auto p2 = parse_compact("abc", "ab|c, a|bc, c|ab, 10*abc|");
    claim("pareto-vs-sp", "P''", "a dominates b", dominates(p2, a, b));
    claim("pareto-vs-sp", "P''", "maj(b,c) = {b}", majority_winners(p2, b, c) == only_b);
    const auto bar = parse_compact("abc", "a|bc, a|bc, c|ab, 10*cab|");
    const auto bar2 = parse_compact("abc", "ab|c, a|bc, c|ab, 10*cab|");
    claim("pareto-vs-sp", "P-bar", "maj(a,c) = {c}", majority_winners(bar, a, c) == only_c);
    claim("pareto-vs-sp", "P-bar''", "is a voter-1 deviation of P-bar",
          detail::replace_one_voter(bar, 0, bar2.ballots()[0]).ballots().size() == 4 &&
              merged(detail::replace_one_voter(bar, 0, bar2.ballots()[0])) == merged(bar2));
    const auto star = parse_compact("abc", "ab|c, a|bc, bc|a, 10*bca|");
    claim("pareto-vs-sp", "P*", "b dominates c", dominates(star, b, c));
    claim("pareto-vs-sp", "P*", "maj(a,c) = {c}", majority_winners(star, a, c) == only_c);
    const auto hat = parse_compact("abc", "10*acb|, ab|c, a|bc, c|ba");
    const auto hat_star = parse_compact("abc", "ab|c, a|bc, cb|a, 10*acb|");
    claim("pareto-vs-sp", "P-hat", "maj(a,c) = {a}", majority_winners(hat, a, c) == only_a);
    claim("pareto-vs-sp", "P-hat*", "maj(b,c) = {c}", majority_winners(hat_star, b, c) == only_c);
    const auto breve_star = parse_compact("abc", "ab|c, a|bc, cb|a, 10*cab|");
    const auto breve = parse_compact("abc", "ab|c, a|bc, c|ba, 10*cab|");
    claim("pareto-vs-sp", "P-breve*", "maj(a,b) = {a}", majority_winners(breve_star, a, b) == only_a);
    claim("pareto-vs-sp", "P-breve", "maj(a,c) = {c}", majority_winners(breve, a, c) == only_c);
    claim("pareto-vs-sp", "P-breve", "is a voter-3 deviation of P-breve*",
          merged(detail::replace_one_voter(breve_star, 2, breve.ballots()[2])) == merged(breve));
    // The closing step is a manipulation for any rule returning {a,b} on
    // V* and {a,c} on V: voter 3 approves c only and makes c win.
    claim("pareto-vs-sp", "P-breve*", "voter 3 approves no winner of maj(a,b)", !breve_star.ballots()[2].approves(a));
  }

  // Strategy-proofness of CCAV-type rules.
  {
    const auto p = fixtures::strategy_sp();
    const auto q = fixtures::strategy_sp_deviation();
    for (const auto& spec : {RuleSpec::ccav(), RuleSpec::sccav()}) {
      claim("sp-rules", "P_sp", spec.name() + " finalists = {b,c}",
            detail::finalists(p, spec) == detail::pairs_of({{b, c}}));
      claim("sp-rules", "P_sp", spec.name() + "^R = {b}", avr_winners(p, spec) == only_b);
      claim("sp-rules", "P_sp'", spec.name() + " returns every pair",
            detail::finalists(q, spec) == detail::pairs_of({{a, b}, {a, c}, {b, c}}));
      auto dev = check_deviation(p, 0, q.ballots()[0], spec, ManipulationMode::Weak);
      claim("sp-rules", "P_sp -> P_sp'", spec.name() + "^R manipulated by voter 1",
            dev && detail::contains(dev->winners_after, a) && replay(*dev));
    }
    claim("sp-rules", "P_sp'", "maj(a,b) = {a}", majority_winners(q, a, b) == only_a);
    claim("sp-rules", "P_sp", "triv^R admits no weak manipulation",
          find_manipulation(p, RuleSpec::triv(), ManipulationMode::Weak).status == SearchStatus::NotFound);
  }

  // Monotonicity.
  {
    const auto p = fixtures::mono();
    const auto q = fixtures::mono_improved();
    claim("monotonic-rules", "P_mono'", "is an a-improvement of P_mono", is_a_improvement(p, q, a));
    for (const auto& spec : {RuleSpec::ccav(), RuleSpec::pav(), RuleSpec::sccav(), RuleSpec::spav(), RuleSpec::enephr(),
                             RuleSpec::sphr(), RuleSpec::sav()}) {
      claim("monotonic-rules", "P_mono", spec.name() + " finalists = {a,b},{a,c}",
            detail::finalists(p, spec) == detail::pairs_of({{a, b}, {a, c}}));
      claim("monotonic-rules", "P_mono", spec.name() + "^R = {a,c}", avr_winners(p, spec) == std::vector<Candidate>{a, c});
      claim("monotonic-rules", "P_mono'", spec.name() + " finalists = {a,c}",
            detail::finalists(q, spec) == detail::pairs_of({{a, c}}));
      claim("monotonic-rules", "P_mono'", spec.name() + "^R = {c}", avr_winners(q, spec) == only_c);
    }
    for (const auto& spec : {RuleSpec::mav(), RuleSpec::triv()}) {
      claim("monotonic-rules", "P_mono", spec.name() + "^R survives every a-improvement",
            find_monotonicity_violation(p, spec).status == SearchStatus::NotFound);
    }
  }

  // Clone-proofness.
  {
    const auto p = fixtures::clone_base();
    const auto q = fixtures::clone_extended();
    const Candidate clone = 2;
    claim("clone-rules", "P_cl'", "is an a-cloning extension of P_cl", is_cloning_extension(p, q, a));
    claim("clone-rules", "P_cl", "mav^R = {b}", avr_winners(p, RuleSpec::mav()) == only_b);
    claim("clone-rules", "P_cl'", "mav^R = {a}", avr_winners(q, RuleSpec::mav()) == only_a);
    claim("clone-rules", "P_cl'", "maj(a,a') = {a}", majority_winners(q, a, clone) == only_a);
    for (const auto& spec : {RuleSpec::ccav(), RuleSpec::sccav()}) {
      claim("clone-rules", "P_cl", spec.name() + "^R = {b}", avr_winners(p, spec) == only_b);
      auto ccav_pairs = detail::finalists(q, spec);
      claim("clone-rules", "P_cl'", spec.name() + " finalists = {a,b},{a',b},{a,a'}",
            ccav_pairs == detail::pairs_of({{a, b}, {b, clone}, {a, clone}}));
      claim("clone-rules", "P_cl'", spec.name() + "^R contains a",
            detail::contains(avr_winners(q, spec), a));
    }
    claim("clone-rules", "P_cl", "clone search finds the mav^R violation",
          find_clone_violation(p, a, RuleSpec::mav()).status == SearchStatus::Found);
    claim("clone-rules", "P_cl", "2-av^R survives every a-cloning",
          find_clone_violation(p, a, RuleSpec::two_av()).status == SearchStatus::NotFound);

    const auto star = fixtures::clone_dominated();
    claim("clone-vs-pareto", "P*", "a' dominates b", dominates(star, clone, b));
    claim("clone-vs-pareto", "P*", "same approval ballots as P_cl'",
          serialize_approval_profile(merged(star).approval_profile()) ==
              serialize_approval_profile(merged(q).approval_profile()));
  }

  // Monotonicity versus weak clone-proofness.
  {
    const auto p = parse_compact("abc", "a|bc, b|ca, c|ab, 10*cab|");
    const auto p1 = parse_compact("abc", "a|bc, ba|c, c|ab, 10*cab|");
    claim("monotonic-vs-weak-clone", "P'", "is an a-improvement of P", is_a_improvement(p, p1, a));
    claim("monotonic-vs-weak-clone", "P'", "maj(a,c) = {c}", majority_winners(p1, a, c) == only_c);
    const auto p2 = parse_compact("abc", "a|bc, ba|c, c|ab, 10*cba|");
    claim("monotonic-vs-weak-clone", "P''", "same approval ballots as P'",
          serialize_approval_profile(p1.approval_profile()) == serialize_approval_profile(p2.approval_profile()));
    // Only voter 1 may change in a b-improvement, so voter 2 keeps ba|c.
    const auto star = parse_compact("abc", "ab|c, ba|c, c|ab, 10*cba|");
    claim("monotonic-vs-weak-clone", "P*", "is a b-improvement of P''", is_a_improvement(p2, star, b));
    claim("monotonic-vs-weak-clone", "P*", "maj(b,c) = {c}", majority_winners(star, b, c) == only_c);
    const auto hat = parse_compact("ac", "a|c, a|c, c|a, 10*ca|");
    const auto hat_star = parse_compact("acb", "ab|c, ab|c, c|ab, 10*cba|");
    claim("monotonic-vs-weak-clone", "P-hat", "mav^R = {c}", avr_winners(hat, RuleSpec::mav()) == std::vector<Candidate>{1});
    claim("monotonic-vs-weak-clone", "P-hat", "lies in the weak clone domain", in_weak_clone_domain(hat));
    claim("monotonic-vs-weak-clone", "P-hat*", "is an a-cloning extension of P-hat", is_cloning_extension(hat, hat_star, 0));
  }

  // Weak clone-proofness.
  {
    const auto p = fixtures::weak_clone();
    const auto q = fixtures::weak_clone_extended();
    const Candidate clone = 2;
    claim("weak-clone-rules", "P_wk", "lies in the weak clone domain", in_weak_clone_domain(p));
    claim("weak-clone-rules", "P_wk'", "is an a-cloning extension of P_wk", is_cloning_extension(p, q, a));
    for (const auto& spec : {RuleSpec::mav(), RuleSpec::pav(), RuleSpec::spav(), RuleSpec::sphr(), RuleSpec::sav()}) {
      claim("weak-clone-rules", "P_wk", spec.name() + "^R = {b}", avr_winners(p, spec) == only_b);
      claim("weak-clone-rules", "P_wk'", spec.name() + " returns {a,a'}",
            detail::contains_pair(detail::finalists(q, spec), CandidatePair::of(a, clone)));
      claim("weak-clone-rules", "P_wk'", spec.name() + "^R contains a", detail::contains(avr_winners(q, spec), a));
    }
    const auto pk = fixtures::weak_clone_k(20);
    claim("weak-clone-rules", "P_k(k=20)", "lies in the weak clone domain", in_weak_clone_domain(pk));
    auto ene = find_clone_violation(pk, a, RuleSpec::enephr(), {}, true);
    claim("weak-clone-rules", "P_k(k=20)", "enephr^R is not weakly clone-proof",
          ene.status == SearchStatus::Found && replay(*ene.violation));
    for (const auto& spec : {RuleSpec::ccav(), RuleSpec::sccav(), RuleSpec::ccav_plus()}) {
      claim("weak-clone-rules", "P_wk", spec.name() + "^R survives every cloning",
            find_any_clone_violation(p, spec, {}, true).status == SearchStatus::NotFound);
    }
  }
  return out;
}

// Expected cell of the rule/property table; nullopt when the table says
// nothing about the pair.
inline std::optional<bool> expected_property(const RuleSpec& rule, Axiom axiom) {
  const std::string n = rule.kind == RuleKind::EnestromPhragmen ? "enephr" : rule.name();
  auto is = [&](std::initializer_list<const char*> names) {
    return std::any_of(names.begin(), names.end(), [&](const char* x) { return n == x; });
  };
  switch (axiom) {
    case Axiom::ParetoEfficiency:
      if (is({"mav", "spav", "sphr", "pav", "sav", "ccav+"})) return true;
      if (is({"sccav", "ccav", "triv", "enephr"})) return false;
      return std::nullopt;
    case Axiom::Monotonicity:
      if (is({"mav", "triv"})) return true;
      if (is({"spav", "sphr", "enephr", "sccav", "pav", "ccav", "sav"})) return false;
      return std::nullopt;
    case Axiom::WeakStrategyProofness:
      if (is({"triv"})) return true;
      if (is({"mav", "spav", "sphr", "enephr", "sccav", "pav", "ccav", "sav"})) return false;
      return std::nullopt;
    case Axiom::StrongStrategyProofness:
      if (is({"triv"})) return true;
      return std::nullopt;
    case Axiom::WeakCloneProofness:
      if (is({"sccav", "ccav", "ccav+", "2av"})) return true;
      if (is({"mav", "spav", "sphr", "enephr", "pav", "sav", "triv"})) return false;
      return std::nullopt;
    case Axiom::CloneProofness:
      if (is({"2av"})) return true;
      if (is({"mav", "ccav", "sccav"})) return false;
      return std::nullopt;
    case Axiom::FavoriteConsistency:
      if (is({"mav", "spav", "sccav", "sphr", "enephr"}) || rule.kind == RuleKind::AlphaSeqAV) return true;
      if (is({"pav", "ccav", "sav", "triv"})) return false;
      return std::nullopt;
  }
  return std::nullopt;
}

inline std::vector<RuleSpec> grid_rules() {
  return {RuleSpec::mav(), RuleSpec::spav(),  RuleSpec::sphr(), RuleSpec::enephr(), RuleSpec::sccav(),
          RuleSpec::pav(), RuleSpec::ccav(),  RuleSpec::sav(),  RuleSpec::triv()};
}

inline std::vector<Axiom> grid_axioms() {
  return {Axiom::ParetoEfficiency, Axiom::Monotonicity, Axiom::WeakStrategyProofness, Axiom::WeakCloneProofness};
}

struct GridOptions {
  std::size_t samples = 500;       // profiles per checked cell
  std::uint64_t seed = 20240101;
  std::size_t min_m = 2, max_m = 5;
  std::size_t min_n = 1, max_n = 8;
  std::size_t search_cap = 20000;  // profiles tried when hunting a counterexample
  DeviationSpace space = DeviationSpace::Consistent;
};

struct CellReport {
  RuleSpec rule;
  Axiom axiom = Axiom::ParetoEfficiency;
  std::optional<bool> expected;
  std::size_t profiles = 0;       // profiles actually checked
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  std::size_t out_of_domain = 0;  // skipped: outside the axiom's domain
  std::optional<Violation> witness;
  std::string witness_source;     // fixture name or "search"
  double seconds = 0.0;
  bool passed = false;

  [[nodiscard]] std::string verdict() const {
    if (!expected) return "n/a";
    if (*expected) return violations ? "VIOLATED" : (inconclusive ? "INCONCLUSIVE" : "holds");
    return witness ? "counterexample" : "NO-COUNTEREXAMPLE";
  }
};

namespace detail {

// Every candidate has the same supporter set; α-AV with α = 2 then scores
// every pair 0.
inline bool approval_degenerate(const APProfile& p) {
  const auto v = p.approval_profile();
  const auto j = joint_score_matrix(v);
  for (std::size_t x = 0; x < j.size(); ++x) {
    for (std::size_t y = x + 1; y < j.size(); ++y) {
      if (j[x][x] != j[x][y] || j[y][y] != j[x][y]) return false;
    }
  }
  return true;
}

// One check of `axiom` on `p`. Pareto needs no search.
inline SearchResult check_axiom(const APProfile& p, const RuleSpec& rule, Axiom axiom, const SearchBudget& budget) {
  switch (axiom) {
    case Axiom::ParetoEfficiency: {
      SearchResult r;
      auto v = pareto_violations(p, rule);
      r.evaluated = 1;
      r.status = v.empty() ? SearchStatus::NotFound : SearchStatus::Found;
      if (!v.empty()) r.violation = std::move(v.front());
      return r;
    }
    case Axiom::Monotonicity: return find_monotonicity_violation(p, rule, budget);
    case Axiom::WeakStrategyProofness: return find_manipulation(p, rule, ManipulationMode::Weak, budget);
    case Axiom::StrongStrategyProofness: return find_manipulation(p, rule, ManipulationMode::Strong, budget);
    case Axiom::CloneProofness: return find_any_clone_violation(p, rule, budget, false);
    case Axiom::WeakCloneProofness: return find_any_clone_violation(p, rule, budget, true);
    case Axiom::FavoriteConsistency: {
      SearchResult r;
      auto v = check_favorite_consistency(p.approval_profile(), rule);
      r.evaluated = 1;
      r.status = v ? SearchStatus::Found : SearchStatus::NotFound;
      r.violation = std::move(v);
      return r;
    }
  }
  return {};
}

inline APProfile random_grid_profile(Rng& rng, const GridOptions& opt) {
  const std::size_t m = opt.min_m + rng.index(opt.max_m - opt.min_m + 1);
  const std::size_t n = opt.min_n + rng.index(opt.max_n - opt.min_n + 1);
  return merged(random_ap_profile(rng, m, n));
}

// Stored profiles tried first when a counterexample is expected.
inline std::vector<std::pair<std::string, APProfile>> stored_fixtures(const RuleSpec& rule, Axiom axiom) {
  std::vector<std::pair<std::string, APProfile>> out;
  switch (axiom) {
    case Axiom::ParetoEfficiency:
      if (rule.kind == RuleKind::EnestromPhragmen && rule.quota.kind == Quota::Kind::Fraction) {
        if (auto k = fixtures::enephr_pareto_k(rule.quota.value)) {
          out.emplace_back("P_cc(k=" + std::to_string(*k) + ")", fixtures::pareto_cc(*k));
        }
      }
      out.emplace_back("P_cc", fixtures::pareto_cc(4));
      break;
    case Axiom::Monotonicity: out.emplace_back("P_mono", fixtures::mono()); break;
    case Axiom::WeakStrategyProofness:
    case Axiom::StrongStrategyProofness: out.emplace_back("P_sp", fixtures::strategy_sp()); break;
    case Axiom::CloneProofness: out.emplace_back("P_cl", fixtures::clone_base()); [[fallthrough]];
    case Axiom::WeakCloneProofness:
      out.emplace_back("P_wk", fixtures::weak_clone());
      out.emplace_back("P_k(k=20)", fixtures::weak_clone_k(20));
      break;
    case Axiom::FavoriteConsistency: break;
  }
  return out;
}

}  // namespace detail

using ProfileFilter = std::function<bool(const APProfile&)>;

// Checked cell: `samples` random in-domain profiles, each searched
// exhaustively. Profiles rejected by `filter` or outside the axiom's domain
// are redrawn and counted in out_of_domain.
inline CellReport run_property_suite(const RuleSpec& rule, Axiom axiom, const GridOptions& opt,
                                     const ProfileFilter& filter = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  CellReport rep;
  rep.rule = rule;
  rep.axiom = axiom;
  rep.expected = true;
  Rng rng(derive_seed(opt.seed, std::hash<std::string>{}(rule.name()) ^ static_cast<std::uint64_t>(axiom)));
  SearchBudget budget = SearchBudget::exhaustive();
  budget.space = opt.space;
  std::size_t draws = 0;
  while (rep.profiles < opt.samples && draws < opt.samples * 50) {
    ++draws;
    APProfile p = detail::random_grid_profile(rng, opt);
    if (filter && !filter(p)) {
      ++rep.out_of_domain;
      continue;
    }
    auto r = detail::check_axiom(p, rule, axiom, budget);
    if (r.status == SearchStatus::OutOfDomain) {
      ++rep.out_of_domain;
      continue;
    }
    ++rep.profiles;
    if (r.status == SearchStatus::Found) {
      ++rep.violations;
      if (!rep.witness) {
        rep.witness = std::move(r.violation);
        rep.witness_source = "search";
      }
    } else if (r.status == SearchStatus::Inconclusive) {
      ++rep.inconclusive;
    }
  }
  rep.passed = rep.profiles == opt.samples && rep.violations == 0 && rep.inconclusive == 0;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Unchecked cell: a stored fixture first, then random search.
inline CellReport find_counterexample(const RuleSpec& rule, Axiom axiom, const GridOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  CellReport rep;
  rep.rule = rule;
  rep.axiom = axiom;
  rep.expected = false;
  SearchBudget budget = SearchBudget::exhaustive();
  budget.space = opt.space;
  for (const auto& [name, p] : detail::stored_fixtures(rule, axiom)) {
    auto r = detail::check_axiom(p, rule, axiom, budget);
    ++rep.profiles;
    if (r.status == SearchStatus::Found) {
      rep.witness = std::move(r.violation);
      rep.witness_source = name;
      break;
    }
  }
  Rng rng(derive_seed(opt.seed, std::hash<std::string>{}(rule.name()) ^ (static_cast<std::uint64_t>(axiom) << 8)));
  for (std::size_t i = 0; !rep.witness && i < opt.search_cap; ++i) {
    APProfile p = detail::random_grid_profile(rng, opt);
    auto r = detail::check_axiom(p, rule, axiom, budget);
    ++rep.profiles;
    if (r.status == SearchStatus::Found) {
      rep.witness = std::move(r.violation);
      rep.witness_source = "search";
    }
  }
  rep.violations = rep.witness ? 1 : 0;
  rep.passed = rep.witness && replay(*rep.witness);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline CellReport run_cell(const RuleSpec& rule, Axiom axiom, const GridOptions& opt) {
  auto expected = expected_property(rule, axiom);
  if (!expected) {
    CellReport rep;
    rep.rule = rule;
    rep.axiom = axiom;
    rep.passed = true;
    return rep;
  }
  if (*expected) {
    ProfileFilter filter;
    if (axiom == Axiom::CloneProofness && rule.kind == RuleKind::AlphaAV && rule.alpha == Rational(2)) {
      filter = [](const APProfile& p) { return !detail::approval_degenerate(p); };
    }
    return run_property_suite(rule, axiom, opt, filter);
  }
  return find_counterexample(rule, axiom, opt);
}

inline std::vector<CellReport> run_axiom_grid(const GridOptions& opt = {},
                                              const std::vector<RuleSpec>& rules = grid_rules(),
                                              const std::vector<Axiom>& axioms = grid_axioms()) {
  std::vector<CellReport> out;
  for (Axiom ax : axioms) {
    for (const auto& rule : rules) out.push_back(run_cell(rule, ax, opt));
  }
  return out;
}

// Rule/property pairs the impossibility table lists as compatible.
inline std::vector<std::pair<RuleSpec, std::vector<Axiom>>> compatible_pairs() {
  return {
      {RuleSpec::mav(), {Axiom::ParetoEfficiency, Axiom::Monotonicity}},
      {RuleSpec::triv(), {Axiom::WeakStrategyProofness, Axiom::Monotonicity}},
      {RuleSpec::ccav_plus(), {Axiom::ParetoEfficiency, Axiom::WeakCloneProofness}},
      {RuleSpec::two_av(), {Axiom::CloneProofness, Axiom::WeakCloneProofness}},
  };
}

inline std::string grid_text(const std::vector<CellReport>& cells) {
  std::string s;
  for (const auto& c : cells) {
    s += std::string(axiom_name(c.axiom)) + "\t" + c.rule.name() + "\t" + c.verdict() + "\tprofiles=" +
         std::to_string(c.profiles) + "\tviolations=" + std::to_string(c.violations) +
         "\tinconclusive=" + std::to_string(c.inconclusive) + "\tskipped=" + std::to_string(c.out_of_domain);
    if (c.witness) s += "\twitness=" + c.witness_source + ": " + c.witness->description;
    s += "\n";
  }
  return s;
}

}  // namespace avr
