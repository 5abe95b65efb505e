#include <gtest/gtest.h>

#include "avr/axiom_suite.hpp"
#include "avr/io.hpp"

using namespace avr;
namespace fx = avr::fixtures;

namespace {

constexpr Candidate a = 0, b = 1, c = 2;
using Cs = std::vector<Candidate>;

std::vector<RuleSpec> nonmonotonic_rules() {
  return {RuleSpec::pav(), RuleSpec::ccav(), RuleSpec::spav(), RuleSpec::sccav(),
          RuleSpec::enephr(), RuleSpec::sphr(), RuleSpec::sav()};
}

}  // namespace

TEST(RegressionSuite, EveryClaimHolds) {
  const auto claims = regression_suite();
  EXPECT_GT(claims.size(), 100u);
  for (const auto& cl : claims) {
    EXPECT_TRUE(cl.holds) << cl.source << " | " << cl.profile << " | " << cl.statement;
  }
}

TEST(FavoriteConsistency, SequentialRulesNeverViolate) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto p = random_ap_profile(rng, 2 + rng.index(4), 1 + rng.index(8));
    for (auto r : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
      ASSERT_FALSE(check_favorite_consistency(p.approval_profile(), RuleSpec::alpha_seq_av(r)));
    }
  }
}

TEST(FavoriteConsistency, CCAVOnEx1) {
  auto v = parse_compact_approvals("abcd", "2*a, 6*ab, 4*abc, 4*cd, 1*d");
  EXPECT_FALSE(check_favorite_consistency(v, RuleSpec::ccav()));
}

TEST(FavoriteConsistency, RandomSearchFindsCCAVViolation) {
  Rng rng(5);
  std::optional<Violation> hit;
  for (int i = 0; i < 5000 && !hit; ++i) {
    auto p = random_ap_profile(rng, 2 + rng.index(4), 1 + rng.index(8));
    hit = check_favorite_consistency(p.approval_profile(), RuleSpec::ccav());
  }
  ASSERT_TRUE(hit);
  EXPECT_TRUE(replay(*hit));
}

TEST(Pareto, CCAVOnWitnessProfile) {
  auto vs = pareto_violations(fx::pareto_cc(4), RuleSpec::ccav());
  ASSERT_FALSE(vs.empty());
  EXPECT_EQ(vs.front().subjects, (Cs{b, c}));
  EXPECT_TRUE(replay(vs.front()));
}

TEST(Pareto, EnePhrWithLargeQuotaBehavesLikeSCCAV) {
  // Q = 7/2 >= S(a) = 3: discount 1.
  auto p = fx::pareto_cc(4);
  const auto spec = RuleSpec::enephr(Quota::fraction(Rational(1, 2)));
  EXPECT_EQ(evaluate(p.approval_profile(), spec).pairs, evaluate(p.approval_profile(), RuleSpec::sccav()).pairs);
  EXPECT_FALSE(pareto_violations(p, spec).empty());
}

TEST(Pareto, EnePhrDroopNeedsMoreDummies) {
  EXPECT_EQ(fx::enephr_pareto_k(Rational(1, 3)), std::optional<int>(6));
  EXPECT_EQ(fx::enephr_pareto_k(Rational(1, 2)), std::optional<int>(4));
  EXPECT_EQ(fx::enephr_pareto_k(Rational(0)), std::nullopt);
  EXPECT_FALSE(pareto_violations(fx::pareto_cc(6), RuleSpec::enephr()).empty());
}

TEST(Pareto, MAVHasNoViolationOnWitnessProfile) { EXPECT_TRUE(pareto_violations(fx::pareto_cc(4), RuleSpec::mav()).empty()); }

TEST(Monotonicity, WitnessProfileIsAnImprovement) {
  EXPECT_TRUE(is_a_improvement(fx::mono(), fx::mono_improved(), a));
  EXPECT_FALSE(is_a_improvement(fx::mono(), fx::mono_improved(), b));
  EXPECT_FALSE(is_a_improvement(fx::mono(), fx::mono(), a));
}

TEST(Monotonicity, WitnessProfileBreaksSevenRules) {
  for (const auto& spec : nonmonotonic_rules()) {
    EXPECT_EQ(avr_winners(fx::mono(), spec), (Cs{a, c})) << spec.name();
    EXPECT_EQ(avr_winners(fx::mono_improved(), spec), Cs{c}) << spec.name();
    auto r = find_monotonicity_violation(fx::mono(), spec);
    ASSERT_EQ(r.status, SearchStatus::Found) << spec.name();
    EXPECT_TRUE(replay(*r.violation)) << spec.name();
  }
}

TEST(Monotonicity, MAVAndTRIVHoldOnWitnessProfile) {
  EXPECT_EQ(find_monotonicity_violation(fx::mono(), RuleSpec::mav()).status, SearchStatus::NotFound);
  EXPECT_EQ(find_monotonicity_violation(fx::mono(), RuleSpec::triv()).status, SearchStatus::NotFound);
}

TEST(CloneProofness, ExtensionMatchesFixture) {
  auto ext = cloning_extension(fx::clone_base(), a, {0, 0, 0});
  EXPECT_EQ(ext, fx::clone_extended());
  EXPECT_TRUE(is_cloning_extension(fx::clone_base(), fx::clone_extended(), a));
  // Same approvals as the extension, but b sits between a and its clone.
  EXPECT_FALSE(is_cloning_extension(fx::clone_base(), fx::clone_dominated(), a));
  EXPECT_FALSE(is_cloning_extension(fx::clone_base(), fx::clone_extended(), b));
}

// Every candidate has the same supporters, so 2-AV scores every pair 0 and
// a clone enters the finalist set. The grid skips exactly these profiles.
TEST(CloneProofness, TwoAVBreaksOnlyOnDegenerateProfiles) {
  const auto unanimous = parse_compact("abc", "3*abc|");
  EXPECT_TRUE(avr::detail::approval_degenerate(unanimous));
  EXPECT_EQ(find_clone_violation(unanimous, c, RuleSpec::two_av()).status, SearchStatus::Found);
  EXPECT_FALSE(avr::detail::approval_degenerate(fx::clone_base()));
  EXPECT_EQ(find_clone_violation(fx::clone_base(), a, RuleSpec::two_av()).status, SearchStatus::NotFound);
}

TEST(CloneProofness, MAVFlips) {
  EXPECT_EQ(avr_winners(fx::clone_base(), RuleSpec::mav()), Cs{b});
  EXPECT_EQ(avr_winners(fx::clone_extended(), RuleSpec::mav()), Cs{a});
  auto r = find_clone_violation(fx::clone_base(), a, RuleSpec::mav());
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_TRUE(replay(*r.violation));
}

TEST(CloneProofness, WeakFixtureBreaksFiveRules) {
  EXPECT_TRUE(in_weak_clone_domain(fx::weak_clone()));
  for (const auto& spec : {RuleSpec::mav(), RuleSpec::pav(), RuleSpec::spav(), RuleSpec::sphr(), RuleSpec::sav()}) {
    auto r = find_any_clone_violation(fx::weak_clone(), spec, {}, true);
    ASSERT_EQ(r.status, SearchStatus::Found) << spec.name();
    EXPECT_TRUE(replay(*r.violation)) << spec.name();
  }
}

TEST(CloneProofness, EnePhrWeakFixture) {
  auto r = find_any_clone_violation(fx::weak_clone_k(20), RuleSpec::enephr(), {}, true);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_TRUE(replay(*r.violation));
}

TEST(CloneProofness, CCAVHoldsOnWeakFixture) {
  for (const auto& spec : {RuleSpec::ccav(), RuleSpec::sccav()}) {
    EXPECT_EQ(find_any_clone_violation(fx::weak_clone(), spec, {}, true).status, SearchStatus::NotFound);
  }
}

TEST(CloneProofness, WeakDomain) {
  // a is approved by every non-empty ballot.
  auto p = parse_compact("ab", "a|b, ab|, |ab");
  EXPECT_FALSE(in_weak_clone_domain(p));
  EXPECT_EQ(find_clone_violation(p, b, RuleSpec::ccav(), {}, true).status, SearchStatus::OutOfDomain);
}

TEST(StrategyProofness, CCAVManipulation) {
  const auto dev = APBallot::with_threshold({a, c, b}, 1);
  for (const auto& spec : {RuleSpec::ccav(), RuleSpec::sccav()}) {
    auto v = check_deviation(fx::strategy_sp(), 0, dev, spec, ManipulationMode::Weak);
    ASSERT_TRUE(v) << spec.name();
    EXPECT_TRUE(replay(*v));
    EXPECT_EQ(avr_winners(fx::strategy_sp_deviation(), spec), v->winners_after);
    auto found = find_manipulation(fx::strategy_sp(), spec, ManipulationMode::Weak);
    EXPECT_EQ(found.status, SearchStatus::Found);
  }
}

TEST(StrategyProofness, TRIVHasNoManipulation) {
  for (auto mode : {ManipulationMode::Weak, ManipulationMode::Strong}) {
    EXPECT_EQ(find_manipulation(fx::strategy_sp(), RuleSpec::triv(), mode).status, SearchStatus::NotFound);
  }
}

TEST(StrategyProofness, SingleVoterCannotGainStrongly) {
  // m = 3, n = 1: every ranking and threshold, every rule.
  std::vector<Candidate> r{0, 1, 2};
  do {
    for (std::size_t t = 0; t <= 3; ++t) {
      APProfile p(3, {APBallot::with_threshold(r, t)});
      for (const auto& spec : grid_rules()) {
        EXPECT_EQ(find_manipulation(p, spec, ManipulationMode::Strong).status, SearchStatus::NotFound) << spec.name();
      }
    }
  } while (std::next_permutation(r.begin(), r.end()));
}

TEST(StrategyProofness, SampledSearchIsInconclusiveWhenNothingFound) {
  auto r = find_manipulation(fx::strategy_sp(), RuleSpec::triv(), ManipulationMode::Weak, SearchBudget::sampled(20, 1));
  EXPECT_EQ(r.status, SearchStatus::Inconclusive);
}

TEST(Search, OversizedExhaustiveSpaceIsInconclusive) {
  auto r = find_manipulation(fx::strategy_sp(), RuleSpec::ccav(), ManipulationMode::Weak, SearchBudget::exhaustive(5));
  EXPECT_EQ(r.status, SearchStatus::Inconclusive);
}

TEST(ExpectedProperties, CompatiblePairsHold) {
  for (const auto& [rule, axioms] : compatible_pairs()) {
    for (auto ax : axioms) EXPECT_EQ(expected_property(rule, ax), std::optional<bool>(true)) << rule.name();
  }
}

TEST(Grid, SmallRunMatchesExpectations) {
  GridOptions opt;
  opt.samples = 40;
  auto cells = run_axiom_grid(opt, grid_rules(), grid_axioms());
  EXPECT_EQ(cells.size(), grid_rules().size() * grid_axioms().size());
  for (const auto& cell : cells) {
    EXPECT_TRUE(cell.passed) << cell.rule.name() << " " << axiom_name(cell.axiom) << " " << cell.verdict();
    if (cell.witness) {
      EXPECT_TRUE(replay(*cell.witness));
    }
  }
}
