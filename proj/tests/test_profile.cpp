#include <gtest/gtest.h>

#include "avr/io.hpp"
#include "avr/profile.hpp"

using namespace avr;

namespace {

ApprovalProfile v1() { return parse_compact_approvals("abcd", "2*a, 6*ab, 4*abc, 4*cd, 1*d"); }
APProfile p2() { return parse_compact("abcd", "2*a|bcd, 3*ba|dc, 3*ab|dc, 4*bac|d, 2*cd|ba, 2*dc|ba, 1*d|bac"); }

constexpr Candidate a = 0, b = 1, c = 2, d = 3;

}  // namespace

TEST(ApprovalScore, Ex1) {
  const auto v = v1();
  EXPECT_EQ(approval_score(v, a), Rational(12));
  EXPECT_EQ(approval_score(v, b), Rational(10));
  EXPECT_EQ(approval_score(v, c), Rational(8));
  EXPECT_EQ(approval_score(v, d), Rational(5));
  EXPECT_EQ(approval_scores(v), (std::vector<Rational>{12, 10, 8, 5}));
  EXPECT_EQ(v.total_weight(), Rational(17));
}

TEST(ApprovalScore, UnapprovedCandidateScoresZero) {
  auto v = parse_compact_approvals("abc", "ab, a");
  EXPECT_EQ(approval_score(v, c), Rational(0));
}

TEST(ApprovalScore, UnknownCandidateThrows) { EXPECT_THROW(approval_score(v1(), 7), InputError); }

TEST(JointScore, Ex1) {
  const auto v = v1();
  EXPECT_EQ(joint_score(v, {a, b}), Rational(10));
  EXPECT_EQ(joint_score(v, {a, c}), Rational(4));
  EXPECT_EQ(joint_score(v, {a, d}), Rational(0));
  EXPECT_EQ(joint_score(v, {c, d}), Rational(4));
  EXPECT_EQ(joint_score(v, {}), Rational(17));
  const auto j = joint_score_matrix(v);
  EXPECT_EQ(j[0][0], Rational(12));
  EXPECT_EQ(j[1][2], Rational(4));
  EXPECT_EQ(j[2][1], Rational(4));
}

TEST(ApprovalWinners, Ex1) { EXPECT_EQ(approval_winners(v1()), std::vector<Candidate>{a}); }

TEST(ApprovalWinners, SymmetricTie) {
  EXPECT_EQ(approval_winners(parse_compact_approvals("ab", "a, b")), (std::vector<Candidate>{a, b}));
}

TEST(ApprovalWinners, AllEmptyBallots) {
  EXPECT_EQ(approval_winners(parse_compact_approvals("abc", "-, -")), (std::vector<Candidate>{a, b, c}));
}

TEST(Majority, Ex2) {
  const auto p = p2();
  EXPECT_EQ(p.total_weight(), Rational(17));
  EXPECT_EQ(majority_winners(p, a, b), std::vector<Candidate>{b});
  EXPECT_EQ(majority_winners(p, a, c), std::vector<Candidate>{a});
  EXPECT_EQ(majority_winners(p, a, d), std::vector<Candidate>{a});
}

TEST(Majority, TieKeepsBoth) {
  auto p = parse_compact("ab", "a|b, b|a");
  EXPECT_EQ(majority_winners(p, a, b), (std::vector<Candidate>{a, b}));
  EXPECT_THROW(majority_winners(p, a, a), InputError);
}

TEST(Dominates, WitnessProfile) {
  auto p = parse_compact("abc", "abc|, ab|c, a|bc, 4*|bca");
  EXPECT_TRUE(dominates(p, b, c));
  EXPECT_FALSE(dominates(p, c, b));
}

TEST(Dominates, NeedsUnanimousPreference) {
  auto p = parse_compact("ab", "ab|, ba|");
  EXPECT_FALSE(dominates(p, a, b));
}

TEST(Dominates, NeedsSeparatingBallot) {
  // Everyone ranks a over b but approves both or neither.
  auto p = parse_compact("ab", "ab|, |ab");
  EXPECT_FALSE(dominates(p, a, b));
}

// c loses to a and b 4-13 and to d 8-9.
TEST(CondorcetLoser, Ex2) { EXPECT_EQ(condorcet_loser(p2()), std::optional<Candidate>(c)); }

TEST(CondorcetLoser, PerfectTie) { EXPECT_EQ(condorcet_loser(parse_compact("ab", "a|b, b|a")), std::nullopt); }

TEST(CondorcetLoser, SingleBallot) { EXPECT_EQ(condorcet_loser(parse_compact("abc", "a|bc")), std::optional<Candidate>(c)); }

TEST(Validate, Ex2IsConsistent) {
  EXPECT_TRUE(validate(p2(), true).empty());
  EXPECT_TRUE(p2().is_consistent());
}

TEST(Validate, DuplicateInRanking) {
  std::vector<APBallot> bs{APBallot{{0, 0, 1}, {0}, 1}};
  EXPECT_FALSE(validate(3, bs, false).empty());
  EXPECT_THROW(APProfile(3, bs, {}, Consistency::NotRequired), InputError);
}

TEST(Validate, InconsistentBallot) {
  // Approves c while ranking it below unapproved b.
  std::vector<APBallot> bs{APBallot{{0, 1, 2}, {0, 2}, 1}};
  EXPECT_TRUE(validate(3, bs, false).empty());
  EXPECT_FALSE(validate(3, bs, true).empty());
  EXPECT_THROW(APProfile(3, bs), InputError);
  APProfile ok(3, bs, {}, Consistency::NotRequired);
  EXPECT_FALSE(ok.is_consistent());
}

TEST(Validate, IncompleteRanking) {
  std::vector<APBallot> bs{APBallot{{0, 1}, {0}, 1}};
  EXPECT_FALSE(validate(3, bs, false).empty());
}

TEST(Profile, ApprovalProjection) {
  const auto v = p2().approval_profile();
  EXPECT_EQ(approval_scores(v), (std::vector<Rational>{12, 10, 8, 5}));
}

TEST(Profile, NegativeWeightRejected) {
  EXPECT_THROW(ApprovalProfile(2, {ApprovalBallot{{0}, Rational(-1)}}), InputError);
}

TEST(Profile, DuplicateLabelsRejected) {
  EXPECT_THROW(ApprovalProfile(2, {}, {"x", "x"}), InputError);
}

TEST(APBallot, ThresholdAndPreference) {
  auto bal = APBallot::with_threshold({2, 0, 1}, 2);
  EXPECT_EQ(bal.approved, (std::vector<Candidate>{0, 2}));
  EXPECT_EQ(bal.threshold(), std::optional<std::size_t>(2));
  EXPECT_TRUE(bal.prefers(2, 1));
  EXPECT_FALSE(bal.prefers(1, 2));
  EXPECT_FALSE(bal.prefers(0, 0));
  EXPECT_THROW(APBallot::with_threshold({0, 1}, 3), InputError);
}
