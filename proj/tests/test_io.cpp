#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "avr/affinity.hpp"
#include "avr/debias.hpp"
#include "avr/io.hpp"
#include "avr/rules.hpp"

using namespace avr;

namespace {

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(AVR_SOURCE_DIR) + "/" + rel, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kEx2 =
    "candidate 0 a\ncandidate 1 b\ncandidate 2 c\ncandidate 3 d\n"
    "2 * a | b c d\n3 * b a | d c\n3 * a b | d c\n4 * b a c | d\n2 * c d | b a\n2 * d c | b a\n1 * d | b a c\n";

ApprovalProfile v1() { return parse_compact_approvals("abcd", "2*a, 6*ab, 4*abc, 4*cd, 1*d"); }

}  // namespace

TEST(Parse, Ex2) {
  auto f = parse_profile(kEx2);
  ASSERT_TRUE(f.ranked);
  EXPECT_EQ(f.ranked->total_weight(), Rational(17));
  EXPECT_EQ(*f.ranked, parse_compact("abcd", "2*a|bcd, 3*ba|dc, 3*ab|dc, 4*bac|d, 2*cd|ba, 2*dc|ba, 1*d|bac"));
  EXPECT_EQ(f.labels, (std::vector<std::string>{"a", "b", "c", "d"}));
}

TEST(Parse, DataFilesMatchFixtures) {
  auto ex1 = parse_profile(slurp("data/ex1.txt"));
  EXPECT_FALSE(ex1.ranked);
  EXPECT_EQ(serialize_approval_profile(ex1.approvals), serialize_approval_profile(v1()));
  EXPECT_THROW((void)ex1.require_ranked(), InputError);
  auto ex2 = parse_profile(slurp("data/ex2.txt"));
  EXPECT_EQ(ex2.require_ranked(), *parse_profile(kEx2).ranked);
}

TEST(Parse, Errors) {
  const std::string head = "candidate 0 a\ncandidate 1 b\n";
  auto fails_with = [&](const std::string& body, const std::string& needle) {
    try {
      parse_profile(head + body);
    } catch (const InputError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  EXPECT_TRUE(fails_with("2 * a a | b\n", "line 3: duplicate candidate"));
  EXPECT_TRUE(fails_with("1 * a | z\n", "line 3: unknown candidate 'z'"));
  EXPECT_TRUE(fails_with("x * a | b\n", "line 3: bad weight"));
  EXPECT_TRUE(fails_with("1 * a |\n", "ranking must list every candidate"));
  EXPECT_TRUE(fails_with("1 * a | b | \n", "more than one"));
  EXPECT_TRUE(fails_with("1 * a | b\n1 * a\n", "mixes"));
  EXPECT_TRUE(fails_with("-1 * a | b\n", "negative"));
  EXPECT_THROW(parse_profile("candidate 0 a\ncandidate 2 b\n"), InputError);
  EXPECT_THROW(parse_profile("candidate 0 a\ncandidate 1 a\n"), InputError);
  EXPECT_THROW(parse_profile("# nothing\n"), InputError);
}

TEST(Parse, WeightsAndComments) {
  auto f = parse_profile("candidate 0 a\ncandidate 1 b\n17/24 * b | a  # fraction\n0.5 * | a b\na | b\n");
  const auto& bs = f.ranked->ballots();
  EXPECT_EQ(bs[0].weight, Rational(17, 24));
  EXPECT_EQ(bs[1].weight, Rational(1, 2));
  EXPECT_TRUE(bs[1].approved.empty());
  EXPECT_EQ(bs[2].weight, Rational(1));
}

TEST(Serialize, CanonicalForm) {
  auto p = parse_compact("abc", "17/24*|bca, a|bc, a|bc");
  EXPECT_EQ(serialize_profile(p), "candidate 0 a\ncandidate 1 b\ncandidate 2 c\n2 * a | b c\n17/24 * | b c a\n");
}

TEST(Serialize, RoundTrip) {
  auto p = *parse_profile(kEx2).ranked;
  const auto text = serialize_profile(p);
  auto again = parse_profile(text);
  EXPECT_EQ(serialize_profile(*again.ranked), text);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4 + 7);
  const auto vt = serialize_approval_profile(v1());
  EXPECT_EQ(serialize_approval_profile(parse_profile(vt).approvals), vt);
}

TEST(Serialize, ProfileFileKeepsReportedVotes) {
  auto f = parse_profile(slurp("data/survey_synthetic.txt"));
  auto text = serialize_profile_file(f);
  EXPECT_NE(text.find("12 * JLM BH @ JLM"), std::string::npos);
  EXPECT_EQ(serialize_profile_file(parse_profile(text)), text);
}

TEST(Debias, SurveyFactor) {
  auto f = parse_profile(slurp("data/survey_synthetic.txt"));
  DebiasSpec spec{f.reported, parse_target_shares(slurp("data/survey_targets.txt"), f.labels)};
  auto shares = sample_shares(f.approvals, spec);
  EXPECT_EQ(shares.at(0), Rational(35, 100));
  auto factors = debias_factors(f.approvals, spec);
  EXPECT_EQ(factors.at(0), Rational(14, 25));
  auto d = debias(f.approvals, spec);
  EXPECT_EQ(d.total_weight(), f.approvals.total_weight());
  for (const auto& b : d.ballots()) EXPECT_GE(b.weight.sign(), 0);
}

TEST(Debias, IdentityTargets) {
  auto f = parse_profile(slurp("data/survey_synthetic.txt"));
  DebiasSpec spec{f.reported, {}};
  spec.target_shares = sample_shares(f.approvals, spec);
  auto d = debias(f.approvals, spec);
  for (std::size_t i = 0; i < d.ballots().size(); ++i) EXPECT_EQ(d.ballots()[i].weight, f.approvals.ballots()[i].weight);
}

TEST(Debias, ThreeToOneSplit) {
  auto v = parse_compact_approvals("ab", "3*a, 1*b");
  DebiasSpec spec{{Candidate{0}, Candidate{1}}, {{0, Rational(1, 2)}, {1, Rational(1, 2)}}};
  auto f = debias_factors(v, spec);
  EXPECT_EQ(f.at(0), Rational(2, 3));
  EXPECT_EQ(f.at(1), Rational(2));
  auto d = debias(v, spec);
  EXPECT_EQ(d.ballots()[0].weight, Rational(2));
  EXPECT_EQ(d.ballots()[1].weight, Rational(2));
}

TEST(Debias, Errors) {
  auto v = parse_compact_approvals("ab", "3*a, 1*b");
  EXPECT_THROW(debias(v, DebiasSpec{{Candidate{0}, std::nullopt}, {{0, 1}}}), InputError);
  EXPECT_THROW(debias(v, DebiasSpec{{Candidate{0}, Candidate{1}}, {{0, 1}}}), InputError);
  EXPECT_THROW(debias(v, DebiasSpec{{Candidate{0}}, {{0, 1}}}), InputError);
  EXPECT_THROW(debias(v, DebiasSpec{{Candidate{0}, Candidate{1}}, {{0, Rational(3, 4)}, {1, Rational(1, 2)}}}),
               InputError);
  EXPECT_THROW(parse_target_shares("JLM 0.2\n", {"a", "b"}), InputError);
  EXPECT_THROW(parse_target_shares("a 0.2 0.3\n", {"a", "b"}), InputError);
}

TEST(Affinity, Ex1) {
  auto g = jaccard_affinity(v1());
  ASSERT_EQ(g.edges.size(), 6u);
  std::map<std::pair<Candidate, Candidate>, Rational> j;
  for (const auto& e : g.edges) j[{e.pair.lo, e.pair.hi}] = e.jaccard;
  EXPECT_EQ(j.at({0, 1}), Rational(10, 12));
  EXPECT_EQ(j.at({0, 2}), Rational(1, 4));
  EXPECT_EQ(j.at({0, 3}), Rational(0));
  EXPECT_EQ(j.at({1, 2}), Rational(4, 14));
  EXPECT_EQ(j.at({1, 3}), Rational(0));
  EXPECT_EQ(j.at({2, 3}), Rational(4, 9));
}

TEST(Affinity, FullOverlapAndUndefined) {
  // c and d are never approved, so {c,d} has no edge.
  auto g = jaccard_affinity(parse_compact_approvals("abcd", "ab, ab"));
  ASSERT_EQ(g.edges.size(), 5u);
  EXPECT_EQ(g.edges[0].pair, CandidatePair::of(0, 1));
  EXPECT_EQ(g.edges[0].jaccard, Rational(1));
  for (const auto& e : g.edges) EXPECT_FALSE(e.pair == CandidatePair::of(2, 3));
}

TEST(Network, ThresholdFiltering) {
  auto g = jaccard_affinity(v1());
  auto dot = export_network(g, Rational(1, 10), NetworkFormat::Dot);
  EXPECT_NE(dot.find("\"a\" -- \"b\" [jaccard=\"5/6\""), std::string::npos);
  EXPECT_NE(dot.find("\"a\" -- \"c\""), std::string::npos);
  EXPECT_NE(dot.find("\"c\" -- \"d\""), std::string::npos);
  EXPECT_NE(dot.find("\"b\" -- \"c\""), std::string::npos);
  EXPECT_EQ(dot.find("\"a\" -- \"d\""), std::string::npos);
  EXPECT_EQ(dot.find("\"b\" -- \"d\""), std::string::npos);
  EXPECT_EQ(export_network(g, Rational(1), NetworkFormat::Dot).find("--"), std::string::npos);
  EXPECT_THROW(export_network(g, Rational(2), NetworkFormat::Dot), InputError);
}

TEST(Network, JsonAndDotAgree) {
  auto g = jaccard_affinity(v1());
  auto json = nlohmann::json::parse(export_network(g, Rational(1, 10), NetworkFormat::Json));
  auto dot = export_network(g, Rational(1, 10), NetworkFormat::Dot);
  EXPECT_EQ(json["edges"].size(), static_cast<std::size_t>(std::count(dot.begin(), dot.end(), '-') / 2));
  EXPECT_EQ(json["nodes"].size(), 4u);
  EXPECT_EQ(export_network(g, Rational(1, 10), NetworkFormat::Json),
            export_network(jaccard_affinity(v1()), Rational(1, 10), NetworkFormat::Json));
}

TEST(Survey, EveryRuleRunsAfterDebiasing) {
  auto f = parse_profile(slurp("data/survey_synthetic.txt"));
  DebiasSpec spec{f.reported, parse_target_shares(slurp("data/survey_targets.txt"), f.labels)};
  auto d = debias(f.approvals, spec);
  for (const char* r : {"mav", "ccav", "sccav", "pav", "spav", "sphr", "sav", "enephr", "triv"}) {
    auto out = evaluate(d, parse_rule(r));
    EXPECT_FALSE(out.pairs.empty()) << r;
  }
}
