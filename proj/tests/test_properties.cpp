#include <gtest/gtest.h>

#include <numeric>

#include "avr/axiom_suite.hpp"

using namespace avr;

namespace {

std::vector<RuleSpec> all_rules() {
  auto r = grid_rules();
  r.push_back(RuleSpec::ccav_plus());
  r.push_back(RuleSpec::two_av());
  r.push_back(RuleSpec::enephr(Quota::hare()));
  return r;
}

APProfile with_ballots(const APProfile& p, std::vector<APBallot> bs) {
  return APProfile(p.num_candidates(), std::move(bs), p.labels(), Consistency::NotRequired);
}

// Candidate c becomes perm[c].
APProfile permuted(const APProfile& p, const std::vector<Candidate>& perm) {
  std::vector<APBallot> bs;
  for (const auto& b : p.ballots()) {
    APBallot q;
    for (Candidate c : b.ranking) q.ranking.push_back(perm[static_cast<std::size_t>(c)]);
    for (Candidate c : b.approved) q.approved.push_back(perm[static_cast<std::size_t>(c)]);
    std::sort(q.approved.begin(), q.approved.end());
    q.weight = b.weight;
    bs.push_back(q);
  }
  return with_ballots(p, std::move(bs));
}

std::vector<CandidatePair> mapped(const std::vector<CandidatePair>& ps, const std::vector<Candidate>& perm) {
  std::vector<CandidatePair> out;
  for (const auto& pr : ps) {
    out.push_back(CandidatePair::of(perm[static_cast<std::size_t>(pr.lo)], perm[static_cast<std::size_t>(pr.hi)]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<APProfile> random_profiles(std::uint64_t seed, int count, std::size_t max_m = 5, std::size_t max_n = 8) {
  Rng rng(seed);
  std::vector<APProfile> out;
  for (int i = 0; i < count; ++i) out.push_back(random_ap_profile(rng, 2 + rng.index(max_m - 1), 1 + rng.index(max_n)));
  return out;
}

// Every voter as its own unit ballot.
std::vector<APBallot> voters_of(const APProfile& p) {
  std::vector<APBallot> out;
  for (const auto& b : p.ballots()) {
    for (std::int64_t k = 0; k < b.weight.num() / b.weight.den(); ++k) out.push_back({b.ranking, b.approved, 1});
  }
  return out;
}

bool has(const std::vector<Candidate>& w, Candidate c) { return std::find(w.begin(), w.end(), c) != w.end(); }

// Every consistent ballot over m candidates.
std::vector<APBallot> all_consistent_ballots(std::size_t m) {
  std::vector<APBallot> out;
  std::vector<Candidate> r(m);
  std::iota(r.begin(), r.end(), 0);
  do {
    for (std::size_t t = 0; t <= m; ++t) out.push_back(APBallot::with_threshold(r, t));
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

// Definition check written from scratch: one voter moves a up without
// reordering the others and may start approving a.
bool improves(const APBallot& from, const APBallot& to, Candidate a) {
  if (from == to) return false;
  auto drop = [&](const std::vector<Candidate>& r) {
    std::vector<Candidate> x;
    for (Candidate c : r) {
      if (c != a) x.push_back(c);
    }
    return x;
  };
  if (drop(from.ranking) != drop(to.ranking)) return false;
  if (to.position(a) > from.position(a)) return false;
  auto plus_a = from.approved;
  if (!from.approves(a)) plus_a.push_back(a), std::sort(plus_a.begin(), plus_a.end());
  return to.approved == from.approved || to.approved == plus_a;
}

}  // namespace

TEST(Properties, Homogeneity) {
  for (const auto& p : random_profiles(101, 150)) {
    std::vector<APBallot> bs = p.ballots();
    for (auto& b : bs) b.weight *= Rational(3);
    auto q = with_ballots(p, bs);
    for (const auto& spec : all_rules()) {
      ASSERT_EQ(evaluate(p.approval_profile(), spec).pairs, evaluate(q.approval_profile(), spec).pairs) << spec.name();
      ASSERT_EQ(avr_winners(p, spec), avr_winners(q, spec)) << spec.name();
    }
  }
}

TEST(Properties, Anonymity) {
  Rng rng(7);
  for (const auto& p : random_profiles(102, 150)) {
    auto bs = p.ballots();
    rng.shuffle(bs.begin(), bs.end());
    auto q = with_ballots(p, bs);
    for (const auto& spec : all_rules()) {
      ASSERT_EQ(avr_winners(p, spec), avr_winners(q, spec)) << spec.name();
    }
  }
}

TEST(Properties, Neutrality) {
  Rng rng(8);
  for (const auto& p : random_profiles(103, 150)) {
    std::vector<Candidate> perm(p.num_candidates());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm.begin(), perm.end());
    auto q = permuted(p, perm);
    for (const auto& spec : all_rules()) {
      ASSERT_EQ(mapped(evaluate(p.approval_profile(), spec).pairs, perm), evaluate(q.approval_profile(), spec).pairs)
          << spec.name();
    }
  }
}

TEST(Properties, CondorcetLoserMatchesBruteForce) {
  for (const auto& p : random_profiles(104, 500)) {
    const auto m = static_cast<Candidate>(p.num_candidates());
    std::optional<Candidate> loser;
    for (Candidate x = 0; x < m; ++x) {
      bool all = true;
      for (Candidate y = 0; y < m; ++y) {
        if (y == x) continue;
        int above = 0, below = 0;
        for (const auto& v : voters_of(p)) (v.position(x) < v.position(y) ? above : below)++;
        all = all && below > above;
      }
      if (all) loser = x;
    }
    ASSERT_EQ(condorcet_loser(p), loser);
  }
}

TEST(Properties, FinalistsAreSortedAndNonEmpty) {
  for (const auto& p : random_profiles(105, 200)) {
    for (const auto& spec : all_rules()) {
      auto out = evaluate(p.approval_profile(), spec);
      ASSERT_FALSE(out.pairs.empty());
      ASSERT_TRUE(std::is_sorted(out.pairs.begin(), out.pairs.end()));
    }
  }
}

TEST(Properties, TrivCharacterization) {
  for (const auto& p : random_profiles(106, 400)) {
    std::vector<Candidate> expect;
    auto loser = condorcet_loser(p);
    for (Candidate c = 0; c < static_cast<Candidate>(p.num_candidates()); ++c) {
      if (!loser || *loser != c) expect.push_back(c);
    }
    ASSERT_EQ(avr_winners(p, RuleSpec::triv()), expect);
  }
}

TEST(Properties, ParetoAgreesWithDefinition) {
  for (const auto& p : random_profiles(107, 200)) {
    for (const auto& spec : all_rules()) {
      auto w = avr_winners(p, spec);
      bool violated = false;
      for (Candidate x = 0; x < static_cast<Candidate>(p.num_candidates()); ++x) {
        for (Candidate y : w) {
          if (x == y) continue;
          bool all_prefer = true, separating = false;
          for (const auto& v : voters_of(p)) {
            all_prefer = all_prefer && v.position(x) < v.position(y);
            separating = separating || (v.approves(x) && !v.approves(y));
          }
          violated = violated || (all_prefer && separating);
        }
      }
      ASSERT_EQ(violated, !pareto_violations(p, spec).empty()) << spec.name();
    }
  }
}

// Search soundness: on tiny profiles the searches agree with a direct
// enumeration over unit voters and every consistent ballot.
class SearchSoundness : public ::testing::Test {
 protected:
  std::vector<APProfile> profiles = random_profiles(108, 60, 3, 4);
};

TEST_F(SearchSoundness, Manipulation) {
  for (const auto& p : profiles) {
    const auto voters = voters_of(p);
    const auto ballots = all_consistent_ballots(p.num_candidates());
    for (const auto& spec : all_rules()) {
      const auto before = avr_winners(p, spec);
      bool weak = false, strong = false;
      for (std::size_t i = 0; i < voters.size(); ++i) {
        for (const auto& dev : ballots) {
          auto vs = voters;
          vs[i] = dev;
          auto after = avr_winners(with_ballots(p, vs), spec);
          const auto& me = voters[i];
          bool approved_before = false, approved_after = false;
          for (Candidate w : before) approved_before = approved_before || me.approves(w);
          for (Candidate w : after) approved_after = approved_after || me.approves(w);
          weak = weak || (!approved_before && approved_after);
          for (Candidate x : after) {
            bool beats_all = true;
            for (Candidate y : before) beats_all = beats_all && me.position(x) < me.position(y);
            strong = strong || beats_all;
          }
        }
      }
      auto rw = find_manipulation(p, spec, ManipulationMode::Weak);
      auto rs = find_manipulation(p, spec, ManipulationMode::Strong);
      ASSERT_EQ(rw.status, weak ? SearchStatus::Found : SearchStatus::NotFound) << spec.name();
      ASSERT_EQ(rs.status, strong ? SearchStatus::Found : SearchStatus::NotFound) << spec.name();
      if (rw.violation) {
        ASSERT_TRUE(replay(*rw.violation));
      }
      if (rs.violation) {
        ASSERT_TRUE(replay(*rs.violation));
      }
    }
  }
}

TEST_F(SearchSoundness, Monotonicity) {
  for (const auto& p : profiles) {
    const auto voters = voters_of(p);
    const auto ballots = all_consistent_ballots(p.num_candidates());
    for (const auto& spec : all_rules()) {
      const auto before = avr_winners(p, spec);
      bool found = false;
      for (Candidate a : before) {
        for (std::size_t i = 0; i < voters.size() && !found; ++i) {
          for (const auto& to : ballots) {
            if (!improves(voters[i], to, a)) continue;
            auto vs = voters;
            vs[i] = to;
            if (!has(avr_winners(with_ballots(p, vs), spec), a)) {
              found = true;
              break;
            }
          }
        }
      }
      auto r = find_monotonicity_violation(p, spec);
      ASSERT_EQ(r.status, found ? SearchStatus::Found : SearchStatus::NotFound) << spec.name();
      if (r.violation) {
        ASSERT_TRUE(replay(*r.violation));
      }
    }
  }
}

TEST_F(SearchSoundness, Cloning) {
  for (const auto& p : profiles) {
    const auto voters = voters_of(p);
    const std::size_t m = p.num_candidates(), n = voters.size();
    for (const auto& spec : all_rules()) {
      const auto before = avr_winners(p, spec);
      for (Candidate a = 0; a < static_cast<Candidate>(m); ++a) {
        bool found = false;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n) && !found; ++mask) {
          std::vector<APBallot> ext;
          const auto clone = static_cast<Candidate>(m);
          for (std::size_t i = 0; i < n; ++i) {
            APBallot e;
            for (Candidate c : voters[i].ranking) {
              if (c != a) {
                e.ranking.push_back(c);
              } else if (mask >> i & 1) {
                e.ranking.insert(e.ranking.end(), {clone, a});
              } else {
                e.ranking.insert(e.ranking.end(), {a, clone});
              }
            }
            e.approved = voters[i].approved;
            if (voters[i].approves(a)) e.approved.push_back(clone);
            ext.push_back(e);
          }
          auto labels = p.labels();
          labels.push_back("clone");
          auto after = avr_winners(APProfile(m + 1, ext, labels), spec);
          for (Candidate c = 0; c < static_cast<Candidate>(m); ++c) {
            if (c != a && has(before, c) != has(after, c)) found = true;
          }
          if (has(before, a) != (has(after, a) || has(after, clone))) found = true;
        }
        auto r = find_clone_violation(p, a, spec);
        ASSERT_EQ(r.status, found ? SearchStatus::Found : SearchStatus::NotFound) << spec.name();
        if (r.violation) {
          ASSERT_TRUE(replay(*r.violation));
        }
      }
    }
  }
}
