#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "avr/profile.hpp"
#include "avr/rules.hpp"

namespace avr {

// Approval with runoff: the committee rule picks finalist pairs from the
// approval projection, then every pair goes to a majority vote.
struct RunoffResult {
  std::vector<Candidate> winners;  // sorted union of the per-pair majority winners
  RuleOutcome finalist_pairs;
  std::map<CandidatePair, std::vector<Candidate>> per_pair_majority;

  [[nodiscard]] bool wins(Candidate c) const { return std::binary_search(winners.begin(), winners.end(), c); }
};

// Majority ties inside a pair contribute both members. Ballot consistency
// is not required of `p`.
inline RunoffResult avr(const APProfile& p, const RuleSpec& spec) {
  RunoffResult out;
  out.finalist_pairs = evaluate(p.approval_profile(), spec);
  for (const auto& pair : out.finalist_pairs.pairs) {
    auto maj = majority_winners(p, pair.lo, pair.hi);
    out.winners.insert(out.winners.end(), maj.begin(), maj.end());
    out.per_pair_majority.emplace(pair, std::move(maj));
  }
  std::sort(out.winners.begin(), out.winners.end());
  out.winners.erase(std::unique(out.winners.begin(), out.winners.end()), out.winners.end());
  return out;
}

// Winner set only; skips materializing the per-pair map.
inline std::vector<Candidate> avr_winners(const APProfile& p, const RuleSpec& spec) {
  auto finalists = evaluate(p.approval_profile(), spec);
  std::vector<Candidate> winners;
  for (const auto& pair : finalists.pairs) {
    auto maj = majority_winners(p, pair.lo, pair.hi);
    winners.insert(winners.end(), maj.begin(), maj.end());
  }
  std::sort(winners.begin(), winners.end());
  winners.erase(std::unique(winners.begin(), winners.end()), winners.end());
  return winners;
}

// TRIV^R: every candidate except a Condorcet loser, when there is one.
inline std::vector<Candidate> triv_runoff_winners(const APProfile& p) { return avr_winners(p, RuleSpec::triv()); }

}  // namespace avr
