#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "avr/error.hpp"
#include "avr/profile.hpp"
#include "avr/rational.hpp"

namespace avr {

// Survey reweighting. Every ballot group names the candidate its voters
// reported voting for; groups are rescaled so that reported-vote shares
// match the official shares, then the total weight is restored.
struct DebiasSpec {
  std::vector<std::optional<Candidate>> reported_vote;  // indexed like the profile's ballots
  std::map<Candidate, Rational> target_shares;
};

// Reported-vote share of each candidate in the sample.
template <typename Profile>
std::map<Candidate, Rational> sample_shares(const Profile& p, const DebiasSpec& spec) {
  if (spec.reported_vote.size() != p.ballots().size()) {
    throw InputError("reported votes must cover every ballot group");
  }
  if (p.total_weight().sign() <= 0) throw InputError("cannot debias a profile of zero total weight");
  std::map<Candidate, Rational> shares;
  for (std::size_t i = 0; i < p.ballots().size(); ++i) {
    const auto& rep = spec.reported_vote[i];
    if (!rep) throw InputError("ballot group " + std::to_string(i + 1) + " has no reported vote");
    detail::check_candidate(p.num_candidates(), *rep);
    shares[*rep] += p.ballots()[i].weight;
  }
  for (auto& [c, s] : shares) s /= p.total_weight();
  return shares;
}

// Multiplier target / sample for every reported candidate.
template <typename Profile>
std::map<Candidate, Rational> debias_factors(const Profile& p, const DebiasSpec& spec) {
  Rational target_sum;
  for (const auto& [c, t] : spec.target_shares) {
    detail::check_candidate(p.num_candidates(), c);
    if (t.sign() < 0) throw InputError("target shares must be nonnegative");
    target_sum += t;
  }
  if (target_sum > Rational(1)) throw InputError("target shares sum to more than 1");
  std::map<Candidate, Rational> factors;
  for (const auto& [c, s] : sample_shares(p, spec)) {
    auto it = spec.target_shares.find(c);
    if (it == spec.target_shares.end()) {
      throw InputError("reported candidate " + p.label(c) + " has no target share");
    }
    if (s.is_zero()) throw InputError("reported candidate " + p.label(c) + " has zero sample share");
    factors[c] = it->second / s;
  }
  return factors;
}

// Returns a copy of `p` with reweighted groups; total weight is preserved.
template <typename Profile>
Profile debias(const Profile& p, const DebiasSpec& spec) {
  auto factors = debias_factors(p, spec);
  auto ballots = p.ballots();
  Rational reweighted_total;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    ballots[i].weight *= factors.at(*spec.reported_vote[i]);
    reweighted_total += ballots[i].weight;
  }
  if (reweighted_total.is_zero()) throw InputError("debiasing leaves no positive weight");
  const Rational scale = p.total_weight() / reweighted_total;
  for (auto& b : ballots) b.weight *= scale;
  if constexpr (std::is_same_v<Profile, APProfile>) {
    return APProfile(p.num_candidates(), std::move(ballots), p.labels(), Consistency::NotRequired);
  } else {
    return Profile(p.num_candidates(), std::move(ballots), p.labels());
  }
}

// Targets file: one "label share" pair per line, '#' comments allowed.
inline std::map<Candidate, Rational> parse_target_shares(std::string_view text,
                                                          const std::vector<std::string>& labels) {
  std::map<Candidate, Rational> out;
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> tok;
    std::string cur;
    for (char c : line) {
      if (c == ' ' || c == '\t' || c == '\r') {
        if (!cur.empty()) tok.push_back(cur), cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tok.push_back(cur);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw InputError("line " + std::to_string(line_no) + ": expected '<label> <share>'");
    auto it = std::find(labels.begin(), labels.end(), tok[0]);
    if (it == labels.end()) throw InputError("line " + std::to_string(line_no) + ": unknown candidate '" + tok[0] + "'");
    out[static_cast<Candidate>(it - labels.begin())] = Rational::parse(tok[1]);
  }
  return out;
}

}  // namespace avr
