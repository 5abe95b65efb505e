#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "avr/error.hpp"
#include "avr/rational.hpp"

namespace avr {

// Dense index 0..m-1 into a profile's candidate list.
using Candidate = int;

// Committee of size two, stored in canonical order lo < hi.
struct CandidatePair {
  Candidate lo = 0;
  Candidate hi = 1;

  static CandidatePair of(Candidate a, Candidate b) {
    if (a == b) throw InputError("a candidate pair needs two distinct candidates");
    return a < b ? CandidatePair{a, b} : CandidatePair{b, a};
  }

  [[nodiscard]] bool contains(Candidate c) const noexcept { return c == lo || c == hi; }
  [[nodiscard]] Candidate other(Candidate c) const noexcept { return c == lo ? hi : lo; }

  friend auto operator<=>(const CandidatePair&, const CandidatePair&) = default;
};

// a, b, ..., z, then c26, c27, ...
inline std::vector<std::string> default_labels(std::size_t m) {
  std::vector<std::string> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i));
  }
  return out;
}

namespace detail {

inline void check_labels(std::size_t m, std::vector<std::string>& labels) {
  if (labels.empty()) {
    labels = default_labels(m);
    return;
  }
  if (labels.size() != m) throw InputError("label count does not match candidate count");
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("candidate labels must be unique");
  }
}

inline void check_candidate(std::size_t m, Candidate c) {
  if (c < 0 || static_cast<std::size_t>(c) >= m) {
    throw InputError("unknown candidate id " + std::to_string(c));
  }
}

}  // namespace detail

struct ApprovalBallot {
  std::vector<Candidate> approved;  // sorted, duplicate-free once inside a profile
  Rational weight{1};

  [[nodiscard]] bool approves(Candidate c) const {
    return std::binary_search(approved.begin(), approved.end(), c);
  }
};

// Weighted multiset of approval ballots over m candidates.
class ApprovalProfile {
 public:
  ApprovalProfile(std::size_t m, std::vector<ApprovalBallot> ballots, std::vector<std::string> labels = {})
      : m_(m), ballots_(std::move(ballots)), labels_(std::move(labels)) {
    detail::check_labels(m_, labels_);
    for (auto& b : ballots_) {
      if (b.weight.sign() < 0) throw InputError("ballot weights must be nonnegative");
      std::sort(b.approved.begin(), b.approved.end());
      if (std::adjacent_find(b.approved.begin(), b.approved.end()) != b.approved.end()) {
        throw InputError("duplicate candidate in approval ballot");
      }
      for (Candidate c : b.approved) detail::check_candidate(m_, c);
      total_ += b.weight;
    }
  }

  [[nodiscard]] std::size_t num_candidates() const noexcept { return m_; }
  [[nodiscard]] const std::vector<ApprovalBallot>& ballots() const noexcept { return ballots_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::string& label(Candidate c) const { return labels_.at(static_cast<std::size_t>(c)); }
  [[nodiscard]] const Rational& total_weight() const noexcept { return total_; }

 private:
  std::size_t m_;
  std::vector<ApprovalBallot> ballots_;
  std::vector<std::string> labels_;
  Rational total_;
};

// Sum of the weights of ballots approving c.
inline Rational approval_score(const ApprovalProfile& v, Candidate c) {
  detail::check_candidate(v.num_candidates(), c);
  Rational s;
  for (const auto& b : v.ballots()) {
    if (b.approves(c)) s += b.weight;
  }
  return s;
}

// All approval scores in one pass over the ballots.
inline std::vector<Rational> approval_scores(const ApprovalProfile& v) {
  std::vector<Rational> s(v.num_candidates());
  for (const auto& b : v.ballots()) {
    for (Candidate c : b.approved) s[static_cast<std::size_t>(c)] += b.weight;
  }
  return s;
}

// Sum of the weights of ballots whose approved set contains all of `set`.
inline Rational joint_score(const ApprovalProfile& v, std::span<const Candidate> set) {
  for (Candidate c : set) detail::check_candidate(v.num_candidates(), c);
  Rational s;
  for (const auto& b : v.ballots()) {
    bool all = std::all_of(set.begin(), set.end(), [&](Candidate c) { return b.approves(c); });
    if (all) s += b.weight;
  }
  return s;
}

inline Rational joint_score(const ApprovalProfile& v, std::initializer_list<Candidate> set) {
  return joint_score(v, std::span<const Candidate>(set.begin(), set.size()));
}

// Row of joint scores S(x y) for every y; entry x holds S(x).
inline std::vector<Rational> joint_scores_with(const ApprovalProfile& v, Candidate x) {
  detail::check_candidate(v.num_candidates(), x);
  std::vector<Rational> row(v.num_candidates());
  for (const auto& b : v.ballots()) {
    if (!b.approves(x)) continue;
    for (Candidate y : b.approved) row[static_cast<std::size_t>(y)] += b.weight;
  }
  return row;
}

// Symmetric m x m matrix of pairwise joint scores; the diagonal holds S(c).
inline std::vector<std::vector<Rational>> joint_score_matrix(const ApprovalProfile& v) {
  const std::size_t m = v.num_candidates();
  std::vector<std::vector<Rational>> j(m, std::vector<Rational>(m));
  for (const auto& b : v.ballots()) {
    for (Candidate x : b.approved) {
      for (Candidate y : b.approved) j[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] += b.weight;
    }
  }
  return j;
}

// Candidates maximizing the approval score, ascending by id.
inline std::vector<Candidate> approval_winners(const ApprovalProfile& v) {
  if (v.num_candidates() == 0) throw InputError("profile has no candidates");
  auto s = approval_scores(v);
  const Rational best = *std::max_element(s.begin(), s.end());
  std::vector<Candidate> out;
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (s[c] == best) out.push_back(static_cast<Candidate>(c));
  }
  return out;
}

// Ranking plus approval set. Under ballot consistency the approved set is
// the top-t prefix of the ranking; inconsistent ballots are representable
// because strategic deviations may produce them.
struct APBallot {
  std::vector<Candidate> ranking;   // best first
  std::vector<Candidate> approved;  // sorted
  Rational weight{1};

  static APBallot with_threshold(std::vector<Candidate> ranking, std::size_t t, Rational weight = 1) {
    if (t > ranking.size()) throw InputError("threshold exceeds ranking length");
    std::vector<Candidate> approved(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(t));
    std::sort(approved.begin(), approved.end());
    return APBallot{std::move(ranking), std::move(approved), weight};
  }

  [[nodiscard]] bool approves(Candidate c) const {
    return std::binary_search(approved.begin(), approved.end(), c);
  }

  [[nodiscard]] std::size_t position(Candidate c) const {
    auto it = std::find(ranking.begin(), ranking.end(), c);
    return static_cast<std::size_t>(it - ranking.begin());
  }

  // True iff a is ranked strictly above b.
  [[nodiscard]] bool prefers(Candidate a, Candidate b) const {
    if (a == b) return false;
    for (Candidate c : ranking) {
      if (c == a) return true;
      if (c == b) return false;
    }
    return false;
  }

  // |approved| when the approved set is exactly the top-|approved| prefix.
  [[nodiscard]] std::optional<std::size_t> threshold() const {
    const std::size_t t = approved.size();
    if (t > ranking.size()) return std::nullopt;
    for (std::size_t i = 0; i < t; ++i) {
      if (!approves(ranking[i])) return std::nullopt;
    }
    return t;
  }

  friend bool operator==(const APBallot&, const APBallot&) = default;
};

enum class Consistency { Required, NotRequired };

// Structural checks always; ballot consistency only when `strict`.
// Returns one human-readable message per problem, empty when valid.
inline std::vector<std::string> validate(std::size_t m, std::span<const APBallot> ballots, bool strict) {
  std::vector<std::string> issues;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const auto& b = ballots[i];
    const std::string where = "ballot " + std::to_string(i + 1) + ": ";
    if (b.weight.sign() < 0) issues.push_back(where + "negative weight");
    std::vector<int> seen(m, 0);
    bool structural_ok = true;
    for (Candidate c : b.ranking) {
      if (c < 0 || static_cast<std::size_t>(c) >= m) {
        issues.push_back(where + "unknown candidate " + std::to_string(c) + " in ranking");
        structural_ok = false;
      } else if (seen[static_cast<std::size_t>(c)]++) {
        issues.push_back(where + "duplicate candidate " + std::to_string(c) + " in ranking");
        structural_ok = false;
      }
    }
    if (structural_ok && b.ranking.size() != m) {
      issues.push_back(where + "ranking does not list every candidate");
      structural_ok = false;
    }
    std::vector<Candidate> approved = b.approved;
    std::sort(approved.begin(), approved.end());
    for (Candidate c : approved) {
      if (c < 0 || static_cast<std::size_t>(c) >= m) {
        issues.push_back(where + "unknown candidate " + std::to_string(c) + " in approval set");
        structural_ok = false;
      }
    }
    if (std::adjacent_find(approved.begin(), approved.end()) != approved.end()) {
      issues.push_back(where + "duplicate candidate in approval set");
      structural_ok = false;
    }
    if (strict && structural_ok) {
      APBallot sorted{b.ranking, approved, b.weight};
      if (!sorted.threshold()) issues.push_back(where + "approved set is not a prefix of the ranking");
    }
  }
  return issues;
}

// Approval-preference profile: weighted (ranking, approval set) ballots.
class APProfile {
 public:
  APProfile(std::size_t m, std::vector<APBallot> ballots, std::vector<std::string> labels = {},
            Consistency consistency = Consistency::Required)
      : m_(m), ballots_(std::move(ballots)), labels_(std::move(labels)) {
    detail::check_labels(m_, labels_);
    auto issues = validate(m_, ballots_, consistency == Consistency::Required);
    if (!issues.empty()) throw InputError("invalid profile: " + issues.front());
    for (auto& b : ballots_) {
      std::sort(b.approved.begin(), b.approved.end());
      total_ += b.weight;
    }
  }

  [[nodiscard]] std::size_t num_candidates() const noexcept { return m_; }
  [[nodiscard]] const std::vector<APBallot>& ballots() const noexcept { return ballots_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::string& label(Candidate c) const { return labels_.at(static_cast<std::size_t>(c)); }
  [[nodiscard]] const Rational& total_weight() const noexcept { return total_; }

  [[nodiscard]] bool is_consistent() const {
    return std::all_of(ballots_.begin(), ballots_.end(), [](const APBallot& b) { return b.threshold().has_value(); });
  }

  // V_P: drop the rankings.
  [[nodiscard]] ApprovalProfile approval_profile() const {
    std::vector<ApprovalBallot> v;
    v.reserve(ballots_.size());
    for (const auto& b : ballots_) v.push_back(ApprovalBallot{b.approved, b.weight});
    return ApprovalProfile(m_, std::move(v), labels_);
  }

  friend bool operator==(const APProfile& a, const APProfile& b) {
    return a.m_ == b.m_ && a.labels_ == b.labels_ && a.ballots_ == b.ballots_;
  }

 private:
  std::size_t m_;
  std::vector<APBallot> ballots_;
  std::vector<std::string> labels_;
  Rational total_;
};

inline std::vector<std::string> validate(const APProfile& p, bool strict) {
  return validate(p.num_candidates(), p.ballots(), strict);
}

// Weighted support for a over b and b over a.
inline std::pair<Rational, Rational> pairwise_support(const APProfile& p, Candidate a, Candidate b) {
  Rational for_a, for_b;
  for (const auto& ballot : p.ballots()) {
    if (ballot.prefers(a, b)) {
      for_a += ballot.weight;
    } else {
      for_b += ballot.weight;
    }
  }
  return {for_a, for_b};
}

// maj(>, {a, b}): the singleton winner, or both on an exact tie. Sorted.
inline std::vector<Candidate> majority_winners(const APProfile& p, Candidate a, Candidate b) {
  detail::check_candidate(p.num_candidates(), a);
  detail::check_candidate(p.num_candidates(), b);
  if (a == b) throw InputError("majority comparison needs two distinct candidates");
  auto [for_a, for_b] = pairwise_support(p, a, b);
  if (for_a > for_b) return {a};
  if (for_b > for_a) return {b};
  return {std::min(a, b), std::max(a, b)};
}

// a unanimously preference-approval dominates b: every positive-weight
// ballot ranks a above b, and some ballot approves a but not b.
inline bool dominates(const APProfile& p, Candidate a, Candidate b) {
  detail::check_candidate(p.num_candidates(), a);
  detail::check_candidate(p.num_candidates(), b);
  if (a == b) throw InputError("domination needs two distinct candidates");
  bool separating = false;
  for (const auto& ballot : p.ballots()) {
    if (ballot.weight.sign() <= 0) continue;
    if (!ballot.prefers(a, b)) return false;
    if (ballot.approves(a) && !ballot.approves(b)) separating = true;
  }
  return separating;
}

// The candidate losing every pairwise majority contest strictly, if any.
inline std::optional<Candidate> condorcet_loser(const APProfile& p) {
  const auto m = static_cast<Candidate>(p.num_candidates());
  if (m < 2) return std::nullopt;
  for (Candidate c = 0; c < m; ++c) {
    bool loses_all = true;
    for (Candidate d = 0; d < m && loses_all; ++d) {
      if (d == c) continue;
      auto [for_c, for_d] = pairwise_support(p, c, d);
      loses_all = for_d > for_c;
    }
    if (loses_all) return c;
  }
  return std::nullopt;
}

}  // namespace avr
