#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avr/error.hpp"
#include "avr/profile.hpp"
#include "avr/rational.hpp"

namespace avr {

// Approval-based committee rules for committees of size two. Every rule is
// irresolute: it returns the full set of optimal pairs together with the
// exact objective values that justify the choice.

enum class RuleKind { AlphaAV, AlphaSeqAV, SeqPhragmen, EnestromPhragmen, SAV, TRIV, CCAVPlus };

// Eneström-Phragmén quota: either an absolute Q or a fraction beta of the
// total weight (Q = beta * n).
struct Quota {
  enum class Kind { Absolute, Fraction };
  Kind kind = Kind::Fraction;
  Rational value{1, 3};

  static Quota absolute(Rational q) { return {Kind::Absolute, q}; }
  static Quota fraction(Rational beta) {
    if (beta.sign() < 0 || beta > Rational(1)) throw InputError("quota fraction must lie in [0, 1]");
    return {Kind::Fraction, beta};
  }
  static Quota droop() { return fraction(Rational(1, 3)); }  // n / (k + 1), k = 2
  static Quota hare() { return fraction(Rational(1, 2)); }   // n / k

  [[nodiscard]] Rational resolve(const Rational& n) const {
    Rational q = kind == Kind::Fraction ? value * n : value;
    if (q.sign() < 0 || q > n) throw InputError("quota " + q.to_string() + " outside [0, " + n.to_string() + "]");
    return q;
  }

  friend bool operator==(const Quota&, const Quota&) = default;
};

struct RuleSpec {
  RuleKind kind = RuleKind::AlphaAV;
  Rational alpha;  // AlphaAV / AlphaSeqAV only
  Quota quota;     // EnestromPhragmen only

  static RuleSpec alpha_av(Rational a) {
    if (a.sign() < 0) throw InputError("alpha must be nonnegative");
    return {RuleKind::AlphaAV, a, {}};
  }
  static RuleSpec alpha_seq_av(Rational a) {
    if (a.sign() < 0 || a > Rational(1)) throw InputError("sequential alpha must lie in [0, 1]");
    return {RuleKind::AlphaSeqAV, a, {}};
  }
  static RuleSpec mav() { return alpha_av(0); }
  static RuleSpec pav() { return alpha_av(Rational(1, 2)); }
  static RuleSpec ccav() { return alpha_av(1); }
  static RuleSpec two_av() { return alpha_av(2); }
  static RuleSpec spav() { return alpha_seq_av(Rational(1, 2)); }
  static RuleSpec sccav() { return alpha_seq_av(1); }
  static RuleSpec sphr() { return {RuleKind::SeqPhragmen, {}, {}}; }
  static RuleSpec enephr(Quota q = Quota::droop()) { return {RuleKind::EnestromPhragmen, {}, q}; }
  static RuleSpec sav() { return {RuleKind::SAV, {}, {}}; }
  static RuleSpec triv() { return {RuleKind::TRIV, {}, {}}; }
  static RuleSpec ccav_plus() { return {RuleKind::CCAVPlus, {}, {}}; }

  // Short display name; round-trips through parse_rule.
  [[nodiscard]] std::string name() const {
    switch (kind) {
      case RuleKind::AlphaAV:
        if (alpha == Rational(0)) return "mav";
        if (alpha == Rational(1, 2)) return "pav";
        if (alpha == Rational(1)) return "ccav";
        if (alpha == Rational(2)) return "2av";
        return "alpha-av:" + alpha.to_string();
      case RuleKind::AlphaSeqAV:
        if (alpha == Rational(1, 2)) return "spav";
        if (alpha == Rational(1)) return "sccav";
        return "alpha-seq:" + alpha.to_string();
      case RuleKind::SeqPhragmen: return "sphr";
      case RuleKind::EnestromPhragmen:
        if (quota == Quota::droop()) return "enephr";
        return quota.kind == Quota::Kind::Fraction ? "enephr:" + quota.value.to_string()
                                                   : "enephr-q:" + quota.value.to_string();
      case RuleKind::SAV: return "sav";
      case RuleKind::TRIV: return "triv";
      case RuleKind::CCAVPlus: return "ccav+";
    }
    return "?";
  }

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

// Accepted names: mav, av, pav, ccav, spav, sccav, sphr, enephr, sav, triv,
// ccav+, 2av, alpha-av:<r>, alpha-seq:<r>, enephr:<beta>, enephr-q:<Q>,
// hare, droop. Case-insensitive; '_' is treated like '-'.
inline RuleSpec parse_rule(std::string_view raw) {
  std::string name;
  for (char c : raw) name.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto param = [&](std::string_view prefix) -> std::optional<Rational> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    return Rational::parse(std::string_view(name).substr(prefix.size()));
  };
  if (name == "mav" || name == "av") return RuleSpec::mav();
  if (name == "pav") return RuleSpec::pav();
  if (name == "ccav") return RuleSpec::ccav();
  if (name == "spav" || name == "s-pav") return RuleSpec::spav();
  if (name == "sccav" || name == "s-ccav") return RuleSpec::sccav();
  if (name == "sphr" || name == "s-phr" || name == "seq-phragmen") return RuleSpec::sphr();
  if (name == "enephr" || name == "droop") return RuleSpec::enephr();
  if (name == "hare") return RuleSpec::enephr(Quota::hare());
  if (name == "sav") return RuleSpec::sav();
  if (name == "triv") return RuleSpec::triv();
  if (name == "ccav+" || name == "ccav-plus") return RuleSpec::ccav_plus();
  if (name == "2av" || name == "2-av") return RuleSpec::two_av();
  if (auto a = param("alpha-av:")) return RuleSpec::alpha_av(*a);
  if (auto a = param("alpha-seq:")) return RuleSpec::alpha_seq_av(*a);
  if (auto b = param("enephr:")) return RuleSpec::enephr(Quota::fraction(*b));
  if (auto q = param("enephr-q:")) return RuleSpec::enephr(Quota::absolute(*q));
  throw InputError("unknown rule '" + std::string(raw) + "'");
}

enum class Sense { Maximize, Minimize };

// Second stage of a sequential rule, one per approval winner taken first.
struct SecondStage {
  Candidate first = 0;
  Rational effective_alpha;                   // discount applied to S(first, y)
  std::vector<std::optional<Rational>> score;  // per candidate; empty for `first` and excluded ones
  std::vector<Candidate> best;                 // arg-optimum of `score`
};

struct RuleOutcome {
  std::vector<CandidatePair> pairs;             // sorted, nonempty
  std::map<CandidatePair, Rational> score_table;  // pair objective (non-sequential rules)
  std::vector<SecondStage> stages;              // sequential rules
  std::vector<Rational> candidate_scores;       // S_V, or Sp_V for SAV
  Sense sense = Sense::Maximize;

  [[nodiscard]] bool contains(const CandidatePair& p) const {
    return std::binary_search(pairs.begin(), pairs.end(), p);
  }
  [[nodiscard]] const SecondStage* stage_for(Candidate first) const {
    for (const auto& s : stages) {
      if (s.first == first) return &s;
    }
    return nullptr;
  }
};

namespace detail {

inline void require_two(const ApprovalProfile& v) {
  if (v.num_candidates() < 2) throw InputError("committee rules need at least two candidates");
}

inline std::vector<CandidatePair> all_pairs(std::size_t m) {
  std::vector<CandidatePair> out;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x + 1; y < m; ++y) out.push_back({static_cast<Candidate>(x), static_cast<Candidate>(y)});
  }
  return out;
}

inline std::vector<CandidatePair> arg_best(const std::map<CandidatePair, Rational>& table, Sense sense) {
  std::vector<CandidatePair> out;
  const Rational* best = nullptr;
  for (const auto& [pair, s] : table) {
    if (!best || (sense == Sense::Maximize ? s > *best : s < *best)) {
      best = &s;
      out.clear();
    }
    if (s == *best) out.push_back(pair);
  }
  return out;
}

inline void finish(RuleOutcome& out) {
  std::sort(out.pairs.begin(), out.pairs.end());
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
}

// Sequential scheme: every approval winner x1 opens a branch, the second
// finalist maximizes S(y) - alpha(x1) * S(x1 y). Union over branches.
template <typename AlphaFor>
RuleOutcome sequential_discount(const ApprovalProfile& v, AlphaFor alpha_for) {
  require_two(v);
  RuleOutcome out;
  out.candidate_scores = approval_scores(v);
  const auto& s = out.candidate_scores;
  const std::size_t m = v.num_candidates();
  for (Candidate first : approval_winners(v)) {
    SecondStage stage;
    stage.first = first;
    stage.effective_alpha = alpha_for(s[static_cast<std::size_t>(first)]);
    auto joint = joint_scores_with(v, first);
    stage.score.resize(m);
    const Rational* best = nullptr;
    for (std::size_t y = 0; y < m; ++y) {
      if (static_cast<Candidate>(y) == first) continue;
      stage.score[y] = s[y] - stage.effective_alpha * joint[y];
      const Rational& val = *stage.score[y];
      if (!best || val > *best) {
        best = &*stage.score[y];
        stage.best.clear();
      }
      if (val == *best) stage.best.push_back(static_cast<Candidate>(y));
    }
    for (Candidate y : stage.best) out.pairs.push_back(CandidatePair::of(first, y));
    out.stages.push_back(std::move(stage));
  }
  finish(out);
  return out;
}

}  // namespace detail

// Pairs maximizing S(x1) + S(x2) - alpha * S(x1 x2). Any alpha >= 0 is
// accepted: 0 is MAV, 1/2 PAV, 1 CCAV, 2 the clone-proof 2-AV.
inline RuleOutcome alpha_av(const ApprovalProfile& v, const Rational& alpha) {
  detail::require_two(v);
  if (alpha.sign() < 0) throw InputError("alpha must be nonnegative");
  RuleOutcome out;
  auto j = joint_score_matrix(v);
  const std::size_t m = v.num_candidates();
  out.candidate_scores.resize(m);
  for (std::size_t c = 0; c < m; ++c) out.candidate_scores[c] = j[c][c];
  for (const auto& p : detail::all_pairs(m)) {
    auto x = static_cast<std::size_t>(p.lo), y = static_cast<std::size_t>(p.hi);
    out.score_table[p] = j[x][x] + j[y][y] - alpha * j[x][y];
  }
  out.pairs = detail::arg_best(out.score_table, Sense::Maximize);
  return out;
}

// x1 an approval winner, x2 maximizing S(x2) - alpha * S(x1 x2); alpha in [0, 1].
inline RuleOutcome alpha_seq_av(const ApprovalProfile& v, const Rational& alpha) {
  if (alpha.sign() < 0 || alpha > Rational(1)) throw InputError("sequential alpha must lie in [0, 1]");
  return detail::sequential_discount(v, [&](const Rational&) { return alpha; });
}

// Eneström-Phragmén for k = 2: the alpha-seqAV branch discount is
// min(1, Q / S(x1)); a zero-score first finalist gets discount 1.
inline RuleOutcome enestrom_phragmen(const ApprovalProfile& v, const Quota& quota) {
  const Rational q = quota.resolve(v.total_weight());
  return detail::sequential_discount(v, [&](const Rational& first_score) {
    if (first_score.is_zero()) return Rational(1);
    return min(Rational(1), q / first_score);
  });
}

inline RuleOutcome triv(const ApprovalProfile& v) {
  detail::require_two(v);
  RuleOutcome out;
  out.candidate_scores = approval_scores(v);
  for (const auto& p : detail::all_pairs(v.num_candidates())) out.score_table[p] = Rational(0);
  out.pairs = detail::all_pairs(v.num_candidates());
  return out;
}

// Sequential Phragmén: x2 minimizes (1 + S(x1 x2) / S(x1)) / S(x2).
// Candidates with S(x2) = 0 carry infinite load and are excluded unless no
// other candidate remains; an all-zero profile degenerates to TRIV.
inline RuleOutcome seq_phragmen(const ApprovalProfile& v) {
  detail::require_two(v);
  RuleOutcome out;
  out.sense = Sense::Minimize;
  out.candidate_scores = approval_scores(v);
  const auto& s = out.candidate_scores;
  const std::size_t m = v.num_candidates();
  auto winners = approval_winners(v);
  if (s[static_cast<std::size_t>(winners.front())].is_zero()) {
    RuleOutcome t = triv(v);
    t.sense = Sense::Minimize;
    return t;
  }
  for (Candidate first : winners) {
    SecondStage stage;
    stage.first = first;
    const Rational& s1 = s[static_cast<std::size_t>(first)];
    auto joint = joint_scores_with(v, first);
    stage.score.resize(m);
    const Rational* best = nullptr;
    for (std::size_t y = 0; y < m; ++y) {
      if (static_cast<Candidate>(y) == first || s[y].is_zero()) continue;
      stage.score[y] = (Rational(1) + joint[y] / s1) / s[y];
      const Rational& val = *stage.score[y];
      if (!best || val < *best) {
        best = &*stage.score[y];
        stage.best.clear();
      }
      if (val == *best) stage.best.push_back(static_cast<Candidate>(y));
    }
    if (!best) {
      for (std::size_t y = 0; y < m; ++y) {
        if (static_cast<Candidate>(y) != first) stage.best.push_back(static_cast<Candidate>(y));
      }
    }
    for (Candidate y : stage.best) out.pairs.push_back(CandidatePair::of(first, y));
    out.stages.push_back(std::move(stage));
  }
  detail::finish(out);
  return out;
}

// Split approval: each ballot spreads weight evenly over its approved set.
inline std::vector<Rational> split_scores(const ApprovalProfile& v) {
  std::vector<Rational> sp(v.num_candidates());
  for (const auto& b : v.ballots()) {
    if (b.approved.empty()) continue;
    const Rational share = b.weight / Rational(static_cast<std::int64_t>(b.approved.size()));
    for (Candidate c : b.approved) sp[static_cast<std::size_t>(c)] += share;
  }
  return sp;
}

// Pairs maximizing Sp(x1) + Sp(x2).
inline RuleOutcome sav(const ApprovalProfile& v) {
  detail::require_two(v);
  RuleOutcome out;
  out.candidate_scores = split_scores(v);
  for (const auto& p : detail::all_pairs(v.num_candidates())) {
    out.score_table[p] = out.candidate_scores[static_cast<std::size_t>(p.lo)] +
                         out.candidate_scores[static_cast<std::size_t>(p.hi)];
  }
  out.pairs = detail::arg_best(out.score_table, Sense::Maximize);
  return out;
}

// CCAV winners, ties broken by the MAV score S(x1) + S(x2).
inline RuleOutcome ccav_plus(const ApprovalProfile& v) {
  RuleOutcome out = alpha_av(v, 1);
  const auto& s = out.candidate_scores;
  std::map<CandidatePair, Rational> mav;
  for (const auto& p : out.pairs) mav[p] = s[static_cast<std::size_t>(p.lo)] + s[static_cast<std::size_t>(p.hi)];
  out.pairs = detail::arg_best(mav, Sense::Maximize);
  return out;
}

inline RuleOutcome evaluate(const ApprovalProfile& v, const RuleSpec& spec) {
  switch (spec.kind) {
    case RuleKind::AlphaAV: return alpha_av(v, spec.alpha);
    case RuleKind::AlphaSeqAV: return alpha_seq_av(v, spec.alpha);
    case RuleKind::SeqPhragmen: return seq_phragmen(v);
    case RuleKind::EnestromPhragmen: return enestrom_phragmen(v, spec.quota);
    case RuleKind::SAV: return sav(v);
    case RuleKind::TRIV: return triv(v);
    case RuleKind::CCAVPlus: return ccav_plus(v);
  }
  throw InputError("unsupported rule kind");
}

}  // namespace avr
