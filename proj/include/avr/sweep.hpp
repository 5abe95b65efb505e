#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "avr/error.hpp"
#include "avr/profile.hpp"
#include "avr/rules.hpp"

namespace avr {

enum class AlphaFamily { AV, SeqAV };

inline RuleSpec family_rule(AlphaFamily f, const Rational& alpha) {
  return f == AlphaFamily::AV ? RuleSpec::alpha_av(alpha) : RuleSpec::alpha_seq_av(alpha);
}

// An α where the optimal pair set changes.
struct Breakpoint {
  Rational alpha;
  std::vector<CandidatePair> below;  // optimal just below alpha
  std::vector<CandidatePair> at;
  std::vector<CandidatePair> above;  // optimal just above alpha
};

namespace detail {

// Every pair score is A - αB; collect the crossings of two such lines.
inline void add_crossings(std::vector<Rational>& out, const std::vector<std::pair<Rational, Rational>>& lines,
                          const Rational& lo, const Rational& hi) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].second == lines[j].second) continue;
      Rational x = (lines[i].first - lines[j].first) / (lines[i].second - lines[j].second);
      if (x >= lo && x <= hi) out.push_back(x);
    }
  }
}

// Candidate crossing points of the family on [lo, hi]. The optimal set is
// constant between consecutive points.
inline std::vector<Rational> crossing_candidates(const ApprovalProfile& v, AlphaFamily f, const Rational& lo,
                                                 const Rational& hi) {
  const auto j = joint_score_matrix(v);
  const std::size_t m = v.num_candidates();
  std::vector<Rational> pts;
  if (f == AlphaFamily::AV) {
    std::vector<std::pair<Rational, Rational>> lines;
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x + 1; y < m; ++y) lines.emplace_back(j[x][x] + j[y][y], j[x][y]);
    }
    add_crossings(pts, lines, lo, hi);
  } else {
    for (Candidate first : approval_winners(v)) {
      std::vector<std::pair<Rational, Rational>> lines;
      const auto fi = static_cast<std::size_t>(first);
      for (std::size_t y = 0; y < m; ++y) {
        if (y != fi) lines.emplace_back(j[y][y], j[fi][y]);
      }
      add_crossings(pts, lines, lo, hi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

// Exact α values in [lo, hi] where the optimal pairs of the family change,
// each confirmed by evaluating the rule on both sides. At an endpoint the
// missing side is reported equal to `at`.
inline std::vector<Breakpoint> alpha_breakpoints(const ApprovalProfile& v, AlphaFamily f,
                                                 const Rational& lo = Rational(0), const Rational& hi = Rational(1)) {
  if (!(lo < hi)) throw InputError("empty alpha interval");
  if (lo.sign() < 0 || (f == AlphaFamily::SeqAV && hi > Rational(1))) throw InputError("alpha interval out of range");
  std::vector<Rational> grid = detail::crossing_candidates(v, f, lo, hi);
  grid.push_back(lo);
  grid.push_back(hi);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  auto pairs_at = [&](const Rational& a) { return evaluate(v, family_rule(f, a)).pairs; };
  std::vector<Breakpoint> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Breakpoint b{grid[i], {}, pairs_at(grid[i]), {}};
    b.below = i == 0 ? b.at : pairs_at((grid[i - 1] + grid[i]) / Rational(2));
    b.above = i + 1 == grid.size() ? b.at : pairs_at((grid[i] + grid[i + 1]) / Rational(2));
    if (b.below != b.above || b.at != b.below) out.push_back(std::move(b));
  }
  return out;
}

struct AlphaSweepRow {
  Rational alpha;
  std::vector<CandidatePair> av_pairs;
  std::vector<CandidatePair> seq_pairs;
  Candidate seq_first = 0;                          // approval winner of the reported branch
  std::vector<std::optional<Rational>> seq_scores;  // S(y) - α S(first, y)
};

// `steps` + 1 evenly spaced α in [0, 1] plus every breakpoint of either
// family.
inline std::vector<AlphaSweepRow> alpha_sweep(const ApprovalProfile& v, std::size_t steps = 100) {
  if (steps == 0) throw InputError("need at least one step");
  std::vector<Rational> alphas;
  for (std::size_t i = 0; i <= steps; ++i) {
    alphas.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(steps));
  }
  for (auto f : {AlphaFamily::AV, AlphaFamily::SeqAV}) {
    for (const auto& b : alpha_breakpoints(v, f)) alphas.push_back(b.alpha);
  }
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  std::vector<AlphaSweepRow> rows;
  for (const auto& a : alphas) {
    AlphaSweepRow r;
    r.alpha = a;
    r.av_pairs = alpha_av(v, a).pairs;
    auto seq = alpha_seq_av(v, a);
    r.seq_pairs = seq.pairs;
    r.seq_first = seq.stages.front().first;
    r.seq_scores = seq.stages.front().score;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace avr
