#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "avr/error.hpp"
#include "avr/profile.hpp"
#include "avr/random.hpp"
#include "avr/rules.hpp"

namespace avr {

enum class Distribution { Triangular, Gaussian };

inline std::string_view distribution_name(Distribution d) {
  return d == Distribution::Triangular ? "triangular" : "gaussian";
}

inline Distribution parse_distribution(std::string_view s) {
  if (s == "triangular" || s == "tri") return Distribution::Triangular;
  if (s == "gaussian" || s == "normal") return Distribution::Gaussian;
  throw InputError("unknown distribution '" + std::string(s) + "'");
}

enum class Placement { Grid, Sampled };

struct SpatialConfig {
  Distribution distribution = Distribution::Triangular;
  double d = 0.25;  // approval radius
  std::size_t n_voters = 20000;
  std::size_t n_candidates = 1000;
  Placement placement = Placement::Grid;
  // Candidate interval; defaults to [-1,1] (triangular) and [-2,2] (gaussian).
  std::optional<std::pair<double, double>> interval;
  std::uint64_t seed = 1;

  [[nodiscard]] std::pair<double, double> candidate_interval() const {
    if (interval) return *interval;
    return distribution == Distribution::Triangular ? std::pair{-1.0, 1.0} : std::pair{-2.0, 2.0};
  }

  void check() const {
    if (!(d > 0) || !std::isfinite(d)) throw InputError("approval radius must be positive");
    if (n_voters == 0 || n_candidates == 0) throw InputError("need at least one voter and one candidate");
    if (placement == Placement::Grid && n_candidates < 2) throw InputError("a grid needs two candidates");
    auto [lo, hi] = candidate_interval();
    if (!(lo < hi)) throw InputError("empty candidate interval");
  }
};

// Voter density (1 - |x|) / 2 on [-1, 1]; its total mass is 1/2.
inline double triangular_pdf(double x) {
  const double ax = std::abs(x);
  return ax >= 1.0 ? 0.0 : (1.0 - ax) / 2.0;
}

// Integral of triangular_pdf over [a, b].
inline double triangular_mass(double a, double b) {
  auto cdf = [](double t) {
    t = std::clamp(t, -1.0, 1.0);
    return t <= 0 ? (1.0 + t) * (1.0 + t) / 4.0 : 0.5 - (1.0 - t) * (1.0 - t) / 4.0;
  };
  return b <= a ? 0.0 : cdf(b) - cdf(a);
}

// |x2*| for α-seqAV when the first finalist sits at 0.
inline double optimal_x2_triangular(double alpha, double d) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
  if (!(d > 0.0 && d < 1.0)) throw InputError("d must lie in (0, 1)");
  if (alpha <= 2 * d) return alpha * (1 - d) / (2 - alpha);
  if (alpha <= 2 * d / (1 - d)) return 1 + d - 2 * d / alpha;
  return 2 * d;
}

// Second-stage objective S(x) - α S(x, 0) under the triangular density,
// computed from the mass integrals.
inline double triangular_second_stage_score(double x, double alpha, double d) {
  const double own = triangular_mass(x - d, x + d);
  const double shared = triangular_mass(std::max(x, 0.0) - d, std::min(x, 0.0) + d);
  return own - alpha * shared;
}

namespace detail {

inline double draw_voter(Distribution dist, Rng& rng) {
  if (dist == Distribution::Triangular) return rng.uniform01() + rng.uniform01() - 1.0;
  return 0.5 * rng.normal();
}

}  // namespace detail

// Grid: evenly spaced, endpoints included. Sampled: draws from the voter
// distribution clipped to the interval, sorted.
inline std::vector<double> candidate_positions(const SpatialConfig& cfg, Rng& rng) {
  auto [lo, hi] = cfg.candidate_interval();
  std::vector<double> pos(cfg.n_candidates);
  if (cfg.placement == Placement::Grid) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      pos[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(pos.size() - 1);
    }
    return pos;
  }
  for (auto& p : pos) {
    do {
      p = detail::draw_voter(cfg.distribution, rng);
    } while (p < lo || p > hi);
  }
  std::sort(pos.begin(), pos.end());
  return pos;
}

// Candidates first (if sampled), then voters, from one stream.
struct SpatialSample {
  std::vector<double> candidates;  // sorted
  std::vector<double> voters;
};

inline SpatialSample draw_sample(const SpatialConfig& cfg) {
  cfg.check();
  Rng rng(cfg.seed);
  SpatialSample s;
  s.candidates = candidate_positions(cfg, rng);
  s.voters.resize(cfg.n_voters);
  for (auto& v : s.voters) v = detail::draw_voter(cfg.distribution, rng);
  return s;
}

namespace detail {

// Index range [lo, hi) of candidates strictly within d of v.
inline std::pair<std::size_t, std::size_t> approval_range(const std::vector<double>& cands, double v, double d) {
  auto lo = std::upper_bound(cands.begin(), cands.end(), v - d);
  while (lo != cands.begin() && std::abs(*(lo - 1) - v) < d) --lo;
  while (lo != cands.end() && !(std::abs(*lo - v) < d)) ++lo;
  auto hi = lo;
  while (hi != cands.end() && std::abs(*hi - v) < d) ++hi;
  return {static_cast<std::size_t>(lo - cands.begin()), static_cast<std::size_t>(hi - cands.begin())};
}

// Candidates by increasing distance from v; equal distances go to the
// lower coordinate first.
inline std::vector<Candidate> distance_ranking(const std::vector<double>& cands, double v) {
  std::vector<Candidate> r;
  r.reserve(cands.size());
  std::size_t right = static_cast<std::size_t>(std::lower_bound(cands.begin(), cands.end(), v) - cands.begin());
  std::size_t left = right;  // next candidate to the left is left - 1
  while (r.size() < cands.size()) {
    const bool has_l = left > 0, has_r = right < cands.size();
    if (has_l && (!has_r || v - cands[left - 1] <= cands[right] - v)) {
      r.push_back(static_cast<Candidate>(--left));
    } else {
      r.push_back(static_cast<Candidate>(right++));
    }
  }
  return r;
}

inline std::vector<std::string> position_labels(const std::vector<double>& cands) {
  std::vector<std::string> labels;
  labels.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) labels.push_back("c" + std::to_string(i));
  return labels;
}

}  // namespace detail

// Full AP profile: one unit ballot per voter. Memory grows as voters x
// candidates; use sample_approval_profile for large runs.
inline APProfile sample_profile(const SpatialConfig& cfg) {
  auto s = draw_sample(cfg);
  std::vector<APBallot> ballots;
  ballots.reserve(s.voters.size());
  for (double v : s.voters) {
    auto [lo, hi] = detail::approval_range(s.candidates, v, cfg.d);
    ballots.push_back(APBallot::with_threshold(detail::distance_ranking(s.candidates, v), hi - lo, Rational(1)));
  }
  return APProfile(s.candidates.size(), std::move(ballots), detail::position_labels(s.candidates));
}

// Approval projection of the same sample with identical ballots merged
// (every approval set is an interval of candidates).
inline ApprovalProfile sample_approval_profile(const SpatialConfig& cfg, const SpatialSample& s) {
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> groups;
  for (double v : s.voters) ++groups[detail::approval_range(s.candidates, v, cfg.d)];
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(groups.size());
  for (const auto& [range, count] : groups) {
    ApprovalBallot b{{}, Rational(count)};
    for (std::size_t c = range.first; c < range.second; ++c) b.approved.push_back(static_cast<Candidate>(c));
    ballots.push_back(std::move(b));
  }
  return ApprovalProfile(s.candidates.size(), std::move(ballots), detail::position_labels(s.candidates));
}

inline ApprovalProfile sample_approval_profile(const SpatialConfig& cfg) {
  return sample_approval_profile(cfg, draw_sample(cfg));
}

struct PositionReport {
  double first_position = 0.0;
  double second_position = 0.0;   // signed coordinate
  double second_distance = 0.0;   // |second - center|
  std::size_t first_ties = 1;     // approval winners
  std::size_t second_ties = 1;    // optimal second finalists for the reported first
  std::vector<double> positions;  // candidate coordinates
  std::vector<std::optional<double>> curve;  // second-stage score per candidate
};

namespace detail {

inline PositionReport report_from(const std::vector<double>& cands, const RuleOutcome& out) {
  PositionReport r;
  r.positions = cands;
  auto closer = [&](Candidate x, Candidate y) {
    const double ax = std::abs(cands[static_cast<std::size_t>(x)]), ay = std::abs(cands[static_cast<std::size_t>(y)]);
    return ax != ay ? ax < ay : x < y;
  };
  const SecondStage* chosen = nullptr;
  for (const auto& st : out.stages) {
    if (!chosen || closer(st.first, chosen->first)) chosen = &st;
  }
  r.first_ties = out.stages.size();
  r.first_position = cands[static_cast<std::size_t>(chosen->first)];
  Candidate second = *std::min_element(chosen->best.begin(), chosen->best.end(), closer);
  r.second_ties = chosen->best.size();
  r.second_position = cands[static_cast<std::size_t>(second)];
  r.second_distance = std::abs(r.second_position);
  r.curve.resize(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    if (chosen->score[c]) r.curve[c] = chosen->score[c]->to_double();
  }
  return r;
}

}  // namespace detail

// Finalists of α-seqAV on a sampled profile. With ties, the approval winner
// closest to the center and then the closest optimal second are reported.
inline PositionReport empirical_second_finalist(const SpatialConfig& cfg, const Rational& alpha,
                                                const SpatialSample& sample) {
  auto v = sample_approval_profile(cfg, sample);
  return detail::report_from(sample.candidates, alpha_seq_av(v, alpha));
}

inline PositionReport empirical_second_finalist(const SpatialConfig& cfg, const Rational& alpha) {
  return empirical_second_finalist(cfg, alpha, draw_sample(cfg));
}

// Exact rational for a short decimal such as 0.33 (used for α grids).
inline Rational decimal_rational(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return Rational::parse(buf);
}

struct SweepRow {
  Distribution distribution;
  double d;
  double alpha;
  std::optional<double> analytic;
  double empirical;
  std::uint64_t seed;
};

// One sample per d (seeded by derive_seed(cfg.seed, index of d)), shared
// by every α of that d.
inline std::vector<SweepRow> sweep(const SpatialConfig& cfg, const std::vector<double>& alphas,
                                   const std::vector<double>& ds) {
  std::vector<SweepRow> rows;
  if (alphas.empty()) return rows;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    SpatialConfig cell = cfg;
    cell.d = ds[i];
    cell.seed = derive_seed(cfg.seed, i);
    auto sample = draw_sample(cell);
    auto v = sample_approval_profile(cell, sample);
    for (double a : alphas) {
      auto rep = detail::report_from(sample.candidates, alpha_seq_av(v, decimal_rational(a)));
      std::optional<double> analytic;
      if (cell.distribution == Distribution::Triangular && cell.d < 1.0) analytic = optimal_x2_triangular(a, cell.d);
      rows.push_back({cell.distribution, cell.d, a, analytic, rep.second_distance, cell.seed});
    }
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string s = "distribution,d,alpha,analytic,empirical,seed,generator\n";
  char buf[256];
  for (const auto& r : rows) {
    std::string analytic;
    if (r.analytic) {
      std::snprintf(buf, sizeof buf, "%.12f", *r.analytic);
      analytic = buf;
    }
    std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%s,%.12f,%llu,%s\n", std::string(distribution_name(r.distribution)).c_str(),
                  r.d, r.alpha, analytic.c_str(), r.empirical, static_cast<unsigned long long>(r.seed),
                  std::string(Rng::kName).c_str());
    s += buf;
  }
  return s;
}

// 0, 0.01, ..., 1 when steps = 100.
inline std::vector<double> unit_grid(std::size_t steps) {
  std::vector<double> g;
  for (std::size_t i = 0; i <= steps; ++i) g.push_back(static_cast<double>(i) / static_cast<double>(steps));
  return g;
}

}  // namespace avr
