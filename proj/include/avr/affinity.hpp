#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "avr/error.hpp"
#include "avr/profile.hpp"
#include "avr/rational.hpp"

namespace avr {

struct AffinityEdge {
  CandidatePair pair;
  Rational jaccard;
};

// Candidates sized by approval score, joined by Jaccard similarity of their
// supporter sets. Pairs nobody approves (0/0) have no edge.
struct AffinityGraph {
  std::vector<std::string> labels;
  std::vector<Rational> scores;
  std::vector<AffinityEdge> edges;  // sorted by pair
};

inline AffinityGraph jaccard_affinity(const ApprovalProfile& v) {
  AffinityGraph g{v.labels(), {}, {}};
  auto j = joint_score_matrix(v);
  const std::size_t m = v.num_candidates();
  for (std::size_t c = 0; c < m; ++c) g.scores.push_back(j[c][c]);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x + 1; y < m; ++y) {
      Rational either = j[x][x] + j[y][y] - j[x][y];
      if (either.is_zero()) continue;
      g.edges.push_back({{static_cast<Candidate>(x), static_cast<Candidate>(y)}, j[x][y] / either});
    }
  }
  return g;
}

enum class NetworkFormat { Dot, Json };

namespace detail {

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace detail

// Emits nodes and the edges whose Jaccard weight is strictly above
// `threshold`. Output is byte-deterministic for equal inputs.
inline std::string export_network(const AffinityGraph& g, const Rational& threshold, NetworkFormat format) {
  if (threshold.sign() < 0 || threshold > Rational(1)) throw InputError("threshold must lie in [0, 1]");
  Rational max_score;
  for (const auto& s : g.scores) max_score = max(max_score, s);
  auto size_of = [&](const Rational& s) { return max_score.is_zero() ? 0.0 : (s / max_score).to_double(); };

  if (format == NetworkFormat::Json) {
    nlohmann::ordered_json doc;
    doc["threshold"] = threshold.to_string();
    doc["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < g.labels.size(); ++c) {
      doc["nodes"].push_back({{"id", c},
                              {"label", g.labels[c]},
                              {"approval_score", g.scores[c].to_string()},
                              {"size", detail::fixed6(size_of(g.scores[c]))}});
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) {
      if (!(e.jaccard > threshold)) continue;
      doc["edges"].push_back({{"source", g.labels[static_cast<std::size_t>(e.pair.lo)]},
                              {"target", g.labels[static_cast<std::size_t>(e.pair.hi)]},
                              {"jaccard", e.jaccard.to_string()},
                              {"weight", detail::fixed6(e.jaccard.to_double())}});
    }
    return doc.dump(2) + "\n";
  }

  std::string s = "graph affinity {\n";
  s += "  // jaccard threshold " + threshold.to_string() + "\n";
  for (std::size_t c = 0; c < g.labels.size(); ++c) {
    s += "  " + detail::dot_quote(g.labels[c]) + " [approval_score=\"" + g.scores[c].to_string() +
         "\", size=" + detail::fixed6(size_of(g.scores[c])) + "];\n";
  }
  for (const auto& e : g.edges) {
    if (!(e.jaccard > threshold)) continue;
    s += "  " + detail::dot_quote(g.labels[static_cast<std::size_t>(e.pair.lo)]) + " -- " +
         detail::dot_quote(g.labels[static_cast<std::size_t>(e.pair.hi)]) + " [jaccard=\"" +
         e.jaccard.to_string() + "\", weight=" + detail::fixed6(e.jaccard.to_double()) + "];\n";
  }
  s += "}\n";
  return s;
}

}  // namespace avr
