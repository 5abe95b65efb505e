#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "avr/axiom_suite.hpp"
#include "avr/profile.hpp"
#include "avr/rules.hpp"
#include "avr/runoff.hpp"
#include "avr/sweep.hpp"

// Text, CSV and JSON renderings shared by the command-line tool and its
// golden tests.
namespace avr::report {

enum class Format { Text, Csv, Json };

inline std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline std::string pair_text(const std::vector<std::string>& labels, const CandidatePair& p) {
  return "{" + labels[static_cast<std::size_t>(p.lo)] + "," + labels[static_cast<std::size_t>(p.hi)] + "}";
}

inline std::string pairs_text(const std::vector<std::string>& labels, const std::vector<CandidatePair>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? " " : "") + pair_text(labels, ps[i]);
  return s;
}

inline std::string candidates_text(const std::vector<std::string>& labels, const std::vector<Candidate>& cs) {
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? " " : "") + labels[static_cast<std::size_t>(cs[i])];
  return s;
}

// Pair scores for one-shot rules, per-branch second-stage scores for
// sequential ones. Optimal entries carry '*'.
inline std::string score_table(const ApprovalProfile& v, const RuleSpec& spec, const RuleOutcome& out, Format f) {
  const auto& L = v.labels();
  const bool sequential = !out.stages.empty();
  const std::string objective = out.sense == Sense::Maximize ? "max" : "min";
  if (f == Format::Json) {
    nlohmann::ordered_json doc;
    doc["rule"] = spec.name();
    doc["objective"] = objective;
    doc["finalists"] = nlohmann::ordered_json::array();
    for (const auto& p : out.pairs) doc["finalists"].push_back(pair_text(L, p));
    doc["candidate_scores"] = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < out.candidate_scores.size(); ++c) doc["candidate_scores"][L[c]] = out.candidate_scores[c].to_string();
    if (sequential) {
      doc["stages"] = nlohmann::ordered_json::array();
      for (const auto& st : out.stages) {
        nlohmann::ordered_json j;
        j["first"] = L[static_cast<std::size_t>(st.first)];
        if (spec.kind != RuleKind::SeqPhragmen) j["alpha"] = st.effective_alpha.to_string();
        j["scores"] = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < st.score.size(); ++c) {
          if (st.score[c]) j["scores"][L[c]] = st.score[c]->to_string();
        }
        doc["stages"].push_back(j);
      }
    } else {
      doc["pairs"] = nlohmann::ordered_json::object();
      for (const auto& [p, s] : out.score_table) doc["pairs"][pair_text(L, p)] = s.to_string();
    }
    return doc.dump(2) + "\n";
  }
  const char sep = f == Format::Csv ? ',' : '\t';
  std::string s;
  if (sequential) {
    s += std::string("first") + sep + "alpha" + sep + "candidate" + sep + "score" + sep + "optimal\n";
    for (const auto& st : out.stages) {
      const std::string a = spec.kind == RuleKind::SeqPhragmen ? "-" : st.effective_alpha.to_string();
      for (std::size_t c = 0; c < st.score.size(); ++c) {
        if (!st.score[c]) continue;
        const bool best = std::find(st.best.begin(), st.best.end(), static_cast<Candidate>(c)) != st.best.end();
        s += L[static_cast<std::size_t>(st.first)] + sep + a + sep + L[c] + sep + st.score[c]->to_string() + sep +
             (best ? "*" : "") + "\n";
      }
    }
  } else {
    s += std::string("pair") + sep + "score" + sep + "optimal\n";
    for (const auto& [p, score] : out.score_table) {
      const bool best = std::binary_search(out.pairs.begin(), out.pairs.end(), p);
      // CSV quoting: pair labels contain a comma.
      const std::string name = f == Format::Csv ? "\"" + pair_text(L, p) + "\"" : pair_text(L, p);
      s += name + sep + score.to_string() + sep + (best ? "*" : "") + "\n";
    }
  }
  return s;
}

inline std::string runoff_text(const APProfile& p, const RunoffResult& r, Format f) {
  const auto& L = p.labels();
  if (f == Format::Json) {
    nlohmann::ordered_json doc;
    doc["winners"] = nlohmann::ordered_json::array();
    for (Candidate c : r.winners) doc["winners"].push_back(L[static_cast<std::size_t>(c)]);
    doc["finalists"] = nlohmann::ordered_json::object();
    for (const auto& [pair, maj] : r.per_pair_majority) {
      nlohmann::ordered_json w = nlohmann::ordered_json::array();
      for (Candidate c : maj) w.push_back(L[static_cast<std::size_t>(c)]);
      doc["finalists"][pair_text(L, pair)] = w;
    }
    return doc.dump(2) + "\n";
  }
  return candidates_text(L, r.winners) + "\n";
}

inline std::string breakpoints_text(const std::vector<std::string>& L, AlphaFamily fam,
                                    const std::vector<Breakpoint>& bps) {
  std::string s;
  const std::string name = fam == AlphaFamily::AV ? "alpha-av" : "alpha-seq";
  for (const auto& b : bps) {
    s += "breakpoint " + name + " " + b.alpha.to_string() + " (" + fixed(b.alpha.to_double()) + "): " +
         pairs_text(L, b.below) + " -> " + pairs_text(L, b.above) + "\n";
  }
  return s;
}

// One row per α: winning α-AV pairs, α-seqAV pairs, and the α-seqAV
// second-stage score of every candidate.
inline std::string sweep_table(const ApprovalProfile& v, const std::vector<AlphaSweepRow>& rows, Format f) {
  const auto& L = v.labels();
  const std::size_t m = v.num_candidates();
  if (f == Format::Json) {
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["alpha"] = r.alpha.to_string();
      j["alpha_av"] = pairs_text(L, r.av_pairs);
      j["alpha_seq"] = pairs_text(L, r.seq_pairs);
      j["seq_first"] = L[static_cast<std::size_t>(r.seq_first)];
      j["seq_scores"] = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < m; ++c) {
        if (r.seq_scores[c]) j["seq_scores"][L[c]] = r.seq_scores[c]->to_string();
      }
      doc["rows"].push_back(j);
    }
    for (auto fam : {AlphaFamily::AV, AlphaFamily::SeqAV}) {
      const std::string key = fam == AlphaFamily::AV ? "breakpoints_alpha_av" : "breakpoints_alpha_seq";
      doc[key] = nlohmann::ordered_json::array();
      for (const auto& b : alpha_breakpoints(v, fam)) {
        doc[key].push_back({{"alpha", b.alpha.to_string()},
                            {"below", pairs_text(L, b.below)},
                            {"at", pairs_text(L, b.at)},
                            {"above", pairs_text(L, b.above)}});
      }
    }
    return doc.dump(2) + "\n";
  }
  const char sep = f == Format::Csv ? ',' : '\t';
  std::string s = std::string("alpha") + sep + "alpha_value" + sep + "alpha_av" + sep + "alpha_seq";
  for (std::size_t c = 0; c < m; ++c) s += sep + ("seq_" + L[c]);
  s += "\n";
  auto q = [&](const std::string& x) { return f == Format::Csv ? "\"" + x + "\"" : x; };
  for (const auto& r : rows) {
    s += r.alpha.to_string() + sep + fixed(r.alpha.to_double()) + sep + q(pairs_text(L, r.av_pairs)) + sep +
         q(pairs_text(L, r.seq_pairs));
    for (std::size_t c = 0; c < m; ++c) s += sep + (r.seq_scores[c] ? r.seq_scores[c]->to_string() : "");
    s += "\n";
  }
  if (f == Format::Text) {
    s += breakpoints_text(L, AlphaFamily::AV, alpha_breakpoints(v, AlphaFamily::AV));
    s += breakpoints_text(L, AlphaFamily::SeqAV, alpha_breakpoints(v, AlphaFamily::SeqAV));
  }
  return s;
}

inline nlohmann::ordered_json violation_json(const Violation& v) {
  nlohmann::ordered_json j;
  j["axiom"] = std::string(axiom_name(v.axiom));
  j["rule"] = v.rule.name();
  j["description"] = v.description;
  if (v.before) j["before"] = serialize_profile(*v.before);
  if (v.after) {
    // Deviations may break ballot consistency; fall back to a listing.
    try {
      j["after"] = serialize_profile(*v.after);
    } catch (const InputError&) {
      j["after"] = "(not ballot-consistent)";
    }
  }
  if (v.approvals) j["approvals"] = serialize_approval_profile(*v.approvals);
  return j;
}

inline std::string grid_report(const std::vector<CellReport>& cells, Format f) {
  if (f == Format::Json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
      nlohmann::ordered_json j;
      j["axiom"] = std::string(axiom_name(c.axiom));
      j["rule"] = c.rule.name();
      j["expected"] = c.expected ? nlohmann::ordered_json(*c.expected) : nlohmann::ordered_json();
      j["verdict"] = c.verdict();
      j["profiles"] = c.profiles;
      j["violations"] = c.violations;
      j["inconclusive"] = c.inconclusive;
      j["skipped"] = c.out_of_domain;
      if (c.witness) {
        j["witness_source"] = c.witness_source;
        j["witness"] = violation_json(*c.witness);
      }
      doc.push_back(j);
    }
    return doc.dump(2) + "\n";
  }
  if (f == Format::Csv) {
    std::string s = "axiom,rule,expected,verdict,profiles,violations,inconclusive,skipped,witness\n";
    for (const auto& c : cells) {
      s += std::string(axiom_name(c.axiom)) + "," + c.rule.name() + "," +
           (c.expected ? (*c.expected ? "yes" : "no") : "") + "," + c.verdict() + "," + std::to_string(c.profiles) +
           "," + std::to_string(c.violations) + "," + std::to_string(c.inconclusive) + "," +
           std::to_string(c.out_of_domain) + "," + (c.witness ? c.witness_source : "") + "\n";
    }
    return s;
  }
  // Matrix: one row per axiom, one column per rule.
  std::vector<std::string> rules;
  std::vector<Axiom> axioms;
  for (const auto& c : cells) {
    if (std::find(rules.begin(), rules.end(), c.rule.name()) == rules.end()) rules.push_back(c.rule.name());
    if (std::find(axioms.begin(), axioms.end(), c.axiom) == axioms.end()) axioms.push_back(c.axiom);
  }
  auto pad = [](std::string x, std::size_t w) {
    x.resize(std::max(w, x.size()), ' ');
    return x;
  };
  std::string s = pad("", 24);
  for (const auto& r : rules) s += pad(r + "^R", 10);
  s += "\n";
  for (Axiom a : axioms) {
    s += pad(std::string(axiom_name(a)), 24);
    for (const auto& r : rules) {
      std::string mark;
      for (const auto& c : cells) {
        if (c.axiom != a || c.rule.name() != r) continue;
        if (!c.expected) mark = "?";
        else if (*c.expected) mark = c.passed ? "yes" : (c.violations ? "FAIL" : "inc");
        else mark = c.witness ? "no" : "MISSING";
      }
      s += pad(mark, 10);
    }
    s += "\n";
  }
  return s;
}

}  // namespace avr::report
