#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "avr/error.hpp"
#include "avr/profile.hpp"
#include "avr/rational.hpp"

namespace avr {

/*
 * Profile text format.
 *
 *   # comment
 *   candidate 0 a
 *   candidate 1 b
 *   candidate 2 c
 *   2 * a | b c          ranked ballot: approved prefix | rest of the ranking
 *   3 * b a | c @ b      optional reported vote after '@'
 *   1/2 * | c b a        empty approval set, fractional weight
 *
 * A file whose ballot lines carry no '|' is approval-only: each line lists
 * the approved labels ("4 * c d"). The "weight *" prefix defaults to 1.
 * Weights accept integers, fractions and plain decimals and are kept exact.
 */

struct ProfileFile {
  std::vector<std::string> labels;
  std::optional<APProfile> ranked;  // present when every ballot line is ranked
  ApprovalProfile approvals;
  std::vector<std::optional<Candidate>> reported;  // one entry per ballot line

  [[nodiscard]] const APProfile& require_ranked() const {
    if (!ranked) throw InputError("profile carries no rankings; runoff evaluation needs ranked ballots");
    return *ranked;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline InputError line_error(std::size_t line, const std::string& msg) {
  return InputError("line " + std::to_string(line) + ": " + msg);
}

inline bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == '|' || c == '*' || c == '@' || c == '#' || c == ',' || c == ' ' || c == '\t';
  });
}

}  // namespace detail

inline ProfileFile parse_profile(std::string_view text) {
  struct RawLine {
    std::size_t line;
    Rational weight;
    std::vector<Candidate> left, right;
    bool has_bar;
    std::optional<std::string> reported;
  };
  std::map<std::size_t, std::string> declared;
  std::vector<RawLine> raw;
  std::vector<std::pair<std::size_t, std::string_view>> ballot_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = detail::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = detail::trim(line.substr(0, hash));
    if (line.empty()) continue;
    auto tokens = detail::split_ws(line);
    if (tokens.front() == "candidate") {
      if (tokens.size() != 3) throw detail::line_error(line_no, "expected 'candidate <id> <label>'");
      std::size_t id = 0;
      for (char c : tokens[1]) {
        if (c < '0' || c > '9') throw detail::line_error(line_no, "candidate id must be a nonnegative integer");
        id = id * 10 + static_cast<std::size_t>(c - '0');
      }
      if (!detail::valid_label(tokens[2])) throw detail::line_error(line_no, "invalid candidate label");
      if (!declared.emplace(id, std::string(tokens[2])).second) {
        throw detail::line_error(line_no, "candidate id declared twice");
      }
      continue;
    }
    ballot_lines.emplace_back(line_no, line);
  }

  ProfileFile out{{}, std::nullopt, ApprovalProfile(0, {}), {}};
  for (std::size_t i = 0; i < declared.size(); ++i) {
    auto it = declared.find(i);
    if (it == declared.end()) throw InputError("candidate ids must be dense 0..m-1");
    out.labels.push_back(it->second);
  }
  const std::size_t m = out.labels.size();
  if (m == 0) throw InputError("profile declares no candidates");
  std::map<std::string, Candidate, std::less<>> index;
  for (std::size_t c = 0; c < m; ++c) {
    if (!index.emplace(out.labels[c], static_cast<Candidate>(c)).second) {
      throw InputError("candidate label '" + out.labels[c] + "' declared twice");
    }
  }
  auto lookup = [&](std::size_t line, std::string_view label) {
    auto it = index.find(label);
    if (it == index.end()) throw detail::line_error(line, "unknown candidate '" + std::string(label) + "'");
    return it->second;
  };

  for (auto [ln, line] : ballot_lines) {
    RawLine r{ln, Rational(1), {}, {}, false, std::nullopt};
    if (auto at = line.find('@'); at != std::string_view::npos) {
      auto rep = detail::split_ws(line.substr(at + 1));
      if (rep.size() != 1) throw detail::line_error(ln, "expected one label after '@'");
      r.reported = std::string(rep.front());
      line = detail::trim(line.substr(0, at));
    }
    if (auto star = line.find('*'); star != std::string_view::npos) {
      try {
        r.weight = Rational::parse(detail::trim(line.substr(0, star)));
      } catch (const InputError&) {
        throw detail::line_error(ln, "bad weight '" + std::string(detail::trim(line.substr(0, star))) + "'");
      }
      if (r.weight.sign() < 0) throw detail::line_error(ln, "negative weight");
      line = line.substr(star + 1);
    }
    std::string_view left = line, right;
    if (auto bar = line.find('|'); bar != std::string_view::npos) {
      r.has_bar = true;
      left = line.substr(0, bar);
      right = line.substr(bar + 1);
      if (right.find('|') != std::string_view::npos) throw detail::line_error(ln, "more than one '|'");
    }
    std::vector<char> seen(m, 0);
    auto take = [&](std::string_view part, std::vector<Candidate>& into) {
      for (auto tok : detail::split_ws(part)) {
        Candidate c = lookup(ln, tok);
        if (seen[static_cast<std::size_t>(c)]++) {
          throw detail::line_error(ln, "duplicate candidate '" + std::string(tok) + "'");
        }
        into.push_back(c);
      }
    };
    take(left, r.left);
    take(right, r.right);
    if (r.has_bar && r.left.size() + r.right.size() != m) {
      throw detail::line_error(ln, "ranking must list every candidate");
    }
    raw.push_back(std::move(r));
  }

  const bool any_bar = std::any_of(raw.begin(), raw.end(), [](const RawLine& r) { return r.has_bar; });
  const bool all_bar = std::all_of(raw.begin(), raw.end(), [](const RawLine& r) { return r.has_bar; });
  if (any_bar && !all_bar) throw InputError("profile mixes ranked and approval-only ballots");

  std::vector<ApprovalBallot> approvals;
  std::vector<APBallot> ranked;
  for (const auto& r : raw) {
    approvals.push_back(ApprovalBallot{r.left, r.weight});
    if (all_bar && !raw.empty()) {
      std::vector<Candidate> ranking = r.left;
      ranking.insert(ranking.end(), r.right.begin(), r.right.end());
      ranked.push_back(APBallot::with_threshold(std::move(ranking), r.left.size(), r.weight));
    }
    out.reported.push_back(r.reported ? std::optional<Candidate>(lookup(r.line, *r.reported)) : std::nullopt);
  }
  out.approvals = ApprovalProfile(m, std::move(approvals), out.labels);
  if (all_bar && !raw.empty()) out.ranked = APProfile(m, std::move(ranked), out.labels);
  return out;
}

namespace detail {

inline std::string declarations(const std::vector<std::string>& labels) {
  std::string s;
  for (std::size_t c = 0; c < labels.size(); ++c) s += "candidate " + std::to_string(c) + " " + labels[c] + "\n";
  return s;
}

inline std::string ballot_line(const std::vector<std::string>& labels, const APBallot& b) {
  auto t = b.threshold();
  if (!t) throw InputError("ballot is not ballot-consistent and has no bar notation");
  std::string s = b.weight.to_string() + " *";
  for (std::size_t i = 0; i < b.ranking.size(); ++i) {
    if (i == *t) s += " |";
    s += " " + labels[static_cast<std::size_t>(b.ranking[i])];
  }
  if (*t == b.ranking.size()) s += " |";
  return s;
}

}  // namespace detail

// Canonical text: identical ballots merged, groups sorted by ranking then
// approval set, fractions reduced.
inline std::string serialize_profile(const APProfile& p) {
  std::map<std::pair<std::vector<Candidate>, std::vector<Candidate>>, Rational> groups;
  for (const auto& b : p.ballots()) groups[{b.ranking, b.approved}] += b.weight;
  std::string s = detail::declarations(p.labels());
  for (const auto& [key, w] : groups) {
    s += detail::ballot_line(p.labels(), APBallot{key.first, key.second, w}) + "\n";
  }
  return s;
}

inline std::string serialize_approval_profile(const ApprovalProfile& v) {
  std::map<std::vector<Candidate>, Rational> groups;
  for (const auto& b : v.ballots()) groups[b.approved] += b.weight;
  std::string s = detail::declarations(v.labels());
  for (const auto& [approved, w] : groups) {
    s += w.to_string() + " *";
    for (Candidate c : approved) s += " " + v.label(c);
    s += "\n";
  }
  return s;
}

// Keeps line order and reported-vote annotations.
inline std::string serialize_profile_file(const ProfileFile& f) {
  std::string s = detail::declarations(f.labels);
  for (std::size_t i = 0; i < f.reported.size(); ++i) {
    std::string line;
    if (f.ranked) {
      line = detail::ballot_line(f.labels, f.ranked->ballots()[i]);
    } else {
      const auto& b = f.approvals.ballots()[i];
      line = b.weight.to_string() + " *";
      for (Candidate c : b.approved) line += " " + f.labels[static_cast<std::size_t>(c)];
    }
    if (f.reported[i]) line += " @ " + f.labels[static_cast<std::size_t>(*f.reported[i])];
    s += line + "\n";
  }
  return s;
}

/*
 * Compact single-character notation used for hand-written fixtures:
 * labels "abcd", text "2*a|bcd, 3*ba|dc, |bca". Each character is one
 * candidate; whitespace is ignored; an item without '|' is rejected.
 */
inline APProfile parse_compact(std::string_view labels, std::string_view text,
                               Consistency consistency = Consistency::Required) {
  std::vector<std::string> names;
  for (char c : labels) names.emplace_back(1, c);
  const std::size_t m = names.size();
  std::vector<APBallot> ballots;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string item;
    for (char c : text.substr(pos, end - pos)) {
      if (c != ' ') item.push_back(c);
    }
    pos = end + 1;
    if (item.empty()) continue;
    Rational weight(1);
    if (auto star = item.find('*'); star != std::string::npos) {
      weight = Rational::parse(item.substr(0, star));
      item = item.substr(star + 1);
    }
    auto bar = item.find('|');
    if (bar == std::string::npos) throw InputError("compact ballot '" + item + "' has no '|'");
    std::vector<Candidate> ranking;
    for (char c : item) {
      if (c == '|') continue;
      auto at = labels.find(c);
      if (at == std::string_view::npos) throw InputError(std::string("unknown candidate '") + c + "'");
      ranking.push_back(static_cast<Candidate>(at));
    }
    if (ranking.size() != m) throw InputError("compact ballot '" + item + "' must rank every candidate");
    ballots.push_back(APBallot::with_threshold(std::move(ranking), bar, weight));
  }
  return APProfile(m, std::move(ballots), std::move(names), consistency);
}

// Approval-only shorthand: "2*a, 6*ab, 4*abc" ("-" or empty for an empty ballot).
inline ApprovalProfile parse_compact_approvals(std::string_view labels, std::string_view text) {
  std::vector<std::string> names;
  for (char c : labels) names.emplace_back(1, c);
  std::vector<ApprovalBallot> ballots;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string item;
    for (char c : text.substr(pos, end - pos)) {
      if (c != ' ') item.push_back(c);
    }
    pos = end + 1;
    if (item.empty()) continue;
    Rational weight(1);
    if (auto star = item.find('*'); star != std::string::npos) {
      weight = Rational::parse(item.substr(0, star));
      item = item.substr(star + 1);
    }
    ApprovalBallot b{{}, weight};
    for (char c : item) {
      if (c == '-') continue;
      auto at = labels.find(c);
      if (at == std::string_view::npos) throw InputError(std::string("unknown candidate '") + c + "'");
      b.approved.push_back(static_cast<Candidate>(at));
    }
    ballots.push_back(std::move(b));
  }
  const std::size_t m = names.size();
  return ApprovalProfile(m, std::move(ballots), std::move(names));
}

}  // namespace avr
