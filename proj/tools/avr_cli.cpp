// avr: approval-with-runoff toolkit.
//
//   avr score      --profile FILE --rule NAME
//   avr finalists  --profile FILE --rule NAME
//   avr winner     --profile FILE --rule NAME
//   avr sweep-alpha --profile FILE [--steps N]
//   avr simulate   [--distribution triangular|gaussian] [--d LIST] [--alpha LIST]
//   avr axioms     [--profile FILE --rule NAME] [--samples N]
//   avr network    --profile FILE [--threshold R] [--format dot|json]
//   avr debias     --profile FILE --targets FILE
//
// Exit status: 0 ok, 1 input error, 2 internal error, 3 inconclusive search.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "avr/avr.hpp"

namespace {

using avr::report::Format;

constexpr int kInputError = 1;
constexpr int kInternal = 2;
constexpr int kInconclusive = 3;

struct Options {
  std::string profile;
  std::string rule = "mav";
  std::string alpha;
  std::string quota_beta;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
  // sweep-alpha
  std::size_t steps = 100;
  // simulate
  std::string distribution = "triangular";
  std::vector<double> ds{0.1, 0.25, 0.33, 0.5};
  std::vector<double> alphas;
  std::size_t voters = 20000;
  std::size_t candidates = 1000;
  std::string placement = "grid";
  // axioms
  std::size_t samples = 500;
  bool unrestricted = false;
  bool all_axioms = false;
  // network
  std::string threshold = "0";
  // debias
  std::string targets;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw avr::InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw avr::InputError("cannot write '" + o.out + "'");
  f << text;
}

Format format_of(const Options& o, std::initializer_list<const char*> allowed) {
  bool ok = false;
  for (const char* a : allowed) ok = ok || o.format == a;
  if (!ok) throw avr::InputError("format '" + o.format + "' is not supported by this command");
  if (o.format == "csv") return Format::Csv;
  if (o.format == "json") return Format::Json;
  return Format::Text;
}

avr::ProfileFile load(const Options& o) {
  if (o.profile.empty()) throw avr::InputError("--profile is required");
  return avr::parse_profile(read_file(o.profile));
}

// --rule, refined by --alpha (for alpha-av / alpha-seq) and --quota-beta.
avr::RuleSpec rule_of(const Options& o) {
  std::string name = o.rule;
  if (!o.alpha.empty()) {
    if (name == "alpha-av" || name == "alpha-seq") {
      name += ":" + o.alpha;
    } else {
      throw avr::InputError("--alpha applies to --rule alpha-av or alpha-seq");
    }
  }
  if (!o.quota_beta.empty()) {
    if (name != "enephr") throw avr::InputError("--quota-beta applies to --rule enephr");
    name += ":" + o.quota_beta;
  }
  return avr::parse_rule(name);
}

int cmd_score(const Options& o) {
  auto f = load(o);
  auto spec = rule_of(o);
  auto out = avr::evaluate(f.approvals, spec);
  emit(o, avr::report::score_table(f.approvals, spec, out, format_of(o, {"text", "csv", "json"})));
  return 0;
}

int cmd_finalists(const Options& o) {
  auto f = load(o);
  auto out = avr::evaluate(f.approvals, rule_of(o));
  const auto fmt = format_of(o, {"text", "json"});
  if (fmt == Format::Json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& p : out.pairs) j.push_back(avr::report::pair_text(f.labels, p));
    emit(o, j.dump(2) + "\n");
  } else {
    std::string s;
    for (const auto& p : out.pairs) s += avr::report::pair_text(f.labels, p) + "\n";
    emit(o, s);
  }
  return 0;
}

int cmd_winner(const Options& o) {
  auto f = load(o);
  const auto& p = f.require_ranked();
  emit(o, avr::report::runoff_text(p, avr::avr(p, rule_of(o)), format_of(o, {"text", "json"})));
  return 0;
}

int cmd_sweep(const Options& o) {
  auto f = load(o);
  auto rows = avr::alpha_sweep(f.approvals, o.steps);
  emit(o, avr::report::sweep_table(f.approvals, rows, format_of(o, {"text", "csv", "json"})));
  return 0;
}

int cmd_simulate(const Options& o) {
  format_of(o, {"text", "csv"});
  avr::SpatialConfig cfg;
  cfg.distribution = avr::parse_distribution(o.distribution);
  cfg.n_voters = o.voters;
  cfg.n_candidates = o.candidates;
  cfg.seed = o.seed;
  if (o.placement == "grid") {
    cfg.placement = avr::Placement::Grid;
  } else if (o.placement == "sampled") {
    cfg.placement = avr::Placement::Sampled;
  } else {
    throw avr::InputError("placement must be grid or sampled");
  }
  if (o.ds.empty()) throw avr::InputError("--d needs at least one value");
  for (double d : o.ds) {
    cfg.d = d;
    cfg.check();
  }
  auto alphas = o.alphas.empty() ? avr::unit_grid(100) : o.alphas;
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw avr::InputError("alpha values must lie in [0, 1]");
  }
  emit(o, avr::sweep_csv(avr::sweep(cfg, alphas, o.ds)));
  return 0;
}

int cmd_axioms(const Options& o) {
  const auto fmt = format_of(o, {"text", "csv", "json"});
  avr::SearchBudget budget;
  budget.space = o.unrestricted ? avr::DeviationSpace::Unrestricted : avr::DeviationSpace::Consistent;
  if (!o.profile.empty()) {
    // Audit one profile.
    auto f = load(o);
    const auto& p = f.require_ranked();
    auto spec = rule_of(o);
    std::vector<std::pair<avr::Axiom, avr::SearchResult>> results;
    for (auto ax : {avr::Axiom::ParetoEfficiency, avr::Axiom::Monotonicity, avr::Axiom::WeakStrategyProofness,
                    avr::Axiom::StrongStrategyProofness, avr::Axiom::CloneProofness, avr::Axiom::WeakCloneProofness,
                    avr::Axiom::FavoriteConsistency}) {
      results.emplace_back(ax, avr::detail::check_axiom(p, spec, ax, budget));
    }
    bool inconclusive = false;
    if (fmt == Format::Json) {
      nlohmann::ordered_json doc = nlohmann::ordered_json::array();
      for (const auto& [ax, r] : results) {
        nlohmann::ordered_json j;
        j["axiom"] = std::string(avr::axiom_name(ax));
        j["status"] = std::string(avr::status_name(r.status));
        j["evaluated"] = r.evaluated;
        if (r.violation) j["violation"] = avr::report::violation_json(*r.violation);
        doc.push_back(j);
        inconclusive = inconclusive || r.status == avr::SearchStatus::Inconclusive;
      }
      emit(o, doc.dump(2) + "\n");
    } else {
      const char sep = fmt == Format::Csv ? ',' : '\t';
      std::string s = std::string("axiom") + sep + "status" + sep + "evaluated" + sep + "detail\n";
      for (const auto& [ax, r] : results) {
        std::string detail = r.violation ? r.violation->description : r.note;
        if (fmt == Format::Csv) detail = "\"" + detail + "\"";
        s += std::string(avr::axiom_name(ax)) + sep + std::string(avr::status_name(r.status)) + sep +
             std::to_string(r.evaluated) + sep + detail + "\n";
        inconclusive = inconclusive || r.status == avr::SearchStatus::Inconclusive;
      }
      emit(o, s);
    }
    return inconclusive ? kInconclusive : 0;
  }
  avr::GridOptions opt;
  opt.samples = o.samples;
  opt.seed = o.seed;
  opt.space = budget.space;
  auto axioms = avr::grid_axioms();
  if (o.all_axioms) {
    axioms.push_back(avr::Axiom::StrongStrategyProofness);
    axioms.push_back(avr::Axiom::CloneProofness);
    axioms.push_back(avr::Axiom::FavoriteConsistency);
  }
  auto rules = avr::grid_rules();
  rules.push_back(avr::RuleSpec::ccav_plus());
  rules.push_back(avr::RuleSpec::two_av());
  auto cells = avr::run_axiom_grid(opt, rules, axioms);
  emit(o, avr::report::grid_report(cells, fmt));
  bool inconclusive = false, failed = false;
  for (const auto& c : cells) {
    inconclusive = inconclusive || c.inconclusive > 0;
    failed = failed || !c.passed;
  }
  if (inconclusive) return kInconclusive;
  return failed ? kInternal : 0;
}

int cmd_network(const Options& o) {
  auto f = load(o);
  const auto fmt = o.format == "text" ? std::string("dot") : o.format;
  if (fmt != "dot" && fmt != "json") throw avr::InputError("network output is dot or json");
  auto g = avr::jaccard_affinity(f.approvals);
  emit(o, avr::export_network(g, avr::Rational::parse(o.threshold),
                              fmt == "dot" ? avr::NetworkFormat::Dot : avr::NetworkFormat::Json));
  return 0;
}

int cmd_debias(const Options& o) {
  auto f = load(o);
  if (o.targets.empty()) throw avr::InputError("--targets is required");
  avr::DebiasSpec spec{f.reported, avr::parse_target_shares(read_file(o.targets), f.labels)};
  const auto fmt = format_of(o, {"text", "csv"});
  avr::ProfileFile g = f;
  g.approvals = avr::debias(f.approvals, spec);
  if (f.ranked) g.ranked = avr::debias(*f.ranked, spec);
  if (fmt == Format::Text) {
    emit(o, avr::serialize_profile_file(g));
    return 0;
  }
  // Approval percentages before and after.
  auto before = avr::approval_scores(f.approvals);
  auto after = avr::approval_scores(g.approvals);
  std::string s = "candidate,approval_before,approval_after,share_before,share_after\n";
  for (std::size_t c = 0; c < f.labels.size(); ++c) {
    const auto sb = before[c] / f.approvals.total_weight();
    const auto sa = after[c] / g.approvals.total_weight();
    s += f.labels[c] + "," + before[c].to_string() + "," + after[c].to_string() + "," +
         avr::report::fixed(sb.to_double() * 100, 2) + "," + avr::report::fixed(sa.to_double() * 100, 2) + "\n";
  }
  emit(o, s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approval with runoff: committee rules, runoff winners, axiom audits and simulations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool profile, bool rule) {
    if (profile) sub->add_option("--profile", o.profile, "Profile file");
    if (rule) {
      sub->add_option("--rule", o.rule, "Rule name (mav, pav, ccav, spav, sccav, sphr, enephr, sav, triv, ccav+, 2av, ...)");
      sub->add_option("--alpha", o.alpha, "Alpha for --rule alpha-av / alpha-seq (exact rational)");
      sub->add_option("--quota-beta", o.quota_beta, "Quota fraction for --rule enephr");
    }
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--format", o.format, "Output format: text, csv, json, dot");
  };

  auto* score = app.add_subcommand("score", "Full score table of a rule");
  common(score, true, true);
  auto* finalists = app.add_subcommand("finalists", "Optimal pairs of a rule");
  common(finalists, true, true);
  auto* winner = app.add_subcommand("winner", "Runoff winners");
  common(winner, true, true);
  auto* sweep = app.add_subcommand("sweep-alpha", "Alpha spectrum from MAV to CCAV with exact breakpoints");
  common(sweep, true, false);
  sweep->add_option("--steps", o.steps, "Grid steps over [0,1]");
  auto* simulate = app.add_subcommand("simulate", "One-dimensional spatial model sweep (CSV)");
  common(simulate, false, false);
  simulate->add_option("--distribution", o.distribution, "triangular or gaussian");
  simulate->add_option("--d", o.ds, "Approval radii")->delimiter(',');
  simulate->add_option("--alpha", o.alphas, "Alpha values (default 0, 0.01, ..., 1)")->delimiter(',');
  simulate->add_option("--voters", o.voters, "Number of voters");
  simulate->add_option("--candidates", o.candidates, "Number of candidates");
  simulate->add_option("--placement", o.placement, "grid or sampled");
  simulate->add_option("--seed", o.seed, "Base seed");
  auto* axioms = app.add_subcommand("axioms", "Axiom audit of one profile, or the rule/property grid");
  common(axioms, true, true);
  axioms->add_option("--samples", o.samples, "Random profiles per checked cell");
  axioms->add_option("--seed", o.seed, "Seed for random profiles");
  axioms->add_flag("--unrestricted", o.unrestricted, "Allow ballot-inconsistent deviations");
  axioms->add_flag("--all", o.all_axioms, "Also strong strategy-proofness, clone-proofness, favorite-consistency");
  auto* network = app.add_subcommand("network", "Jaccard affinity network");
  common(network, true, false);
  network->add_option("--threshold", o.threshold, "Edges need Jaccard strictly above this");
  auto* debias = app.add_subcommand("debias", "Reweight by reported votes");
  common(debias, true, false);
  debias->add_option("--targets", o.targets, "File of '<label> <share>' lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (score->parsed()) return cmd_score(o);
    if (finalists->parsed()) return cmd_finalists(o);
    if (winner->parsed()) return cmd_winner(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (axioms->parsed()) return cmd_axioms(o);
    if (network->parsed()) return cmd_network(o);
    if (debias->parsed()) return cmd_debias(o);
  } catch (const avr::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
