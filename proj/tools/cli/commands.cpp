#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "csv_io.hpp"
#include "experiments.hpp"
#include "report.hpp"
#include "srhsd/errors.hpp"
#include "srhsd/mc_engine.hpp"
#include "srhsd/posthoc.hpp"
#include "srhsd/range_dist.hpp"
#include "srhsd/sr_core.hpp"
#include "svg_chart.hpp"

namespace srhsd::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

DfMode parse_df_mode(const std::string& s) {
  if (s == "inf") return DfMode::Infinite;
  if (s == "n-1") return DfMode::NMinus1;
  throw UsageError("--df must be 'inf' or 'n-1'");
}

double parse_real(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(flag + ": '" + s + "' is not a number");
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(kSeedEnvVar) + " is not an unsigned integer");
  }
}

// Writes to --output when given, else to `out`; the whole payload is
// rendered first so a failure leaves no partial file.
void emit(const std::string& path, std::ostream& out, const std::string& payload) {
  if (path.empty() || path == "-") {
    out << payload;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << payload;
}

struct ReportFlags {
  std::string format = "text";
  std::string output;
  std::string svg;
  double alpha = 0.05;
  std::string df = "n-1";
  std::string global_form = "simple";
};

void add_report_flags(CLI::App* cmd, ReportFlags& f) {
  cmd->add_option("--alpha", f.alpha, "Type I rate")->capture_default_str();
  cmd->add_option("--df", f.df, "Cutoff degrees of freedom: inf | n-1")
      ->check(CLI::IsMember({"inf", "n-1"}))
      ->capture_default_str();
  cmd->add_option("--format", f.format, "Report format: json | text | csv")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", f.output, "Report path (default stdout)");
  cmd->add_option("--svg", f.svg, "Write a Sharpe ratio chart with +/- HSD bars");
  cmd->add_option("--global-form", f.global_form,
                  "Covariance form of the global test: simple | full")
      ->check(CLI::IsMember({"simple", "full"}))
      ->capture_default_str();
}

void write_report(const ReportDocument& doc, const ReportFlags& f, std::ostream& out) {
  std::ostringstream body;
  if (f.format == "json") {
    write_json(body, doc);
  } else if (f.format == "csv") {
    write_csv(body, doc);
  } else {
    write_text(body, doc);
  }
  std::string svg;
  if (!f.svg.empty()) {
    std::ostringstream chart;
    write_svg_chart(chart, doc);
    svg = chart.str();
  }
  emit(f.output, out, body.str());
  if (!f.svg.empty()) emit(f.svg, out, svg);
}

struct TestArgs {
  std::string input;
  std::string freq = "daily";
  std::string rho = "estimate";
  double rf = 0.0;
  bool percent = false;
  std::string global_model = "sample";
  ReportFlags report;
};

int cmd_test(const TestArgs& a, std::ostream& out) {
  const double ppy = parse_frequency(a.freq);
  const ReturnsPanel panel = read_returns_csv_file(a.input, ppy, a.percent);
  if (panel.p() < 2) {
    throw DomainError("the range test needs at least 2 assets; '" + a.input + "' has " +
                      std::to_string(panel.p()));
  }
  PosthocOptions opts;
  opts.alpha = a.report.alpha;
  opts.df_mode = parse_df_mode(a.report.df);
  if (a.rho != "estimate") opts.rho = parse_real(a.rho, "--rho");
  opts.risk_free_per_period = a.rf;
  opts.global_form = a.report.global_form == "full" ? CovForm::Full : CovForm::Simple;
  opts.global_uses_sample_corr = a.global_model == "sample";
  const PosthocReport rep = run_posthoc(panel, opts);
  write_report(make_document(rep, "returns", a.input, static_cast<long>(panel.n())), a.report,
               out);
  return kExitOk;
}

struct SummaryArgs {
  std::string input;
  long n = 0;
  double rho = 0.0;
  double rf_annual = 0.0;
  std::string freq = "annual";
  ReportFlags report;
};

int cmd_test_summary(const SummaryArgs& a, std::ostream& out) {
  const double ppy = parse_frequency(a.freq);
  const SummaryTable table = read_summary_csv_file(a.input);
  const auto k = static_cast<Eigen::Index>(table.names.size());
  if (k < 2) throw DomainError("the range test needs at least 2 funds");
  const Eigen::VectorXd ret = Eigen::Map<const Eigen::VectorXd>(table.annual_return_pct.data(), k);
  const Eigen::VectorXd sd = Eigen::Map<const Eigen::VectorXd>(table.annual_sd_pct.data(), k);
  const SrEstimate est = sr_from_summary(ret, sd, a.rf_annual, ppy, a.n, table.names);
  PosthocOptions opts;
  opts.alpha = a.report.alpha;
  opts.df_mode = parse_df_mode(a.report.df);
  opts.rho = a.rho;
  opts.global_form = a.report.global_form == "full" ? CovForm::Full : CovForm::Simple;
  const PosthocReport rep = run_posthoc_summary(est, opts);
  write_report(make_document(rep, "summary", a.input, a.n), a.report, out);
  return kExitOk;
}

struct DistArgs {
  std::string op;
  int k = 0;
  std::string df = "inf";
  std::optional<double> q;
  std::optional<double> p;
};

int cmd_dist(const DistArgs& a, std::ostream& out) {
  RangeDistParams params{a.k, a.df == "inf" ? kInfiniteDf : parse_real(a.df, "--df")};
  double value;
  if (a.op == "cdf") {
    if (!a.q) throw UsageError("--op cdf needs --q");
    value = ptukey(*a.q, params);
  } else {
    if (!a.p) throw UsageError("--op quantile needs --p");
    value = qtukey(*a.p, params);
  }
  out << std::setprecision(15) << value << '\n';
  return kExitOk;
}

struct SimulateArgs {
  std::string experiment;
  long reps = 5000;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string raw_out;
  int workers = 0;
  double alpha = 0.05;
  std::optional<std::string> df;
  std::vector<long> n_grid;
  std::vector<int> p_grid;
  std::vector<double> rho_grid;
  std::vector<double> psnr_grid;
  std::optional<std::string> corr;
  std::optional<std::string> design;
  std::optional<std::string> rho_policy;
  std::optional<double> snr;
};

RhoPolicy parse_rho_policy(const std::string& s) {
  if (s == "true") return RhoPolicy::true_rho();
  if (s == "estimated") return RhoPolicy::estimated();
  const std::string prefix = "assumed:";
  if (s.rfind(prefix, 0) == 0) {
    return RhoPolicy::assumed(parse_real(s.substr(prefix.size()), "--rho-policy"));
  }
  throw UsageError("--rho-policy must be true, estimated or assumed:<value>");
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  ExperimentOverrides o;
  o.replications = a.reps;
  o.seed = a.seed ? *a.seed : default_seed();
  o.alpha = a.alpha;
  if (a.df) o.df_mode = parse_df_mode(*a.df);
  o.n_grid = a.n_grid;
  o.p_grid = a.p_grid;
  o.rho_grid = a.rho_grid;
  o.psnr_grid = a.psnr_grid;
  if (a.corr) o.corr_kind = *a.corr == "ar1" ? CorrKind::Ar1 : CorrKind::RankOne;
  if (a.design) {
    o.design = *a.design == "one-good"    ? Design::OneGood
               : *a.design == "half-good" ? Design::HalfGood
                                          : Design::NullRange;
  }
  if (a.rho_policy) o.rho_policy = parse_rho_policy(*a.rho_policy);
  o.snr = a.snr;

  const std::vector<SimSpec> cells = plan_experiment(a.experiment, o);
  const bool keep_raw = a.experiment == "null-basic";
  RunOptions run_opts{a.workers, keep_raw};
  std::vector<SimResult> results;
  results.reserve(cells.size());
  for (const SimSpec& cell : cells) results.push_back(run_simulation(cell, run_opts));

  std::ostringstream table;
  write_results_csv(table, results);
  emit(a.out, out, table.str());
  if (keep_raw) {
    std::string raw_path = a.raw_out;
    if (raw_path.empty() && !a.out.empty() && a.out != "-") raw_path = a.out + ".raw.csv";
    if (!raw_path.empty()) {
      std::ostringstream raw;
      write_raw_csv(raw, results.front());
      emit(raw_path, out, raw.str());
    }
  }
  return kExitOk;
}

}  // namespace

double parse_frequency(const std::string& freq) {
  if (freq == "daily") return 252.0;
  if (freq == "weekly") return 52.0;
  if (freq == "monthly") return 12.0;
  if (freq == "quarterly") return 4.0;
  if (freq == "annual") return 1.0;
  const std::string prefix = "custom:";
  if (freq.rfind(prefix, 0) == 0) {
    const double v = parse_real(freq.substr(prefix.size()), "--freq");
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("--freq custom periods must be positive");
    return v;
  }
  throw UsageError("--freq must be daily, weekly, monthly, quarterly, annual or custom:<ppy>");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Post-hoc range test for Sharpe ratios", "srhsd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  TestArgs test;
  auto* test_cmd = app.add_subcommand("test", "Global equality test and post-hoc range test on a returns CSV");
  test_cmd->add_option("--input", test.input, "Returns CSV (header of asset names, optional date column)")
      ->required();
  test_cmd->add_option("--freq", test.freq, "daily | weekly | monthly | quarterly | annual | custom:<ppy>")
      ->capture_default_str();
  test_cmd->add_option("--rho", test.rho, "'estimate' (median sample correlation) or a value")
      ->capture_default_str();
  test_cmd->add_option("--rf", test.rf, "Risk-free rate per period")->capture_default_str();
  test_cmd->add_flag("--percent", test.percent, "Cells are percent returns (1.5 = 1.5%)");
  test_cmd->add_option("--global-model", test.global_model,
                       "Correlation behind the global test: sample | rank-one")
      ->check(CLI::IsMember({"sample", "rank-one"}))
      ->capture_default_str();
  add_report_flags(test_cmd, test.report);

  SummaryArgs summary;
  auto* sum_cmd = app.add_subcommand("test-summary",
                                     "Range test from annualized return and volatility summaries");
  sum_cmd->add_option("--input", summary.input, "CSV of name,annual_return_pct,annual_sd_pct")
      ->required();
  sum_cmd->add_option("--n", summary.n, "Number of return observations behind the summaries")
      ->required()
      ->check(CLI::Range(2L, std::numeric_limits<long>::max()));
  sum_cmd->add_option("--rho", summary.rho, "Assumed common correlation")->required();
  sum_cmd->add_option("--rf-annual", summary.rf_annual, "Annual risk-free rate, percent")
      ->capture_default_str();
  sum_cmd->add_option("--freq", summary.freq, "Periodicity of the n observations")
      ->capture_default_str();
  add_report_flags(sum_cmd, summary.report);

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Studentized range CDF or quantile");
  dist_cmd->add_option("--op", dist.op, "cdf | quantile")
      ->required()
      ->check(CLI::IsMember({"cdf", "quantile"}));
  dist_cmd->add_option("--k", dist.k, "Number of groups (>= 2)")->required();
  dist_cmd->add_option("--df", dist.df, "Degrees of freedom or 'inf'")->capture_default_str();
  dist_cmd->add_option("--q", dist.q, "Quantile at which to evaluate the CDF");
  dist_cmd->add_option("--p", dist.p, "Probability to invert");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo calibration experiments");
  sim_cmd->add_option("--experiment", sim.experiment, "Preset name")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  sim_cmd->add_option("--reps", sim.reps, "Replications per grid cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed,
                      std::string("Master seed (default $") + kSeedEnvVar + " or 1)");
  sim_cmd->add_option("--out", sim.out, "Results CSV path (default stdout)");
  sim_cmd->add_option("--raw-out", sim.raw_out,
                      "null-basic: per-replication ranges and p-values (default <out>.raw.csv)");
  sim_cmd->add_option("--workers", sim.workers, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sim_cmd->add_option("--alpha", sim.alpha, "Nominal type I rate")->capture_default_str();
  sim_cmd->add_option("--df", sim.df, "Force the cutoff df mode: inf | n-1")
      ->check(CLI::IsMember({"inf", "n-1"}));
  sim_cmd->add_option("--n-grid", sim.n_grid, "Sample sizes (days)")->delimiter(',');
  sim_cmd->add_option("--p-grid", sim.p_grid, "Asset counts")->delimiter(',');
  sim_cmd->add_option("--rho-grid", sim.rho_grid, "Correlations")->delimiter(',');
  sim_cmd->add_option("--psnr-grid", sim.psnr_grid, "Good-asset SNRs, yr^-1/2")->delimiter(',');
  sim_cmd->add_option("--corr", sim.corr, "custom: rank-one | ar1")
      ->check(CLI::IsMember({"rank-one", "ar1"}));
  sim_cmd->add_option("--design", sim.design, "custom: null | one-good | half-good")
      ->check(CLI::IsMember({"null", "one-good", "half-good"}));
  sim_cmd->add_option("--rho-policy", sim.rho_policy, "custom: true | estimated | assumed:<v>");
  sim_cmd->add_option("--snr", sim.snr, "custom: common (null) or good-asset SNR, yr^-1/2");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (e.get_exit_code() == 0) return kExitOk;
    return kExitUsageError;
  }

  try {
    if (*test_cmd) return cmd_test(test, out);
    if (*sum_cmd) return cmd_test_summary(summary, out);
    if (*dist_cmd) return cmd_dist(dist, out);
    if (*sim_cmd) return cmd_simulate(sim, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const StateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsageError;
}

}  // namespace srhsd::cli
