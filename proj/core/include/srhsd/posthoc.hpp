#pragma once

// The post-hoc range test on Sharpe ratios: HSD and Bonferroni cutoffs,
// range p-values, pairwise decisions, and the chi-square equality test run
// before it.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "srhsd/corr_model.hpp"
#include "srhsd/panel.hpp"
#include "srhsd/range_dist.hpp"
#include "srhsd/sr_core.hpp"

namespace srhsd {

/// Degrees of freedom of the studentized range behind the cutoff.
enum class DfMode {
  Infinite,  // range of normals, scale sqrt((1 - rho) / n)
  NMinus1,   // df = n - 1, scale sqrt((1 - rho) / (n - 1))
};

const char* to_string(DfMode mode) noexcept;

struct CutoffSpec {
  double alpha = 0.05;
  DfMode df_mode = DfMode::NMinus1;
  double rho = 0.0;
  int k = 2;
  long n = 2;

  void validate() const;
  RangeDistParams range_params() const;
  /// sqrt((1 - rho) / n) or sqrt((1 - rho) / (n - 1)) per df_mode.
  double scale() const;
};

/// Upper alpha quantile of the studentized range, q_{1-alpha}(k, df).
double tukey_critical_value(const CutoffSpec& spec);

/// HSD in per-period Sharpe units.
double hsd_cutoff(const CutoffSpec& spec);

/// sqrt(2 (1 - rho) / n) * Phi^-1(1 - alpha / C(k, 2)), per-period units.
double bonferroni_cutoff(double alpha, int k, long n, double rho);

/// 1 - ptukey(observed_range / scale) under the df mode of `spec`.
double range_pvalue(double observed_range, const CutoffSpec& spec);

using DecisionMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Entry (i, j) is true iff |sr_i - sr_j| >= cutoff.
DecisionMatrix pairwise_decisions(const SrEstimate& sr, double cutoff);

/// max sr - min sr.
double observed_range(const SrEstimate& sr);

struct GlobalTestResult {
  double stat = 0.0;
  int df = 0;
  double pvalue = 1.0;
};

/// Chi-square test of equal signal-noise ratios on the k - 1 successive
/// differences, with covariance from sr_covariance(form) at the plug-in
/// ratios. NumericError when the contrast covariance is singular.
GlobalTestResult global_equality_test(const SrEstimate& est, const CorrModel& model,
                                      CovForm form = CovForm::Simple);

struct PairedDiff {
  double mean = 0.0;
  double variance = 0.0;
};

/// Asymptotic law of sr_1 - sr_2 when the signal-noise ratios are
/// snr (1 + eps) and snr with correlation rho.
PairedDiff paired_diff_params(double snr, double eps, double rho, long n);

enum class RhoSource { Assumed, Estimated };

const char* to_string(RhoSource source) noexcept;

/// Cutoffs, ranges and Sharpe ratios are annualized (yr^-1/2); decisions and
/// p-values are unit-free.
struct PosthocReport {
  SrEstimate sr;
  double rho_used = 0.0;
  RhoSource rho_source = RhoSource::Assumed;
  std::optional<double> rho_median;  // raw median estimate when computed
  double alpha = 0.05;
  DfMode df_mode = DfMode::NMinus1;
  double observed_range = 0.0;
  double hsd_inf = 0.0;
  double hsd_ndf = 0.0;
  double bc = 0.0;
  double selected_cutoff = 0.0;
  double range_pvalue = 1.0;
  DecisionMatrix decisions;
  GlobalTestResult global;
  CovForm global_form = CovForm::Simple;
  std::string global_model;  // "sample" or "rank_one"
  Eigen::MatrixXd sample_corr;  // empty for summary-statistic inputs
  std::vector<std::string> warnings;
};

struct PosthocOptions {
  double alpha = 0.05;
  DfMode df_mode = DfMode::NMinus1;
  std::optional<double> rho;  // assumed rho; estimated by median when unset
  double risk_free_per_period = 0.0;
  CovForm global_form = CovForm::Simple;
  bool global_uses_sample_corr = true;  // else the rank-one model at rho_used
};

/// Global test followed by the range test on a returns panel.
PosthocReport run_posthoc(const ReturnsPanel& panel, const PosthocOptions& opts);

/// Range test from Sharpe ratios alone (no returns): rho must be assumed and
/// `est.n` set. The global test uses the rank-one model.
PosthocReport run_posthoc_summary(const SrEstimate& est, const PosthocOptions& opts);

}  // namespace srhsd
