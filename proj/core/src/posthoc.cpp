#include "srhsd/posthoc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "srhsd/errors.hpp"
#include "srhsd/range_dist.hpp"

namespace srhsd {
namespace {

void require_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
}

Eigen::MatrixXd successive_differences(Eigen::Index k) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k - 1, k);
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    d(i, i) = 1.0;
    d(i, i + 1) = -1.0;
  }
  return d;
}

}  // namespace

const char* to_string(DfMode mode) noexcept {
  return mode == DfMode::Infinite ? "inf" : "n-1";
}

const char* to_string(RhoSource source) noexcept {
  return source == RhoSource::Assumed ? "assumed" : "estimated";
}

void CutoffSpec::validate() const {
  require_alpha(alpha);
  require(k >= 2, "cutoff needs k >= 2 assets");
  require(n >= 2, "cutoff needs n >= 2 observations");
  if (!rank_one_admissible(rho, k)) {
    std::ostringstream os;
    os << "rho=" << rho << " outside the positive-definite range for k=" << k;
    throw DomainError(os.str());
  }
}

RangeDistParams CutoffSpec::range_params() const {
  return {k, df_mode == DfMode::Infinite ? kInfiniteDf : static_cast<double>(n - 1)};
}

double CutoffSpec::scale() const {
  const double denom = df_mode == DfMode::Infinite ? static_cast<double>(n)
                                                   : static_cast<double>(n - 1);
  return std::sqrt((1.0 - rho) / denom);
}

double tukey_critical_value(const CutoffSpec& spec) {
  spec.validate();
  return qtukey(1.0 - spec.alpha, spec.range_params());
}

double hsd_cutoff(const CutoffSpec& spec) {
  return tukey_critical_value(spec) * spec.scale();
}

double bonferroni_cutoff(double alpha, int k, long n, double rho) {
  CutoffSpec{alpha, DfMode::Infinite, rho, k, n}.validate();
  const double comparisons = 0.5 * k * (k - 1.0);
  const double z = std_normal_quantile(1.0 - alpha / comparisons);
  return std::sqrt(2.0 * (1.0 - rho) / static_cast<double>(n)) * z;
}

double range_pvalue(double observed, const CutoffSpec& spec) {
  spec.validate();
  require(observed >= 0.0, "observed range must be nonnegative");
  return 1.0 - ptukey(observed / spec.scale(), spec.range_params());
}

DecisionMatrix pairwise_decisions(const SrEstimate& sr, double cutoff) {
  require(cutoff > 0.0, "pairwise cutoff must be positive");
  const auto k = sr.k();
  DecisionMatrix out = DecisionMatrix::Constant(k, k, false);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const bool reject = std::abs(sr.sr(i) - sr.sr(j)) >= cutoff;
      out(i, j) = reject;
      out(j, i) = reject;
    }
  }
  return out;
}

double observed_range(const SrEstimate& sr) {
  require(sr.k() >= 1, "observed range of an empty vector");
  return sr.sr.maxCoeff() - sr.sr.minCoeff();
}

GlobalTestResult global_equality_test(const SrEstimate& est, const CorrModel& model,
                                      CovForm form) {
  const auto k = est.k();
  require(k >= 2, "global equality test needs k >= 2");
  require(model.p() == k, "global equality test: model dimension mismatch");
  require(est.n >= 2, "global equality test needs the sample size n");
  const SrEstimate pp = est.per_period();
  const double n = static_cast<double>(pp.n);
  const Eigen::MatrixXd d = successive_differences(k);
  // n * Sigma-hat, the per-observation covariance of the ratios.
  const Eigen::MatrixXd omega = sr_covariance({pp.sr}, model, pp.n, form) * n;
  const Eigen::MatrixXd contrast_cov = d * omega * d.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(contrast_cov);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = std::max(eig.eigenvalues().maxCoeff(), omega.diagonal().maxCoeff());
  if (!(lo > 0.0) || hi / lo > 1e12) {
    std::ostringstream os;
    os << "global equality test: contrast covariance is singular (condition number "
       << (lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity()) << ")";
    throw NumericError(os.str());
  }
  const Eigen::VectorXd diffs = d * pp.sr;
  const Eigen::VectorXd solved = contrast_cov.ldlt().solve(diffs);
  GlobalTestResult out;
  out.stat = std::max(0.0, n * diffs.dot(solved));
  out.df = static_cast<int>(k - 1);
  out.pvalue = boost::math::gamma_q(0.5 * out.df, 0.5 * out.stat);
  return out;
}

PairedDiff paired_diff_params(double snr, double eps, double rho, long n) {
  require(n >= 2, "paired difference needs n >= 2");
  const double nn = static_cast<double>(n);
  const double one_eps = 1.0 + eps;
  PairedDiff out;
  out.mean = eps * snr;
  out.variance = 2.0 * (1.0 - rho) / nn +
                 snr * snr / (2.0 * nn) *
                     (1.0 + one_eps * one_eps - 2.0 * rho * rho * one_eps);
  return out;
}

namespace {

// Cutoffs and decisions shared by the returns and summary paths. `pp` holds
// per-period ratios.
void fill_range_test(PosthocReport& rep, const SrEstimate& pp, const PosthocOptions& opts) {
  const int k = static_cast<int>(pp.k());
  const double annual = std::sqrt(pp.periods_per_year);
  CutoffSpec inf{opts.alpha, DfMode::Infinite, rep.rho_used, k, pp.n};
  CutoffSpec ndf{opts.alpha, DfMode::NMinus1, rep.rho_used, k, pp.n};
  const double hsd_inf = hsd_cutoff(inf);
  const double hsd_ndf = hsd_cutoff(ndf);
  const double bc = bonferroni_cutoff(opts.alpha, k, pp.n, rep.rho_used);
  const CutoffSpec& selected = opts.df_mode == DfMode::Infinite ? inf : ndf;
  const double cutoff = opts.df_mode == DfMode::Infinite ? hsd_inf : hsd_ndf;
  const double range = observed_range(pp);

  rep.alpha = opts.alpha;
  rep.df_mode = opts.df_mode;
  rep.observed_range = range * annual;
  rep.hsd_inf = hsd_inf * annual;
  rep.hsd_ndf = hsd_ndf * annual;
  rep.bc = bc * annual;
  rep.selected_cutoff = cutoff * annual;
  rep.range_pvalue = range_pvalue(range, selected);
  rep.decisions = pairwise_decisions(pp, cutoff);
  rep.sr = annualize(pp);
}

}  // namespace

PosthocReport run_posthoc(const ReturnsPanel& panel, const PosthocOptions& opts) {
  require_alpha(opts.alpha);
  const int k = static_cast<int>(panel.p());
  require(k >= 2, "the range test needs at least 2 assets");
  PosthocReport rep;
  const SrEstimate pp = sharpe_ratios(panel, opts.risk_free_per_period);
  rep.sample_corr = sample_correlation(panel);

  if (panel.n() >= 3) rep.rho_median = estimate_rho_median(panel);
  if (opts.rho) {
    require(rank_one_admissible(*opts.rho, k), "assumed rho outside the positive-definite range");
    rep.rho_used = *opts.rho;
    rep.rho_source = RhoSource::Assumed;
  } else {
    require(rep.rho_median.has_value(), "estimating rho needs n >= 3 observations");
    const ClampedRho clamped = clamp_to_rank_one_domain(*rep.rho_median, k);
    rep.rho_used = clamped.rho;
    rep.rho_source = RhoSource::Estimated;
    if (clamped.clamped) {
      std::ostringstream os;
      os << "estimated rho " << *rep.rho_median << " clamped to " << clamped.rho
         << " to keep the rank-one model positive definite";
      rep.warnings.push_back(os.str());
    }
  }

  rep.global_form = opts.global_form;
  bool use_rank_one = !opts.global_uses_sample_corr;
  if (opts.global_uses_sample_corr) {
    try {
      rep.global = global_equality_test(pp, CorrModel::full(rep.sample_corr), opts.global_form);
      rep.global_model = "sample";
    } catch (const std::exception& e) {
      // Collinear assets make the sample correlation singular.
      rep.warnings.push_back(std::string("sample correlation unusable for the global test (") +
                             e.what() + "); used the rank-one model instead");
      use_rank_one = true;
    }
  }
  if (use_rank_one) {
    rep.global_model = "rank_one";
    rep.global = global_equality_test(pp, CorrModel::rank_one(rep.rho_used, k), opts.global_form);
  }
  fill_range_test(rep, pp, opts);
  return rep;
}

PosthocReport run_posthoc_summary(const SrEstimate& est, const PosthocOptions& opts) {
  require_alpha(opts.alpha);
  const int k = static_cast<int>(est.k());
  require(k >= 2, "the range test needs at least 2 assets");
  require(est.n >= 2, "summary-statistic input needs the number of observations n");
  require(opts.rho.has_value(), "summary-statistic input needs an assumed rho");
  require(rank_one_admissible(*opts.rho, k), "assumed rho outside the positive-definite range");
  PosthocReport rep;
  rep.rho_used = *opts.rho;
  rep.rho_source = RhoSource::Assumed;
  const SrEstimate pp = est.per_period();
  rep.global_form = opts.global_form;
  rep.global_model = "rank_one";
  rep.global = global_equality_test(pp, CorrModel::rank_one(rep.rho_used, k), opts.global_form);
  fill_range_test(rep, pp, opts);
  return rep;
}

}  // namespace srhsd
