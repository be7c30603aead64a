#include "srhsd/sr_core.hpp"

#include <cmath>
#include <sstream>

#include "srhsd/errors.hpp"

namespace srhsd {

SrEstimate SrEstimate::per_period() const {
  SrEstimate out = *this;
  if (annualized) {
    out.sr /= std::sqrt(periods_per_year);
    out.annualized = false;
  }
  return out;
}

SnrVector SnrVector::constant(double value, int p) {
  require(std::isfinite(value), "signal-noise ratio must be finite");
  return {Eigen::VectorXd::Constant(p, value)};
}

SnrVector SnrVector::from_annual(const Eigen::VectorXd& annual, double periods_per_year) {
  require(periods_per_year > 0.0, "periods per year must be positive");
  require(annual.allFinite(), "signal-noise ratios must be finite");
  return {annual / std::sqrt(periods_per_year)};
}

bool SnrVector::is_constant() const noexcept {
  if (snr.size() == 0) return true;
  return (snr.array() == snr(0)).all();
}

const char* to_string(CovForm form) noexcept {
  return form == CovForm::Simple ? "simple" : "full";
}

SrEstimate sharpe_ratios(const ReturnsPanel& panel, double risk_free_per_period) {
  require(std::isfinite(risk_free_per_period), "risk-free rate must be finite");
  const auto n = panel.n();
  require(n >= 2, "Sharpe ratio needs at least 2 observations");
  SrEstimate est;
  est.sr.resize(panel.p());
  est.n = static_cast<long>(n);
  est.periods_per_year = panel.periods_per_year;
  est.asset_names = panel.asset_names;
  for (Eigen::Index j = 0; j < panel.p(); ++j) {
    const auto col = panel.values.col(j);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / static_cast<double>(n - 1);
    if (negligible_spread(std::sqrt(var), col.cwiseAbs().maxCoeff())) {
      throw DegenerateInputError("asset '" + panel.asset_names[j] + "' has zero variance",
                                 panel.asset_names[j]);
    }
    est.sr(j) = (mean - risk_free_per_period) / std::sqrt(var);
  }
  return est;
}

SrEstimate annualize(const SrEstimate& est) {
  if (est.annualized) throw StateError("Sharpe ratios are already annualized");
  SrEstimate out = est;
  out.sr *= std::sqrt(est.periods_per_year);
  out.annualized = true;
  return out;
}

SrEstimate sr_from_summary(const Eigen::VectorXd& annual_return_pct,
                           const Eigen::VectorXd& annual_sd_pct, double risk_free_annual,
                           double periods_per_year, long n,
                           std::vector<std::string> names) {
  const auto k = annual_return_pct.size();
  require(annual_sd_pct.size() == k, "return and volatility vectors differ in length");
  require(periods_per_year > 0.0, "periods per year must be positive");
  require(std::isfinite(risk_free_annual), "risk-free rate must be finite");
  if (names.empty()) {
    for (Eigen::Index j = 0; j < k; ++j) names.push_back(default_asset_name(j));
  }
  require(static_cast<Eigen::Index>(names.size()) == k, "one name per fund required");
  SrEstimate est;
  est.sr.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (!(annual_sd_pct(j) > 0.0) || !std::isfinite(annual_sd_pct(j))) {
      std::ostringstream os;
      os << "fund '" << names[j] << "' has nonpositive volatility " << annual_sd_pct(j);
      throw DegenerateInputError(os.str(), names[j]);
    }
    require(std::isfinite(annual_return_pct(j)), "fund '" + names[j] + "' has a non-finite return");
    est.sr(j) = (annual_return_pct(j) - risk_free_annual) / annual_sd_pct(j);
  }
  est.n = n;
  est.periods_per_year = periods_per_year;
  est.annualized = true;
  est.asset_names = std::move(names);
  return est;
}

Eigen::VectorXd z_transform(const SrEstimate& est, const CorrModel& model,
                            const SnrVector& snr0) {
  if (est.annualized) throw StateError("z_transform expects per-period Sharpe ratios");
  require(model.kind() == CorrKind::RankOne, "z_transform needs a rank-one correlation model");
  require(model.p() == est.k() && snr0.snr.size() == est.k(),
          "z_transform: dimension mismatch");
  require(snr0.is_constant(), "z_transform: null signal-noise ratios must be constant");
  require(est.n >= 2, "z_transform needs the sample size");
  const Eigen::MatrixXd m = inv_sqrt_rank_one(model.rho(), model.p());
  return std::sqrt(static_cast<double>(est.n)) * (m * (est.sr - snr0.snr));
}

Eigen::MatrixXd sr_covariance(const SnrVector& snr, const CorrModel& model, long n,
                              CovForm form) {
  require(n >= 2, "sr_covariance needs n >= 2");
  require(snr.snr.size() == model.p(), "sr_covariance: dimension mismatch");
  require(snr.snr.allFinite(), "signal-noise ratios must be finite");
  const Eigen::MatrixXd r = model.matrix();
  Eigen::MatrixXd cov = r;
  if (form == CovForm::Full) {
    const Eigen::MatrixXd hadamard = r.cwiseProduct(r);
    cov += 0.5 * snr.snr.asDiagonal() * hadamard * snr.snr.asDiagonal();
  }
  return cov / static_cast<double>(n);
}

}  // namespace srhsd
