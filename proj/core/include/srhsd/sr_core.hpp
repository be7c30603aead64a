#pragma once

// Sharpe ratio estimation and the asymptotic normal algebra used by the
// range test.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "srhsd/corr_model.hpp"
#include "srhsd/panel.hpp"

namespace srhsd {

/// Per-asset Sharpe ratios. Values are per-period unless `annualized`.
struct SrEstimate {
  Eigen::VectorXd sr;
  long n = 0;  // observations behind each ratio; 0 when unknown
  double periods_per_year = 1.0;
  bool annualized = false;
  std::vector<std::string> asset_names;

  Eigen::Index k() const noexcept { return sr.size(); }
  /// Per-period view: divides by sqrt(periods_per_year) when annualized.
  SrEstimate per_period() const;
};

/// Population signal-noise ratios, per-period units.
struct SnrVector {
  Eigen::VectorXd snr;

  static SnrVector constant(double value, int p);
  /// Converts yr^-1/2 values to per-period by dividing by sqrt(ppy).
  static SnrVector from_annual(const Eigen::VectorXd& annual, double periods_per_year);
  bool is_constant() const noexcept;
};

enum class CovForm { Simple, Full };

const char* to_string(CovForm form) noexcept;

/// (mean - rf) / sd per column, sd with the n - 1 denominator.
SrEstimate sharpe_ratios(const ReturnsPanel& panel, double risk_free_per_period = 0.0);

/// Multiplies by sqrt(periods_per_year). StateError if already annualized.
SrEstimate annualize(const SrEstimate& est);

/// Ratios from annualized percent returns and volatilities. The result is
/// marked annualized at `periods_per_year`. Throws DegenerateInputError
/// naming the fund on a nonpositive volatility.
SrEstimate sr_from_summary(const Eigen::VectorXd& annual_return_pct,
                           const Eigen::VectorXd& annual_sd_pct,
                           double risk_free_annual = 0.0, double periods_per_year = 1.0,
                           long n = 0, std::vector<std::string> names = {});

/// sqrt(n) R^(-1/2) (sr - snr0) for a rank-one R and constant snr0.
Eigen::VectorXd z_transform(const SrEstimate& est, const CorrModel& model,
                            const SnrVector& snr0);

/// Approximate covariance of the Sharpe ratio vector:
/// Simple: R / n.  Full: (R + diag(snr) (R o R) diag(snr) / 2) / n.
Eigen::MatrixXd sr_covariance(const SnrVector& snr, const CorrModel& model, long n,
                              CovForm form);

}  // namespace srhsd
