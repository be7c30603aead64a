#pragma once

#include <Eigen/Dense>

#include "srhsd/panel.hpp"

namespace srhsd {

enum class CorrKind { RankOne, Ar1, Full };

const char* to_string(CorrKind kind) noexcept;

/// Correlation structure of p assets. Construction validates the
/// positive-definiteness constraints of each kind.
class CorrModel {
 public:
  static CorrModel rank_one(double rho, int p);
  static CorrModel ar1(double rho, int p);
  /// Symmetric, unit diagonal and positive definite, else DomainError.
  static CorrModel full(Eigen::MatrixXd matrix);

  CorrKind kind() const noexcept { return kind_; }
  /// Zero for Full models.
  double rho() const noexcept { return rho_; }
  int p() const noexcept { return p_; }
  Eigen::MatrixXd matrix() const;

 private:
  CorrModel(CorrKind kind, double rho, int p, Eigen::MatrixXd full)
      : kind_(kind), rho_(rho), p_(p), full_(std::move(full)) {}

  CorrKind kind_;
  double rho_;
  int p_;
  Eigen::MatrixXd full_;
};

/// Open lower limit -1/(p-1) of the positive-definite rank-one range.
double rank_one_rho_floor(int p);
bool rank_one_admissible(double rho, int p) noexcept;

/// (1 - rho) I + rho 11'.
Eigen::MatrixXd make_rank_one(double rho, int p);

/// Symmetric inverse square root of the rank-one matrix. It has the same
/// rank-one shape: diagonal part (1 - rho)^(-1/2) plus a constant c.
Eigen::MatrixXd inv_sqrt_rank_one(double rho, int p);

/// The constant c added to every entry of inv_sqrt_rank_one.
double inv_sqrt_rank_one_offset(double rho, int p);

/// Entry (i, j) = rho^|i - j|.
Eigen::MatrixXd make_ar1(double rho, int p);

/// Pearson correlation (n - 1 denominator). Throws DegenerateInputError
/// naming the first zero-variance asset.
Eigen::MatrixXd sample_correlation(const ReturnsPanel& panel);

/// Median of the strictly-upper-triangle sample correlations; the midpoint of
/// the two central order statistics for an even count.
double estimate_rho_median(const ReturnsPanel& panel);

struct ClampedRho {
  double rho;
  bool clamped;
};

/// Keeps rho at least 1e-6 inside the rank-one positive-definite range,
/// moving it to 1e-6 from the nearer edge when it is closer or outside.
ClampedRho clamp_to_rank_one_domain(double rho, int p);

}  // namespace srhsd
