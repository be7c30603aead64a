#include "srhsd/corr_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "srhsd/errors.hpp"

namespace srhsd {
namespace {

void require_rank_one(double rho, int p) {
  require(p >= 2, "rank-one correlation needs p >= 2");
  if (!rank_one_admissible(rho, p)) {
    std::ostringstream os;
    os << "rank-one correlation rho=" << rho << " is not positive definite for p="
       << p << " (need " << rank_one_rho_floor(p) << " < rho < 1)";
    throw DomainError(os.str());
  }
}

}  // namespace

const char* to_string(CorrKind kind) noexcept {
  switch (kind) {
    case CorrKind::RankOne: return "rank_one";
    case CorrKind::Ar1: return "ar1";
    case CorrKind::Full: return "full";
  }
  return "unknown";
}

CorrModel CorrModel::rank_one(double rho, int p) {
  require_rank_one(rho, p);
  return CorrModel(CorrKind::RankOne, rho, p, {});
}

CorrModel CorrModel::ar1(double rho, int p) {
  require(p >= 2, "AR(1) correlation needs p >= 2");
  require(std::abs(rho) < 1.0, "AR(1) correlation needs |rho| < 1");
  return CorrModel(CorrKind::Ar1, rho, p, {});
}

CorrModel CorrModel::full(Eigen::MatrixXd matrix) {
  const auto p = matrix.rows();
  require(p >= 1 && matrix.cols() == p, "correlation matrix must be square and non-empty");
  require(matrix.allFinite(), "correlation matrix has non-finite entries");
  for (Eigen::Index i = 0; i < p; ++i) {
    require(std::abs(matrix(i, i) - 1.0) <= 1e-10,
            "correlation matrix must have unit diagonal");
    for (Eigen::Index j = 0; j < i; ++j) {
      require(std::abs(matrix(i, j) - matrix(j, i)) <= 1e-10,
              "correlation matrix must be symmetric");
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(matrix);
  require(llt.info() == Eigen::Success, "correlation matrix is not positive definite");
  return CorrModel(CorrKind::Full, 0.0, static_cast<int>(p), std::move(matrix));
}

Eigen::MatrixXd CorrModel::matrix() const {
  switch (kind_) {
    case CorrKind::RankOne: return make_rank_one(rho_, p_);
    case CorrKind::Ar1: return make_ar1(rho_, p_);
    case CorrKind::Full: return full_;
  }
  return full_;
}

double rank_one_rho_floor(int p) { return -1.0 / (p - 1); }

bool rank_one_admissible(double rho, int p) noexcept {
  return p >= 2 && rho > -1.0 / (p - 1) && rho < 1.0;
}

Eigen::MatrixXd make_rank_one(double rho, int p) {
  require_rank_one(rho, p);
  Eigen::MatrixXd r = Eigen::MatrixXd::Constant(p, p, rho);
  r.diagonal().setOnes();
  return r;
}

double inv_sqrt_rank_one_offset(double rho, int p) {
  require_rank_one(rho, p);
  // Eigenvalues: 1 + (p - 1) rho on the ones vector, 1 - rho on its complement.
  const double along = 1.0 / std::sqrt(1.0 + (p - 1) * rho);
  const double across = 1.0 / std::sqrt(1.0 - rho);
  return (along - across) / p;
}

Eigen::MatrixXd inv_sqrt_rank_one(double rho, int p) {
  const double c = inv_sqrt_rank_one_offset(rho, p);
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(p, p, c);
  m.diagonal().array() += 1.0 / std::sqrt(1.0 - rho);
  return m;
}

Eigen::MatrixXd make_ar1(double rho, int p) {
  require(p >= 2, "AR(1) correlation needs p >= 2");
  require(std::abs(rho) < 1.0, "AR(1) correlation needs |rho| < 1");
  Eigen::MatrixXd r(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) r(i, j) = std::pow(rho, std::abs(i - j));
  }
  return r;
}

Eigen::MatrixXd sample_correlation(const ReturnsPanel& panel) {
  const auto n = panel.n();
  require(n >= 2, "sample correlation needs at least 2 observations");
  const Eigen::RowVectorXd mean = panel.values.colwise().mean();
  const Eigen::MatrixXd centered = panel.values.rowwise() - mean;
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  for (Eigen::Index j = 0; j < sd.size(); ++j) {
    if (negligible_spread(sd(j), panel.values.col(j).cwiseAbs().maxCoeff())) {
      throw DegenerateInputError(
          "asset '" + panel.asset_names[j] + "' has zero variance", panel.asset_names[j]);
    }
  }
  const Eigen::VectorXd inv = sd.cwiseInverse();
  Eigen::MatrixXd corr = inv.asDiagonal() * cov * inv.asDiagonal();
  corr.diagonal().setOnes();
  return corr;
}

double estimate_rho_median(const ReturnsPanel& panel) {
  require(panel.n() >= 3, "median rho estimate needs n >= 3 observations");
  require(panel.p() >= 2, "median rho estimate needs p >= 2 assets");
  const Eigen::MatrixXd corr = sample_correlation(panel);
  const auto p = corr.rows();
  std::vector<double> upper;
  upper.reserve(static_cast<std::size_t>(p * (p - 1) / 2));
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) upper.push_back(corr(i, j));
  }
  const std::size_t m = upper.size();
  const auto mid = upper.begin() + static_cast<std::ptrdiff_t>(m / 2);
  std::nth_element(upper.begin(), mid, upper.end());
  const double hi = *mid;
  if (m % 2 == 1) return hi;
  const double lo = *std::max_element(upper.begin(), mid);
  return 0.5 * (lo + hi);
}

ClampedRho clamp_to_rank_one_domain(double rho, int p) {
  require(p >= 2, "rank-one correlation needs p >= 2");
  constexpr double kMargin = 1e-6;
  const double floor = rank_one_rho_floor(p);
  if (rho > 1.0 - kMargin) return {1.0 - kMargin, true};
  if (rho < floor + kMargin) return {floor + kMargin, true};
  return {rho, false};
}

}  // namespace srhsd
