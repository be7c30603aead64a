#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace srhsd {

/// n x p matrix of periodic simple returns, one column per asset.
struct ReturnsPanel {
  Eigen::MatrixXd values;
  std::vector<std::string> asset_names;
  double periods_per_year = 1.0;

  ReturnsPanel() = default;
  /// Validates shape: n >= 2, p >= 1, one name per column, positive
  /// periodicity, finite entries. Empty names default to "asset<j>".
  ReturnsPanel(Eigen::MatrixXd values, std::vector<std::string> names,
               double periods_per_year);

  Eigen::Index n() const noexcept { return values.rows(); }
  Eigen::Index p() const noexcept { return values.cols(); }
};

/// True when a sample deviation `sd` is indistinguishable from the rounding
/// noise of values of size `magnitude` (a constant column).
bool negligible_spread(double sd, double magnitude) noexcept;

/// Default label of column j.
std::string default_asset_name(Eigen::Index j);

}  // namespace srhsd
