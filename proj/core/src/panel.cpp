#include "srhsd/panel.hpp"

#include <limits>

#include "srhsd/errors.hpp"

namespace srhsd {

std::string default_asset_name(Eigen::Index j) {
  return "asset" + std::to_string(j + 1);
}

ReturnsPanel::ReturnsPanel(Eigen::MatrixXd vals, std::vector<std::string> names,
                           double ppy)
    : values(std::move(vals)), asset_names(std::move(names)), periods_per_year(ppy) {
  require(values.rows() >= 2, "returns panel needs at least 2 observations");
  require(values.cols() >= 1, "returns panel needs at least 1 asset");
  require(periods_per_year > 0.0, "periods per year must be positive");
  require(values.allFinite(), "returns panel has non-finite entries");
  if (asset_names.empty()) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      asset_names.push_back(default_asset_name(j));
    }
  }
  require(static_cast<Eigen::Index>(asset_names.size()) == values.cols(),
          "returns panel needs one name per column");
}

bool negligible_spread(double sd, double magnitude) noexcept {
  return !(sd > 64.0 * std::numeric_limits<double>::epsilon() * magnitude);
}

}  // namespace srhsd
