#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srhsd/mc_engine.hpp"

namespace srhsd::cli {

/// Grid overrides and knobs shared by the simulation presets; unset fields
/// keep each preset's defaults.
struct ExperimentOverrides {
  long replications = 5000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  std::optional<DfMode> df_mode;
  std::vector<long> n_grid;
  std::vector<int> p_grid;
  std::vector<double> rho_grid;
  std::vector<double> psnr_grid;
  // custom experiment only
  std::optional<CorrKind> corr_kind;
  std::optional<Design> design;
  std::optional<RhoPolicy> rho_policy;
  std::optional<double> snr;
};

/// Names accepted by `plan_experiment`.
const std::vector<std::string>& experiment_names();

/// Expands a named preset into grid cells, in output-row order. Throws
/// DomainError on an unknown name.
std::vector<SimSpec> plan_experiment(const std::string& name, const ExperimentOverrides& o);

}  // namespace srhsd::cli
