#include "experiments.hpp"

#include <algorithm>

#include "srhsd/errors.hpp"

namespace srhsd::cli {
namespace {

template <class T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

SimSpec base_spec(const ExperimentOverrides& o) {
  SimSpec s;
  s.n_days = 1008;
  s.p = 16;
  s.periods_per_year = 252.0;
  s.rho = 0.8;
  s.alpha = o.alpha;
  s.df_mode = o.df_mode.value_or(DfMode::NMinus1);
  s.replications = o.replications;
  s.seed = o.seed;
  return s;
}

// Null designs hold every asset at the same signal-noise ratio, 1 yr^-1/2.
void set_null_snr(SimSpec& s, const ExperimentOverrides& o) {
  s.snr_annual = Eigen::VectorXd::Constant(s.p, o.snr.value_or(1.0));
}

std::vector<SimSpec> alternative_cells(Design design, const ExperimentOverrides& o) {
  std::vector<SimSpec> cells;
  const auto rhos = or_default(o.rho_grid, {0.0, 0.3, 0.6, 0.9});
  const auto psnrs = or_default(o.psnr_grid, {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5});
  for (int p : or_default(o.p_grid, {16})) {
    for (long n : or_default(o.n_grid, {1008L})) {
      for (double rho : rhos) {
        for (double psnr : psnrs) {
          SimSpec s = base_spec(o);
          s.design = design;
          s.p = p;
          s.n_days = n;
          s.rho = rho;
          s.snr_annual = Eigen::VectorXd::Zero(p);
          if (design == Design::OneGood) {
            s.snr_annual(0) = psnr;
          } else {
            s.snr_annual.head(p / 2).setConstant(psnr);
          }
          cells.push_back(std::move(s));
        }
      }
    }
  }
  return cells;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "null-basic",    "null-scan-np", "null-rho",      "feasible-rho",
      "feasible-ar1",  "alt-one-good", "alt-half-good", "custom"};
  return names;
}

std::vector<SimSpec> plan_experiment(const std::string& name, const ExperimentOverrides& o) {
  std::vector<SimSpec> cells;
  if (name == "null-basic") {
    SimSpec s = base_spec(o);
    s.df_mode = o.df_mode.value_or(DfMode::Infinite);
    s.n_days = or_default(o.n_grid, {1008L}).front();
    s.p = or_default(o.p_grid, {16}).front();
    s.rho = or_default(o.rho_grid, {0.8}).front();
    set_null_snr(s, o);
    cells.push_back(s);
  } else if (name == "null-scan-np") {
    std::vector<DfMode> modes = {DfMode::NMinus1, DfMode::Infinite};
    if (o.df_mode) modes = {*o.df_mode};
    for (DfMode mode : modes) {
      for (int p : or_default(o.p_grid, {8, 16, 32})) {
        for (long n : or_default(o.n_grid, {20L, 40L, 80L, 160L, 320L, 640L, 1280L})) {
          SimSpec s = base_spec(o);
          s.df_mode = mode;
          s.p = p;
          s.n_days = n;
          s.rho = or_default(o.rho_grid, {0.8}).front();
          set_null_snr(s, o);
          cells.push_back(std::move(s));
        }
      }
    }
  } else if (name == "null-rho" || name == "feasible-rho") {
    for (double rho : or_default(o.rho_grid, {0.0, 0.2, 0.4, 0.6, 0.8, 0.9})) {
      SimSpec s = base_spec(o);
      s.n_days = or_default(o.n_grid, {1008L}).front();
      s.p = or_default(o.p_grid, {16}).front();
      s.rho = rho;
      s.rho_policy = name == "null-rho" ? RhoPolicy::true_rho() : RhoPolicy::estimated();
      set_null_snr(s, o);
      cells.push_back(std::move(s));
    }
  } else if (name == "feasible-ar1") {
    for (double rho : or_default(o.rho_grid, {0.0, 0.2, 0.4, 0.6, 0.8, 0.9})) {
      for (RhoPolicy policy : {RhoPolicy::estimated(), RhoPolicy::assumed(0.0)}) {
        SimSpec s = base_spec(o);
        s.n_days = or_default(o.n_grid, {1008L}).front();
        s.p = or_default(o.p_grid, {16}).front();
        s.corr_kind = CorrKind::Ar1;
        s.rho = rho;
        s.rho_policy = policy;
        set_null_snr(s, o);
        cells.push_back(std::move(s));
      }
    }
  } else if (name == "alt-one-good") {
    cells = alternative_cells(Design::OneGood, o);
  } else if (name == "alt-half-good") {
    cells = alternative_cells(Design::HalfGood, o);
  } else if (name == "custom") {
    const Design design = o.design.value_or(Design::NullRange);
    const auto rhos = or_default(o.rho_grid, {0.8});
    const auto psnrs = or_default(o.psnr_grid, {o.snr.value_or(design == Design::NullRange ? 1.0 : 0.0)});
    for (int p : or_default(o.p_grid, {16})) {
      for (long n : or_default(o.n_grid, {1008L})) {
        for (double rho : rhos) {
          for (double level : psnrs) {
            SimSpec s = base_spec(o);
            s.p = p;
            s.n_days = n;
            s.rho = rho;
            s.design = design;
            s.corr_kind = o.corr_kind.value_or(CorrKind::RankOne);
            s.rho_policy = o.rho_policy.value_or(s.corr_kind == CorrKind::Ar1
                                                     ? RhoPolicy::estimated()
                                                     : RhoPolicy::true_rho());
            s.snr_annual = Eigen::VectorXd::Zero(p);
            if (design == Design::NullRange) {
              s.snr_annual.setConstant(level);
            } else if (design == Design::OneGood) {
              s.snr_annual(0) = level;
            } else {
              s.snr_annual.head(p / 2).setConstant(level);
            }
            cells.push_back(std::move(s));
          }
        }
      }
    }
  } else {
    throw DomainError("unknown experiment '" + name + "'");
  }
  for (const auto& c : cells) c.validate();
  return cells;
}

}  // namespace srhsd::cli
