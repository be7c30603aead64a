#pragma once

// Seeded Monte Carlo engine for type-I and power calibration of the range
// test. Replication r draws from substream (seed, r), so results are
// bitwise reproducible for any worker count.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "srhsd/corr_model.hpp"
#include "srhsd/panel.hpp"
#include "srhsd/posthoc.hpp"

namespace srhsd {

enum class Design {
  NullRange,  // max sr - min sr over all assets
  OneGood,    // sr[0] - min of the rest
  HalfGood,   // max over the first p/2 - min over the last p/2
};

const char* to_string(Design design) noexcept;

struct RhoPolicy {
  enum class Kind { TrueRho, Estimated, Assumed };
  Kind kind = Kind::TrueRho;
  double value = 0.0;  // used by Assumed

  static RhoPolicy true_rho() { return {Kind::TrueRho, 0.0}; }
  static RhoPolicy estimated() { return {Kind::Estimated, 0.0}; }
  static RhoPolicy assumed(double v) { return {Kind::Assumed, v}; }
  std::string label() const;
};

struct SimSpec {
  long n_days = 1008;
  int p = 16;
  double periods_per_year = 252.0;
  CorrKind corr_kind = CorrKind::RankOne;  // RankOne or Ar1
  double rho = 0.8;
  Eigen::VectorXd snr_annual;  // yr^-1/2; empty means all zero
  double alpha = 0.05;
  DfMode df_mode = DfMode::NMinus1;
  RhoPolicy rho_policy;
  Design design = Design::NullRange;
  long replications = 5000;
  std::uint64_t seed = 1;

  void validate() const;
  CorrModel corr() const;
  /// snr_annual, or zeros when empty.
  Eigen::VectorXd snr_annual_or_zero() const;
};

struct RunOptions {
  int workers = 0;        // 0: hardware concurrency
  bool keep_raw = false;  // retain per-replication statistics and p-values
};

struct SimResult {
  SimSpec spec;
  long rejections = 0;
  double rejection_rate = 0.0;
  double rejection_se = 0.0;
  long clamped_rho = 0;  // replications whose estimated rho was clamped
  std::vector<double> raw_ranges;
  std::vector<double> raw_pvalues;
};

/// Associative, order-independent count of per-replication rejections.
class RejectionTally {
 public:
  void add(bool rejected) noexcept {
    ++trials_;
    rejections_ += rejected ? 1 : 0;
  }
  void merge(const RejectionTally& other) noexcept {
    trials_ += other.trials_;
    rejections_ += other.rejections_;
  }
  long trials() const noexcept { return trials_; }
  long rejections() const noexcept { return rejections_; }

 private:
  long trials_ = 0;
  long rejections_ = 0;
};

/// Rate and binomial standard error sqrt(r (1 - r) / trials). DomainError
/// on an empty tally.
SimResult aggregate(const RejectionTally& tally, const SimSpec& spec);
SimResult aggregate(std::span<const bool> outcomes, const SimSpec& spec);

/// Draws replication `replication_index` of the returns for `spec`: unit
/// per-period volatility, mean snr / sqrt(ppy). Rank-one rho >= 0 uses one
/// shared factor; anything else a dense Cholesky factor.
ReturnsPanel sample_returns(const SimSpec& spec, std::uint64_t replication_index);

/// Runs any design; the cutoff is the HSD of `spec` at the resolved rho.
SimResult run_simulation(const SimSpec& spec, const RunOptions& opts = {});

/// Null design with constant signal-noise ratios.
SimResult run_null_experiment(const SimSpec& spec, const RunOptions& opts = {});

/// AR(1) truth under each of the given rho policies (same seed, so the
/// policies see identical data).
std::vector<SimResult> run_misspecified_ar1(const SimSpec& spec,
                                            std::span<const RhoPolicy> policies,
                                            const RunOptions& opts = {});

/// Sweeps (rho, psnr) for OneGood or HalfGood. Good assets get psnr, the
/// rest zero.
std::vector<SimResult> run_alternative(const SimSpec& spec,
                                       std::span<const double> psnr_grid,
                                       std::span<const double> rho_grid,
                                       const RunOptions& opts = {});

/// One CSV row per result: design,n,p,rho,psnr,df_mode,rho_policy,
/// replications,rate,se,seed,corr.
void write_results_csv(std::ostream& os, std::span<const SimResult> results);

/// Per-replication statistic and p-value: rep,range,pvalue.
void write_raw_csv(std::ostream& os, const SimResult& result);

}  // namespace srhsd
