#include "srhsd/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "srhsd/errors.hpp"
#include "srhsd/range_dist.hpp"
#include "srhsd/rng.hpp"

namespace srhsd {
namespace {

// Generation recipe resolved once per experiment.
struct Generator {
  Eigen::VectorXd mean;  // per-period
  bool one_factor = false;
  double factor_load = 0.0;
  double idio_load = 1.0;
  Eigen::MatrixXd chol;  // lower factor when !one_factor

  explicit Generator(const SimSpec& spec) {
    mean = SnrVector::from_annual(spec.snr_annual_or_zero(), spec.periods_per_year).snr;
    if (spec.corr_kind == CorrKind::RankOne && spec.rho >= 0.0) {
      one_factor = true;
      factor_load = std::sqrt(spec.rho);
      idio_load = std::sqrt(1.0 - spec.rho);
    } else {
      Eigen::LLT<Eigen::MatrixXd> llt(spec.corr().matrix());
      if (llt.info() != Eigen::Success) {
        throw DomainError("simulation correlation matrix is not positive definite");
      }
      chol = llt.matrixL();
    }
  }

  void fill(Eigen::MatrixXd& out, long n, std::uint64_t seed,
            std::uint64_t replication) const {
    const auto p = mean.size();
    out.resize(n, p);
    NormalSampler normal(substream_seed(seed, replication));
    if (one_factor) {
      for (long i = 0; i < n; ++i) {
        const double common = factor_load * normal();
        for (Eigen::Index j = 0; j < p; ++j) {
          out(i, j) = mean(j) + common + idio_load * normal();
        }
      }
      return;
    }
    Eigen::VectorXd g(p);
    for (long i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) g(j) = normal();
      out.row(i) = (mean + chol.triangularView<Eigen::Lower>() * g).transpose();
    }
  }
};

void column_sharpe(const Eigen::MatrixXd& x, Eigen::VectorXd& sr) {
  const auto n = static_cast<double>(x.rows());
  sr.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const auto col = x.col(j);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / (n - 1.0);
    sr(j) = mean / std::sqrt(var);
  }
}

double design_statistic(Design design, const Eigen::VectorXd& sr) {
  const auto p = sr.size();
  switch (design) {
    case Design::NullRange:
      return sr.maxCoeff() - sr.minCoeff();
    case Design::OneGood:
      return sr(0) - sr.tail(p - 1).minCoeff();
    case Design::HalfGood:
      return sr.head(p / 2).maxCoeff() - sr.tail(p - p / 2).minCoeff();
  }
  return 0.0;
}

int resolve_workers(int requested, long replications) {
  int w = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  w = std::max(1, w);
  return static_cast<int>(std::min<long>(w, replications));
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

const char* to_string(Design design) noexcept {
  switch (design) {
    case Design::NullRange: return "null_range";
    case Design::OneGood: return "one_good";
    case Design::HalfGood: return "half_good";
  }
  return "unknown";
}

std::string RhoPolicy::label() const {
  switch (kind) {
    case Kind::TrueRho: return "true";
    case Kind::Estimated: return "estimated";
    case Kind::Assumed: return "assumed(" + format_number(value) + ")";
  }
  return "unknown";
}

void SimSpec::validate() const {
  require(n_days >= 3, "simulation needs n_days >= 3");
  require(p >= 2, "simulation needs p >= 2 assets");
  require(periods_per_year > 0.0, "periods per year must be positive");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  require(replications >= 1, "simulation needs at least one replication");
  require(corr_kind != CorrKind::Full, "simulation correlation must be rank-one or AR(1)");
  (void)corr();
  require(snr_annual.size() == 0 || snr_annual.size() == p,
          "snr_annual must be empty or have one entry per asset");
  require(snr_annual.allFinite(), "snr_annual must be finite");
  if (rho_policy.kind == RhoPolicy::Kind::TrueRho) {
    require(corr_kind == CorrKind::RankOne,
            "the true-rho policy needs a rank-one truth; use estimated or assumed rho");
  }
  if (rho_policy.kind == RhoPolicy::Kind::Assumed) {
    require(rank_one_admissible(rho_policy.value, p),
            "assumed rho outside the positive-definite range");
  }
  if (design == Design::HalfGood) require(p % 2 == 0, "half-good design needs even p");
}

CorrModel SimSpec::corr() const {
  return corr_kind == CorrKind::Ar1 ? CorrModel::ar1(rho, p) : CorrModel::rank_one(rho, p);
}

Eigen::VectorXd SimSpec::snr_annual_or_zero() const {
  return snr_annual.size() == 0 ? Eigen::VectorXd::Zero(p) : snr_annual;
}

SimResult aggregate(const RejectionTally& tally, const SimSpec& spec) {
  require(tally.trials() > 0, "cannot aggregate an empty replication stream");
  SimResult out;
  out.spec = spec;
  out.rejections = tally.rejections();
  const double trials = static_cast<double>(tally.trials());
  out.rejection_rate = static_cast<double>(tally.rejections()) / trials;
  out.rejection_se = std::sqrt(out.rejection_rate * (1.0 - out.rejection_rate) / trials);
  return out;
}

SimResult aggregate(std::span<const bool> outcomes, const SimSpec& spec) {
  RejectionTally tally;
  for (bool b : outcomes) tally.add(b);
  return aggregate(tally, spec);
}

ReturnsPanel sample_returns(const SimSpec& spec, std::uint64_t replication_index) {
  spec.validate();
  const Generator gen(spec);
  Eigen::MatrixXd values;
  gen.fill(values, spec.n_days, spec.seed, replication_index);
  return ReturnsPanel(std::move(values), {}, spec.periods_per_year);
}

SimResult run_simulation(const SimSpec& spec, const RunOptions& opts) {
  spec.validate();
  const Generator gen(spec);
  const long reps = spec.replications;
  // The critical value does not depend on rho; only the scale does.
  CutoffSpec base{spec.alpha, spec.df_mode, 0.0, spec.p, spec.n_days};
  const double critical = tukey_critical_value(base);

  std::vector<char> rejected(static_cast<std::size_t>(reps), 0);
  std::vector<char> clamped(static_cast<std::size_t>(reps), 0);
  std::vector<double> ranges;
  std::vector<double> pvalues;
  if (opts.keep_raw) {
    ranges.assign(static_cast<std::size_t>(reps), 0.0);
    pvalues.assign(static_cast<std::size_t>(reps), 0.0);
  }

  auto replicate = [&](long first, long last) {
    ReturnsPanel panel;
    panel.periods_per_year = spec.periods_per_year;
    for (int j = 0; j < spec.p; ++j) panel.asset_names.push_back(default_asset_name(j));
    Eigen::VectorXd sr;
    for (long r = first; r < last; ++r) {
      gen.fill(panel.values, spec.n_days, spec.seed, static_cast<std::uint64_t>(r));
      column_sharpe(panel.values, sr);
      double rho = spec.rho;
      if (spec.rho_policy.kind == RhoPolicy::Kind::Estimated) {
        const ClampedRho c = clamp_to_rank_one_domain(estimate_rho_median(panel), spec.p);
        rho = c.rho;
        clamped[r] = c.clamped ? 1 : 0;
      } else if (spec.rho_policy.kind == RhoPolicy::Kind::Assumed) {
        rho = spec.rho_policy.value;
      }
      CutoffSpec cut = base;
      cut.rho = rho;
      const double stat = design_statistic(spec.design, sr);
      rejected[r] = stat >= critical * cut.scale() ? 1 : 0;
      if (opts.keep_raw) {
        ranges[r] = stat;
        pvalues[r] = stat >= 0.0 ? range_pvalue(stat, cut) : 1.0;
      }
    }
  };

  const int workers = resolve_workers(opts.workers, reps);
  if (workers == 1) {
    replicate(0, reps);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const long chunk = (reps + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long first = w * chunk;
      const long last = std::min(reps, first + chunk);
      if (first >= last) break;
      pool.emplace_back([&, first, last] {
        try {
          replicate(first, last);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  RejectionTally tally;
  long clamp_count = 0;
  for (long r = 0; r < reps; ++r) {
    tally.add(rejected[r] != 0);
    clamp_count += clamped[r];
  }
  SimResult out = aggregate(tally, spec);
  out.clamped_rho = clamp_count;
  out.raw_ranges = std::move(ranges);
  out.raw_pvalues = std::move(pvalues);
  return out;
}

SimResult run_null_experiment(const SimSpec& spec, const RunOptions& opts) {
  require(spec.design == Design::NullRange, "null experiment needs the null_range design");
  const Eigen::VectorXd snr = spec.snr_annual_or_zero();
  require((snr.array() == snr(0)).all(), "null experiment needs equal signal-noise ratios");
  return run_simulation(spec, opts);
}

std::vector<SimResult> run_misspecified_ar1(const SimSpec& spec,
                                            std::span<const RhoPolicy> policies,
                                            const RunOptions& opts) {
  require(spec.corr_kind == CorrKind::Ar1, "misspecification runs need an AR(1) truth");
  std::vector<SimResult> out;
  for (const RhoPolicy& policy : policies) {
    SimSpec cell = spec;
    cell.rho_policy = policy;
    out.push_back(run_null_experiment(cell, opts));
  }
  return out;
}

std::vector<SimResult> run_alternative(const SimSpec& spec,
                                       std::span<const double> psnr_grid,
                                       std::span<const double> rho_grid,
                                       const RunOptions& opts) {
  require(spec.design == Design::OneGood || spec.design == Design::HalfGood,
          "alternative runs need the one_good or half_good design");
  std::vector<SimResult> out;
  for (double rho : rho_grid) {
    for (double psnr : psnr_grid) {
      SimSpec cell = spec;
      cell.rho = rho;
      cell.snr_annual = Eigen::VectorXd::Zero(spec.p);
      if (spec.design == Design::OneGood) {
        cell.snr_annual(0) = psnr;
      } else {
        cell.snr_annual.head(spec.p / 2).setConstant(psnr);
      }
      out.push_back(run_simulation(cell, opts));
    }
  }
  return out;
}

void write_results_csv(std::ostream& os, std::span<const SimResult> results) {
  os << "design,n,p,rho,psnr,df_mode,rho_policy,replications,rate,se,seed,corr\n";
  for (const SimResult& r : results) {
    const SimSpec& s = r.spec;
    const Eigen::VectorXd snr = s.snr_annual_or_zero();
    os << to_string(s.design) << ',' << s.n_days << ',' << s.p << ','
       << format_number(s.rho) << ',' << format_number(snr.maxCoeff()) << ','
       << to_string(s.df_mode) << ',' << s.rho_policy.label() << ',' << s.replications
       << ',' << format_number(r.rejection_rate) << ',' << format_number(r.rejection_se)
       << ',' << s.seed << ',' << to_string(s.corr_kind) << '\n';
  }
}

void write_raw_csv(std::ostream& os, const SimResult& result) {
  os << "rep,range,pvalue\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < result.raw_ranges.size(); ++i) {
    os << i << ',' << result.raw_ranges[i] << ',' << result.raw_pvalues[i] << '\n';
  }
}

}  // namespace srhsd
