#include <catch_amalgamated.hpp>

#include <random>

#include "srhsd/errors.hpp"
#include "srhsd/posthoc.hpp"

using Catch::Approx;
using namespace srhsd;

namespace {

SrEstimate per_period(std::initializer_list<double> values, long n) {
  SrEstimate est;
  est.sr.resize(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) est.sr(i++) = v;
  est.n = n;
  return est;
}

ReturnsPanel correlated_panel(long n, int p, double rho, const Eigen::VectorXd& mean,
                              std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(n, p);
  for (long i = 0; i < n; ++i) {
    const double f = z(gen);
    for (int j = 0; j < p; ++j) x(i, j) = mean(j) + std::sqrt(rho) * f + std::sqrt(1 - rho) * z(gen);
  }
  return ReturnsPanel(x, {}, 12.0);
}

}  // namespace

TEST_CASE("CutoffSpec validation", "[posthoc]") {
  CHECK_THROWS_AS(hsd_cutoff({0.0, DfMode::Infinite, 0.5, 4, 100}), DomainError);
  CHECK_THROWS_AS(hsd_cutoff({1.0, DfMode::Infinite, 0.5, 4, 100}), DomainError);
  CHECK_THROWS_AS(hsd_cutoff({0.05, DfMode::Infinite, 0.5, 1, 100}), DomainError);
  CHECK_THROWS_AS(hsd_cutoff({0.05, DfMode::Infinite, 0.5, 4, 1}), DomainError);
  CHECK_THROWS_AS(hsd_cutoff({0.05, DfMode::Infinite, -0.4, 4, 100}), DomainError);
  CHECK_THROWS_AS(hsd_cutoff({0.05, DfMode::Infinite, 1.0, 4, 100}), DomainError);
  const CutoffSpec s{0.05, DfMode::NMinus1, 0.8, 5, 1104};
  CHECK(s.range_params().df == 1103.0);
  CHECK(s.scale() == Approx(std::sqrt(0.2 / 1103.0)));
  CHECK(std::string(to_string(DfMode::NMinus1)) == "n-1");
}

TEST_CASE("hsd_cutoff examples", "[posthoc]") {
  const double hsd = hsd_cutoff({0.05, DfMode::NMinus1, 0.8, 5, 1104});
  CHECK(hsd * std::sqrt(12.0) == Approx(0.18).margin(0.01));
  CHECK(hsd * std::sqrt(12.0) == Approx(3.86404774284021 * std::sqrt(0.2 / 1103 * 12)).margin(1e-8));

  for (double alpha : {0.01, 0.05, 0.2}) {
    const double expect = std::sqrt(2.0) * std_normal_quantile(1 - alpha / 2) * std::sqrt(0.5 / 300);
    CHECK(hsd_cutoff({alpha, DfMode::Infinite, 0.5, 2, 300}) == Approx(expect).margin(1e-10));
  }

  double prev = 1.0;
  for (double rho : {0.9, 0.99, 0.9999, 0.999999}) {
    const double c = hsd_cutoff({0.05, DfMode::Infinite, rho, 8, 500});
    CHECK(c < prev);
    prev = c;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("bonferroni_cutoff", "[posthoc]") {
  CHECK(bonferroni_cutoff(0.05, 2, 400, 0.3) ==
        Approx(std::sqrt(2 * 0.7 / 400) * std_normal_quantile(0.95)).margin(1e-14));
  const double bc = bonferroni_cutoff(0.05, 16, 1008, 0.8);
  const double hsd = hsd_cutoff({0.05, DfMode::Infinite, 0.8, 16, 1008});
  CHECK(std::abs(bc - hsd) / hsd < 0.05);
  CHECK(bc <= hsd);
  CHECK(bonferroni_cutoff(0.05, 6, 100, 0.999999) < 1e-3);
  CHECK_THROWS_AS(bonferroni_cutoff(0.05, 1, 100, 0.0), DomainError);
  CHECK_THROWS_AS(bonferroni_cutoff(0.05, 3, 1, 0.0), DomainError);
}

TEST_CASE("range_pvalue", "[posthoc]") {
  for (DfMode mode : {DfMode::Infinite, DfMode::NMinus1}) {
    for (int k : {2, 5, 16}) {
      for (long n : {30L, 1008L}) {
        const CutoffSpec s{0.05, mode, 0.6, k, n};
        CHECK(range_pvalue(0.0, s) == 1.0);
        CHECK(range_pvalue(hsd_cutoff(s), s) == Approx(0.05).margin(1e-7));
      }
    }
  }
  CHECK_THROWS_AS(range_pvalue(-0.1, {0.05, DfMode::Infinite, 0.0, 3, 10}), DomainError);
}

TEST_CASE("finite-df cutoff dominates the infinite-df cutoff", "[posthoc][property]") {
  for (long n : {3L, 5L, 20L, 100L, 1008L}) {
    for (int k : {2, 5, 16}) {
      for (double alpha : {0.01, 0.05, 0.1}) {
        INFO("n=" << n << " k=" << k << " alpha=" << alpha);
        CHECK(hsd_cutoff({alpha, DfMode::NMinus1, 0.4, k, n}) >=
              hsd_cutoff({alpha, DfMode::Infinite, 0.4, k, n}));
      }
    }
  }
}

TEST_CASE("pairwise_decisions", "[posthoc]") {
  const SrEstimate flat = per_period({0.1, 0.1, 0.1}, 100);
  CHECK_FALSE(pairwise_decisions(flat, 0.01).any());

  const SrEstimate s = per_period({0.0, 0.05, 0.2, 0.21}, 100);
  const DecisionMatrix d = pairwise_decisions(s, 0.155);
  CHECK(d(0, 2));
  CHECK(d(2, 0));
  CHECK(d(0, 3));
  CHECK(d(1, 3));
  CHECK_FALSE(d(1, 2));
  CHECK_FALSE(d(0, 1));
  CHECK_FALSE(d(2, 3));
  for (int i = 0; i < 4; ++i) CHECK_FALSE(d(i, i));
  CHECK(d == d.transpose());
  // exactly at the cutoff rejects
  CHECK(pairwise_decisions(per_period({0.0, 0.5}, 10), 0.5)(0, 1));
  CHECK_FALSE(pairwise_decisions(s, observed_range(s) + 1e-9).any());
  CHECK_THROWS_AS(pairwise_decisions(s, 0.0), DomainError);

  SrEstimate shifted = s;
  shifted.sr.array() += 3.25;
  CHECK(pairwise_decisions(shifted, 0.155) == d);
  CHECK(observed_range(s) == Approx(0.21));
}

TEST_CASE("global_equality_test", "[posthoc]") {
  const CorrModel m = CorrModel::rank_one(0.5, 4);
  const GlobalTestResult same = global_equality_test(per_period({0.1, 0.1, 0.1, 0.1}, 200), m);
  CHECK(same.stat == Approx(0.0).margin(1e-12));
  CHECK(same.pvalue == Approx(1.0).margin(1e-12));
  CHECK(same.df == 3);

  // Two assets: the statistic is the squared paired z from the difference law.
  const SrEstimate two = per_period({0.09, 0.03}, 500);
  const CorrModel r2 = CorrModel::rank_one(0.6, 2);
  const PairedDiff null_law = paired_diff_params(0.0, 0.0, 0.6, 500);
  const double z = (0.09 - 0.03) / std::sqrt(null_law.variance);
  const GlobalTestResult g2 = global_equality_test(two, r2, CovForm::Simple);
  CHECK(g2.stat == Approx(z * z).epsilon(1e-12));
  CHECK(g2.df == 1);
  CHECK(g2.pvalue == Approx(std::erfc(std::abs(z) / std::sqrt(2.0))).epsilon(1e-10));

  // Full form with the plug-in ratios: snr = sr_2, eps = sr_1 / sr_2 - 1.
  const PairedDiff plug = paired_diff_params(0.03, 0.09 / 0.03 - 1.0, 0.6, 500);
  const GlobalTestResult gf = global_equality_test(two, r2, CovForm::Full);
  CHECK(gf.stat == Approx(0.06 * 0.06 / plug.variance).epsilon(1e-12));

  // Asset order does not matter.
  const CorrModel full = CorrModel::ar1(0.3, 4);
  const SrEstimate a = per_period({0.02, 0.08, -0.01, 0.05}, 300);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(4);
  perm.indices() << 2, 0, 3, 1;
  SrEstimate b = a;
  b.sr = perm * a.sr;
  const Eigen::MatrixXd rp = perm * full.matrix() * perm.transpose();
  for (CovForm form : {CovForm::Simple, CovForm::Full}) {
    CHECK(global_equality_test(b, CorrModel::full(rp), form).stat ==
          Approx(global_equality_test(a, full, form).stat).epsilon(1e-10));
  }

  // Annualized input is handled in per-period units.
  SrEstimate ann = a;
  ann.periods_per_year = 12.0;
  ann = annualize(ann);
  CHECK(global_equality_test(ann, full).stat ==
        Approx(global_equality_test(a, full).stat).epsilon(1e-12));

  // Nearly collinear first two assets: positive definite, but hopeless.
  Eigen::MatrixXd near(3, 3);
  near << 1, 1 - 1e-14, 0.5, 1 - 1e-14, 1, 0.5, 0.5, 0.5, 1;
  const CorrModel nearly = CorrModel::full(near);
  try {
    global_equality_test(per_period({0.1, 0.2, 0.3}, 100), nearly);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("condition number") != std::string::npos);
  }
}

TEST_CASE("paired_diff_params", "[posthoc]") {
  const PairedDiff zero = paired_diff_params(0.0, 0.7, 0.4, 250);
  CHECK(zero.mean == 0.0);
  CHECK(zero.variance == Approx(2 * 0.6 / 250));
  CHECK(paired_diff_params(0.3, 0.0, 1.0, 100).variance == Approx(0.0).margin(1e-18));
  const PairedDiff d = paired_diff_params(0.06, 0.5, 0.8, 1008);
  CHECK(d.mean == Approx(0.03));
  // 0.4/1008 + 0.0036/2016 * (1 + 2.25 - 1.92)
  CHECK(d.variance == Approx(3.9920039682539683e-4).epsilon(1e-13));
  CHECK_THROWS_AS(paired_diff_params(0.1, 0.1, 0.1, 1), DomainError);
}

TEST_CASE("run_posthoc on a returns panel", "[posthoc]") {
  Eigen::VectorXd mu(4);
  mu << 0.3, 0.0, 0.0, 0.05;
  const ReturnsPanel panel = correlated_panel(240, 4, 0.7, mu, 4);
  PosthocOptions opts;
  const PosthocReport rep = run_posthoc(panel, opts);
  CHECK(rep.rho_source == RhoSource::Estimated);
  REQUIRE(rep.rho_median.has_value());
  CHECK(rep.rho_used == *rep.rho_median);
  CHECK(rep.rho_used == Approx(0.7).margin(0.1));
  CHECK(rep.sr.annualized);
  CHECK(rep.global_model == "sample");
  CHECK(rep.global.df == 3);
  CHECK(rep.hsd_ndf >= rep.hsd_inf);
  CHECK(rep.selected_cutoff == rep.hsd_ndf);
  CHECK(rep.observed_range == Approx(rep.sr.sr.maxCoeff() - rep.sr.sr.minCoeff()));
  CHECK(rep.decisions(0, 1));
  CHECK_FALSE(rep.decisions(1, 2));
  CHECK(rep.range_pvalue < 0.05);
  CHECK(rep.sample_corr.rows() == 4);

  opts.rho = 0.5;
  opts.df_mode = DfMode::Infinite;
  opts.global_uses_sample_corr = false;
  const PosthocReport assumed = run_posthoc(panel, opts);
  CHECK(assumed.rho_source == RhoSource::Assumed);
  CHECK(assumed.rho_used == 0.5);
  CHECK(assumed.selected_cutoff == assumed.hsd_inf);
  CHECK(assumed.global_model == "rank_one");

  opts.rho = 1.0;
  CHECK_THROWS_AS(run_posthoc(panel, opts), DomainError);
}

TEST_CASE("run_posthoc edge inputs", "[posthoc]") {
  Eigen::MatrixXd one(10, 1);
  one.setRandom();
  CHECK_THROWS_AS(run_posthoc(ReturnsPanel(one, {}, 12.0), {}), DomainError);

  Eigen::MatrixXd dup(20, 3);
  dup.col(0).setLinSpaced(20, -1.0, 2.0);
  dup.col(0) = dup.col(0).array().sin();
  dup.col(1) = dup.col(0);
  dup.col(2) = dup.col(0);
  const PosthocReport rep = run_posthoc(ReturnsPanel(dup, {}, 12.0), {});
  CHECK(rep.observed_range == 0.0);
  CHECK(rep.range_pvalue == 1.0);
  CHECK_FALSE(rep.decisions.any());
  CHECK(rep.global.stat == Approx(0.0).margin(1e-9));
  CHECK(rep.global_model == "rank_one");
  CHECK_FALSE(rep.warnings.empty());

  // Negative correlation beyond the rank-one floor is clamped with a warning.
  Eigen::MatrixXd neg(6, 3);
  neg << 1, -1, 0.5, -1, 1, -0.4, 2, -2, 1.1, -2, 2, -1, 0.5, -0.5, 0.2, -0.5, 0.5, -0.3;
  const PosthocReport clamped = run_posthoc(ReturnsPanel(neg, {}, 12.0), {});
  if (*clamped.rho_median <= -0.5) {
    CHECK(clamped.rho_used == Approx(-0.5 + 1e-6).margin(1e-12));
    CHECK_FALSE(clamped.warnings.empty());
  }
}

TEST_CASE("run_posthoc_summary", "[posthoc]") {
  SrEstimate est;
  est.sr.resize(3);
  est.sr << 0.6, 0.6, 0.6;
  est.periods_per_year = 1.0;
  est.annualized = true;
  est.n = 10;
  PosthocOptions opts;
  CHECK_THROWS_AS(run_posthoc_summary(est, opts), DomainError);
  opts.rho = 0.85;
  const PosthocReport same = run_posthoc_summary(est, opts);
  CHECK_FALSE(same.decisions.any());
  CHECK(same.range_pvalue == 1.0);
  CHECK(same.global_model == "rank_one");
  CHECK(same.sample_corr.size() == 0);

  est.sr << 0.5, 0.9, 1.1;
  const PosthocReport r = run_posthoc_summary(est, opts);
  const double expect = hsd_cutoff({0.05, DfMode::NMinus1, 0.85, 3, 10});
  CHECK(r.selected_cutoff == Approx(expect));
  CHECK(r.sr.sr(2) == Approx(1.1));
  est.n = 0;
  CHECK_THROWS_AS(run_posthoc_summary(est, opts), DomainError);
}
