#include "srhsd/range_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "srhsd/errors.hpp"
#include "srhsd/quadrature.hpp"
#include "srhsd/roots.hpp"

namespace srhsd {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double upper_tail(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

// Phi(b) - Phi(a) for a <= b, formed from whichever tails avoid cancellation.
double normal_mass(double a, double b) {
  if (a >= 0.0) return upper_tail(a) - upper_tail(b);
  if (b <= 0.0) return upper_tail(-b) - upper_tail(-a);
  return 1.0 - upper_tail(b) - upper_tail(-a);
}

// Half-width of the inner integration window: beyond it the factor k * phi
// leaves less than 1e-13 of mass.
double inner_half_width(int k) {
  const double w = -std_normal_quantile(std::min(0.5, 5e-14 / k));
  return std::max(8.0, w);
}

double range_cdf_inf_unchecked(double q, int k) {
  if (q <= 0.0) return 0.0;
  if (std::isinf(q)) return 1.0;
  const double half = inner_half_width(k);
  const auto& rule = quad::gauss_legendre(20);
  const int panels = static_cast<int>(std::ceil(2.0 * half / 1.25));
  const double km1 = k - 1.0;
  auto integrand = [q, km1](double x) {
    const double mass = normal_mass(x, x + q);
    if (mass <= 0.0) return 0.0;
    return phi(x) * std::pow(mass, km1);
  };
  const double value =
      k * quad::integrate_composite(integrand, -half, half, panels, rule);
  return std::clamp(value, 0.0, 1.0);
}

// log of the density of u = log(chi_df / sqrt(df)), up to the u-free constant:
// df * u - df * exp(2u) / 2, maximized at u = 0.
double log_scale_kernel(double u, double df) {
  return df * (u - 0.5 * std::expm1(2.0 * u));
}

double log_scale_norm(double df) {
  const double h = 0.5 * df;
  return h * std::log(df) - (h - 1.0) * std::numbers::ln2 - std::lgamma(h) -
         0.5 * df;  // the kernel is shifted so its peak value is 0
}

// Point where the kernel has dropped `drop` below its peak, on one side of 0.
double kernel_edge(double df, double drop, double direction) {
  double inner = 0.0;
  double outer = direction;
  while (log_scale_kernel(outer, df) > -drop) {
    outer *= 2.0;
    if (std::abs(outer) > 1e6) throw NumericError("ptukey: scale range runaway");
  }
  auto f = [df, drop](double u) { return log_scale_kernel(u, df) + drop; };
  return roots::brent(f, inner, outer, 1e-10);
}

double ptukey_finite(double q, int k, double df) {
  if (q <= 0.0) return 0.0;
  if (std::isinf(q)) return 1.0;
  constexpr double kDrop = 45.0;
  const double lo = kernel_edge(df, kDrop, -1.0);
  const double hi = kernel_edge(df, kDrop, 1.0);
  // The left tail decays like exp((1 + df) u); small df needs narrow panels.
  const int panels =
      df >= 5.0 ? 8
                : std::max(8, static_cast<int>(std::ceil((hi - lo) * (1.0 + df) / 2.5)));
  const double log_norm = log_scale_norm(df);
  auto integrand = [q, k, df, log_norm](double u) {
    const double w = std::exp(log_norm + log_scale_kernel(u, df));
    if (w == 0.0) return 0.0;
    return range_cdf_inf_unchecked(q * std::exp(u), k) * w;
  };
  const double value = quad::integrate_composite(integrand, lo, hi, panels,
                                                 quad::gauss_legendre(20));
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace

void RangeDistParams::validate() const {
  if (k < 2) {
    throw DomainError("studentized range needs k >= 2, got " +
                      std::to_string(k));
  }
  if (!(df > 0.0)) {
    std::ostringstream os;
    os << "studentized range needs df > 0 or infinite, got " << df;
    throw DomainError(os.str());
  }
}

double std_normal_cdf(double x) {
  if (!std::isfinite(x)) throw DomainError("std_normal_cdf: non-finite input");
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("std_normal_quantile: p must lie in (0, 1)");
  }
  // Acklam's rational approximation, then Halley refinement against erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double r = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double r = p - 0.5;
    const double s = r * r;
    x = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) *
        r /
        (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
  } else {
    const double r = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    // Residual in the tail nearer to x keeps relative precision.
    const double e = (x < 0.0) ? 0.5 * std::erfc(-x * kInvSqrt2) - p
                               : (1.0 - p) - 0.5 * std::erfc(x * kInvSqrt2);
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double range_cdf_inf(double q, int k) {
  if (k < 2) throw DomainError("range_cdf_inf: k must be >= 2");
  if (std::isnan(q) || q < 0.0) throw DomainError("range_cdf_inf: q must be >= 0");
  return range_cdf_inf_unchecked(q, k);
}

double ptukey(double q, const RangeDistParams& params) {
  params.validate();
  if (std::isnan(q) || q < 0.0) throw DomainError("ptukey: q must be >= 0");
  if (params.infinite_df() || params.df > kLargeDfSwitch) {
    return range_cdf_inf_unchecked(q, params.k);
  }
  return ptukey_finite(q, params.k, params.df);
}

double qtukey(double p, const RangeDistParams& params) {
  params.validate();
  if (!(p > 0.0 && p < 1.0)) throw DomainError("qtukey: p must lie in (0, 1)");
  auto f = [&params, p](double q) { return ptukey(q, params) - p; };
  double lo = 0.0;
  double hi = 4.0 + 2.0 * std::log(static_cast<double>(params.k));
  int doublings = 0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 40) {
      throw NumericError("qtukey: failed to bracket the quantile");
    }
  }
  return roots::brent(f, lo, hi, 1e-11);
}

}  // namespace srhsd
