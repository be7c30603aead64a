#pragma once

// Studentized range distribution: the law of the range of k iid standard
// normals, optionally divided by an independent chi_df / sqrt(df) scale.

#include <limits>

namespace srhsd {

inline constexpr double kInfiniteDf = std::numeric_limits<double>::infinity();

/// Above this many degrees of freedom the finite-df law is replaced by the
/// df = infinity limit.
inline constexpr double kLargeDfSwitch = 1e5;

struct RangeDistParams {
  int k = 2;
  double df = kInfiniteDf;

  bool infinite_df() const noexcept { return df == kInfiniteDf; }
  /// Throws DomainError unless k >= 2 and df > 0 (or infinite).
  void validate() const;
};

double std_normal_cdf(double x);
double std_normal_quantile(double p);

/// P(range of k iid N(0,1) <= q), by quadrature of
/// k * int phi(x) [Phi(x + q) - Phi(x)]^(k-1) dx.
double range_cdf_inf(double q, int k);

/// Studentized range CDF. For finite df this integrates range_cdf_inf(q s, k)
/// against the density of s = chi_df / sqrt(df).
double ptukey(double q, const RangeDistParams& params);

/// Inverse of ptukey in q. Throws NumericError if no bracket is found.
double qtukey(double p, const RangeDistParams& params);

}  // namespace srhsd
