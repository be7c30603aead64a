#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "srhsd/errors.hpp"

namespace srhsd::quad {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t order() const noexcept { return nodes.size(); }
};

/// Computes an order-n rule by Newton iteration on the Legendre recurrence.
GaussLegendreRule make_gauss_legendre(int order);

/// Shared, lazily built rule for order in {8, 16, 20, 32, 64}.
const GaussLegendreRule& gauss_legendre(int order);

template <class F>
double integrate(F&& f, double a, double b, const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i) {
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return acc * half;
}

template <class F>
double integrate_composite(F&& f, double a, double b, int panels,
                           const GaussLegendreRule& rule) {
  const double width = (b - a) / panels;
  double acc = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double lo = a + j * width;
    const double hi = (j + 1 == panels) ? b : lo + width;
    acc += integrate(f, lo, hi, rule);
  }
  return acc;
}

namespace detail {

template <class F>
double adaptive_step(F& f, double a, double b, double whole, double tol,
                     int depth, const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double left = integrate(f, a, mid, rule);
  const double right = integrate(f, mid, b, rule);
  const double refined = left + right;
  if (std::abs(refined - whole) <= tol) return refined;
  if (depth <= 0) {
    throw NumericError("adaptive quadrature did not reach tolerance");
  }
  return adaptive_step(f, a, mid, left, 0.5 * tol, depth - 1, rule) +
         adaptive_step(f, mid, b, right, 0.5 * tol, depth - 1, rule);
}

}  // namespace detail

/// Bisecting adaptive Gauss-Legendre: a panel is accepted once its 16-point
/// estimate agrees with the sum over its two halves to within the panel's
/// share of `abs_tol`.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          int max_depth = 40) {
  const auto& rule = gauss_legendre(16);
  const double whole = integrate(f, a, b, rule);
  return detail::adaptive_step(f, a, b, whole, abs_tol, max_depth, rule);
}

}  // namespace srhsd::quad
