#include "srhsd/quadrature.hpp"

#include <numbers>
#include <string>

namespace srhsd::quad {

GaussLegendreRule make_gauss_legendre(int order) {
  require(order >= 1, "Gauss-Legendre order must be positive");
  const int n = order;
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p1 / pp;
      if (std::abs(z - z_prev) <= 1e-15) break;
    }
    // Newton from the cosine guess converges to the i-th largest root.
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

const GaussLegendreRule& gauss_legendre(int order) {
  static const GaussLegendreRule r8 = make_gauss_legendre(8);
  static const GaussLegendreRule r16 = make_gauss_legendre(16);
  static const GaussLegendreRule r20 = make_gauss_legendre(20);
  static const GaussLegendreRule r32 = make_gauss_legendre(32);
  static const GaussLegendreRule r64 = make_gauss_legendre(64);
  switch (order) {
    case 8: return r8;
    case 16: return r16;
    case 20: return r20;
    case 32: return r32;
    case 64: return r64;
    default:
      throw DomainError("no cached Gauss-Legendre rule of order " +
                        std::to_string(order));
  }
}

}  // namespace srhsd::quad
