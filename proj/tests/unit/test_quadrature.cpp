#include <catch_amalgamated.hpp>

#include <cmath>

#include "srhsd/quadrature.hpp"
#include "srhsd/roots.hpp"

using Catch::Approx;
using namespace srhsd;

TEST_CASE("two-point rule has nodes at +-1/sqrt(3)", "[quadrature]") {
  const auto rule = quad::make_gauss_legendre(2);
  CHECK(rule.nodes[0] == Approx(-1.0 / std::sqrt(3.0)).margin(1e-15));
  CHECK(rule.nodes[1] == Approx(1.0 / std::sqrt(3.0)).margin(1e-15));
  CHECK(rule.weights[0] == Approx(1.0).margin(1e-15));
}

TEST_CASE("n-point rule integrates degree 2n-1 polynomials exactly", "[quadrature]") {
  for (int order : {8, 16, 20, 32, 64}) {
    const auto& rule = quad::gauss_legendre(order);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == Approx(2.0).margin(1e-13));
    const int deg = 2 * order - 1;
    // int_0^1 x^deg dx = 1 / (deg + 1); x^(deg-1) too.
    auto mono = [deg](double x) { return std::pow(x, deg); };
    CHECK(quad::integrate(mono, 0.0, 1.0, rule) == Approx(1.0 / (deg + 1)).margin(1e-13));
    auto mono2 = [deg](double x) { return std::pow(x, deg - 1); };
    CHECK(quad::integrate(mono2, 0.0, 1.0, rule) == Approx(1.0 / deg).margin(1e-13));
  }
}

TEST_CASE("composite and adaptive rules on smooth integrands", "[quadrature]") {
  const auto& rule = quad::gauss_legendre(20);
  auto gauss = [](double x) { return std::exp(-0.5 * x * x); };
  const double truth = std::sqrt(2.0 * M_PI) * std::erf(6.0 / std::sqrt(2.0));
  CHECK(quad::integrate_composite(gauss, -6.0, 6.0, 10, rule) == Approx(truth).margin(1e-13));
  // Narrow peak the single-panel rule cannot resolve.
  const double eps = 1e-3;
  auto spike = [eps](double x) { return 1.0 / (eps * eps + (x - 0.3) * (x - 0.3)); };
  const double spike_truth = (std::atan(4.7 / eps) + std::atan(5.3 / eps)) / eps;
  CHECK(quad::integrate_adaptive(spike, -5.0, 5.0, 1e-8) ==
        Approx(spike_truth).epsilon(1e-10));
}

TEST_CASE("uncached rule order is rejected", "[quadrature]") {
  CHECK_THROWS_AS(quad::gauss_legendre(7), DomainError);
  CHECK_THROWS_AS(quad::make_gauss_legendre(0), DomainError);
}

TEST_CASE("brent finds bracketed roots and refuses unbracketed ones", "[roots]") {
  auto cubic = [](double x) { return x * x * x - 2.0 * x - 5.0; };
  CHECK(roots::brent(cubic, 2.0, 3.0, 1e-14) == Approx(2.0945514815423265).margin(1e-12));
  auto cosine = [](double x) { return std::cos(x) - x; };
  CHECK(roots::brent(cosine, 0.0, 1.0, 1e-14) == Approx(0.7390851332151607).margin(1e-12));
  CHECK_THROWS_AS(roots::brent(cosine, 1.0, 2.0, 1e-12), NumericError);
}
