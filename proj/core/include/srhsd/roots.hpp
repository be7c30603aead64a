#pragma once

#include <cmath>
#include <utility>

#include "srhsd/errors.hpp"

namespace srhsd::roots {

/// Brent's bracketed root finder (inverse quadratic / secant steps guarded by
/// bisection). Requires f(lo) and f(hi) of opposite sign; stops when the
/// bracket is narrower than `x_tol` or f hits zero.
template <class F>
double brent(F&& f, double lo, double hi, double x_tol, int max_iter = 200) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw NumericError("brent: root is not bracketed");
  }
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa;
  double d = b - a;
  bool bisected = true;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (fb == 0.0 || std::abs(b - a) <= x_tol) return b;
    double s;
    if (fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) +
          b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);
    }
    const double lo3 = (3.0 * a + b) / 4.0;
    const bool outside = !((s > std::min(lo3, b)) && (s < std::max(lo3, b)));
    const bool slow_after_bisect =
        bisected && std::abs(s - b) >= 0.5 * std::abs(b - c);
    const bool slow_after_interp =
        !bisected && std::abs(s - b) >= 0.5 * std::abs(c - d);
    const bool tiny_after_bisect = bisected && std::abs(b - c) < x_tol;
    const bool tiny_after_interp = !bisected && std::abs(c - d) < x_tol;
    if (outside || slow_after_bisect || slow_after_interp ||
        tiny_after_bisect || tiny_after_interp) {
      s = 0.5 * (a + b);
      bisected = true;
    } else {
      bisected = false;
    }
    const double fs = f(s);
    d = c;
    c = b;
    fc = fb;
    if ((fa > 0.0) != (fs > 0.0)) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
  }
  throw NumericError("brent: iteration limit reached");
}

}  // namespace srhsd::roots
