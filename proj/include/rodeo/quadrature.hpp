#pragma once

#include <cmath>
#include <numbers>

#include "rodeo/errors.hpp"

namespace rodeo {

/// Tanh-sinh (double exponential) quadrature on a finite interval.
///
/// The integrand is called as f(x, dl, dr) where dl = x - a and dr = b - x are
/// computed from the transformed abscissa without cancellation. Integrands with
/// logarithmic or algebraic endpoint singularities should evaluate themselves in
/// terms of the endpoint distance, which keeps full relative precision right up
/// to the endpoint.
class TanhSinh {
 public:
  explicit TanhSinh(double rel_tol = 1e-8, int max_levels = 9)
      : rel_tol_(rel_tol), max_levels_(max_levels) {}

  template <typename F>
  double integrate(F&& f, double a, double b) const {
    if (!(b > a)) return 0;
    const double half = 0.5 * (b - a);
    constexpr double half_pi = std::numbers::pi / 2;

    auto node = [&](double t, double& sum) {
      const double u = half_pi * std::sinh(t);
      const double e = std::exp(-2 * std::abs(u));
      // distance from the near endpoint, scaled to the half width
      const double near = 2 * e / (1 + e);
      const double far = 2 / (1 + e);
      const double dl = half * (u < 0 ? near : far);
      const double dr = half * (u < 0 ? far : near);
      if (dl <= 0 || dr <= 0) return false;
      const double ch = std::cosh(u);
      const double w = half * half_pi * std::cosh(t) / (ch * ch);
      if (!(w > 0) || !std::isfinite(w)) return false;
      const double x = u < 0 ? a + dl : b - dr;
      sum += w * f(x, dl, dr);
      return true;
    };

    auto accumulate = [&](double h, int stride, int offset, double& sum) {
      for (int k = offset;; k += stride) {
        const double t = k * h;
        if (t > kTMax) break;
        const bool pos = node(t, sum);
        const bool neg = node(-t, sum);
        if (!pos && !neg) break;
      }
    };

    double h = 1.0;
    double sum = 0;
    node(0.0, sum);
    accumulate(h, 1, 1, sum);
    double estimate = h * sum;
    for (int level = 1; level <= max_levels_; ++level) {
      h *= 0.5;
      accumulate(h, 2, 1, sum);
      const double refined = h * sum;
      if (std::abs(refined - estimate) <= rel_tol_ * std::abs(refined) ||
          std::abs(refined - estimate) < 1e-300) {
        return refined;
      }
      estimate = refined;
    }
    throw NumericError("tanh-sinh quadrature did not reach relative tolerance");
  }

 private:
  static constexpr double kTMax = 4.5;
  double rel_tol_;
  int max_levels_;
};

}  // namespace rodeo
