#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "rodeo/errors.hpp"

namespace rodeo {

/// Root of f on [lo, hi] by bisection. f(lo) and f(hi) must differ in sign.
template <typename F>
double bisect_root(F&& f, double lo, double hi, double xtol = 1e-12,
                   int max_iterations = 200) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo < 0) == (fhi < 0)) {
    throw NumericError("bisect_root: f has the same sign at both ends of [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  for (int i = 0; i < max_iterations && hi - lo > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Extremum {
  double x = 0;
  double value = 0;
};

/// Golden-section search for the maximum of a unimodal f on [a, b].
template <typename F>
Extremum golden_section_maximize(F&& f, double a, double b, double xtol = 1e-10,
                                 int max_iterations = 500) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && b - a > xtol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace rodeo
