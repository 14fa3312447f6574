#pragma once

#include <cmath>
#include <concepts>
#include <numbers>

#include <Eigen/Core>

namespace rodeo {

/// sin(pi * z) with exact argument reduction, so integer z gives exactly 0.
template <std::floating_point Scalar>
Scalar sin_pi(Scalar z) {
  using std::nearbyint;
  using std::sin;
  const Scalar k = nearbyint(z);
  const Scalar r = z - k;  // exact, |r| <= 1/2
  const Scalar s = sin(std::numbers::pi_v<Scalar> * r);
  return std::fmod(k, Scalar(2)) == 0 ? s : -s;
}

/// cos(pi * z); half-integer z gives exactly 0.
template <std::floating_point Scalar>
Scalar cos_pi(Scalar z) {
  using std::abs;
  using std::nearbyint;
  using std::sin;
  const Scalar k = nearbyint(z);
  const Scalar r = z - k;
  // cos(pi r) = sin(pi (1/2 - |r|)), exact zero at |r| = 1/2
  const Scalar c = sin(std::numbers::pi_v<Scalar> * (Scalar(0.5) - abs(r)));
  return std::fmod(k, Scalar(2)) == 0 ? c : -c;
}

/// Zeroth spherical Bessel function j0(t) = sin(t)/t.
template <std::floating_point Scalar>
Scalar spherical_j0(Scalar t) {
  using std::abs;
  using std::sin;
  if (abs(t) < Scalar(1e-4)) {
    const Scalar t2 = t * t;
    return Scalar(1) - t2 / Scalar(6) + t2 * t2 / Scalar(120);
  }
  return sin(t) / t;
}

/// j0(pi z)^2 evaluated through sin_pi so zeros at nonzero integers are exact.
template <std::floating_point Scalar>
Scalar sinc_pi_squared(Scalar z) {
  using std::abs;
  const Scalar t = std::numbers::pi_v<Scalar> * z;
  if (abs(t) < Scalar(1e-4)) {
    const Scalar j = spherical_j0(t);
    return j * j;
  }
  const Scalar j = sin_pi(z) / t;
  return j * j;
}

/// Coefficient-wise j0(pi z)^2 for Eigen arrays.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> sinc_pi_squared(
    const Eigen::ArrayBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  return z.derived().unaryExpr([](Scalar v) { return sinc_pi_squared(v); });
}

}  // namespace rodeo
