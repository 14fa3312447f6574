#include "rodeo/superiter.hpp"

#include <cmath>
#include <numbers>

#include "rodeo/errors.hpp"
#include "rodeo/special.hpp"

namespace rodeo {

namespace {

void check_super(const SuperIteration& s) {
  if (!std::isfinite(s.base_time) || !(s.base_time > 0)) {
    throw UsageError("super iteration base time must be finite and positive");
  }
  if (s.depth < 1 || s.depth > 1000) throw UsageError("super iteration depth must be in [1, 1000]");
}

Eigen::ArrayXd bases_array(const std::vector<double>& bases) {
  return Eigen::Map<const Eigen::ArrayXd>(bases.data(), static_cast<Eigen::Index>(bases.size()));
}

std::vector<double> integer_zeros(const std::vector<double>& bases, double window,
                                  const std::vector<int>* depths) {
  std::vector<double> zeros;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    for (double m = 1;; ++m) {
      const double x = m / bases[k];
      if (x > window) break;
      // a depth-N ladder does not vanish at multiples of 2^N
      if (depths && std::fmod(m, std::ldexp(1.0, (*depths)[k])) == 0) continue;
      zeros.push_back(x);
    }
  }
  return zeros;
}

}  // namespace

double SuperIteration::expanded_time() const {
  return base_time * (1 - std::ldexp(1.0, -depth));
}

SuperSchedule::SuperSchedule(std::vector<SuperIteration> supers) : supers_(std::move(supers)) {
  if (supers_.empty()) throw UsageError("super schedule must contain at least one super iteration");
  for (const auto& s : supers_) {
    check_super(s);
    total_ += s.expanded_time();
  }
}

SuperSchedule SuperSchedule::from_bases(const std::vector<double>& base_times, int depth) {
  std::vector<SuperIteration> supers;
  supers.reserve(base_times.size());
  for (double b : base_times) supers.push_back({b, depth});
  return SuperSchedule(std::move(supers));
}

double SuperSchedule::nominal_total() const {
  double t = 0;
  for (const auto& s : supers_) t += s.base_time;
  return t;
}

std::vector<double> SuperSchedule::base_times() const {
  std::vector<double> out;
  out.reserve(supers_.size());
  for (const auto& s : supers_) out.push_back(s.base_time);
  return out;
}

double super_suppression(double zeta_sup) {
  if (!std::isfinite(zeta_sup) || zeta_sup < 0) throw DomainError("zeta_sup must be >= 0");
  return sinc_pi_squared(zeta_sup);
}

double truncated_super_suppression(double zeta_sup, int depth) {
  if (!std::isfinite(zeta_sup) || zeta_sup < 0) throw DomainError("zeta_sup must be >= 0");
  if (depth < 1) throw DomainError("depth must be >= 1");
  // prod_{k=1}^N cos(pi z / 2^k) = sin(pi z) / (2^N sin(pi z / 2^N))
  const double scaled = std::ldexp(zeta_sup, -depth);
  const double den = sin_pi(scaled);
  if (den == 0) return 1;  // zeta_sup = 0 or an integer multiple of 2^N
  const double ratio = sin_pi(zeta_sup) / (std::ldexp(1.0, depth) * den);
  if (!std::isfinite(ratio)) {
    // 2^N overflow for absurd depths: the denominator is j0 ~ 1
    return super_suppression(zeta_sup);
  }
  return ratio * ratio;
}

double max_valid_energy(int depth, double leading_time) {
  if (depth < 1) throw DomainError("depth must be >= 1");
  if (!(leading_time > 0)) throw DomainError("leading time must be positive");
  return (std::ldexp(1.0, depth) - 1.430) / leading_time;
}

Schedule expand(const SuperSchedule& schedule) {
  std::vector<double> times;
  for (const auto& s : schedule.supers()) {
    for (int k = 1; k <= s.depth; ++k) times.push_back(std::ldexp(s.base_time, -k));
  }
  return Schedule(times);
}

double super_schedule_suppression(const SuperSchedule& schedule, double x) {
  if (!std::isfinite(x) || x < 0) throw DomainError("energy ratio must be >= 0");
  double s = 1;
  for (const auto& sup : schedule.supers()) {
    s *= truncated_super_suppression(x * sup.base_time, sup.depth);
    if (s == 0) break;
  }
  return s;
}

SuppressionProfile bessel_profile(const std::vector<double>& base_times, double zero_window) {
  if (base_times.empty()) throw UsageError("bessel_profile needs at least one base time");
  for (double b : base_times) {
    if (!std::isfinite(b) || !(b > 0)) throw UsageError("base times must be positive");
  }
  const Eigen::ArrayXd bases = bases_array(base_times);
  auto scalar = [bases](double x) {
    double s = 1;
    for (Eigen::Index k = 0; k < bases.size(); ++k) s *= sinc_pi_squared(x * bases[k]);
    return s;
  };
  auto batch = [bases](const Eigen::ArrayXd& x) {
    Eigen::ArrayXd s = Eigen::ArrayXd::Ones(x.size());
    for (Eigen::Index k = 0; k < bases.size(); ++k) s *= sinc_pi_squared((x * bases[k]).eval());
    return s;
  };
  auto tail = [bases](double x) {
    const Eigen::ArrayXd t = std::numbers::pi * x * bases;
    return std::min(1.0, (1.0 / (t * t)).prod());
  };
  return SuppressionProfile(scalar, integer_zeros(base_times, zero_window, nullptr), batch, tail);
}

SuppressionProfile super_profile(const SuperSchedule& schedule, double zero_window) {
  std::vector<int> depths;
  for (const auto& s : schedule.supers()) depths.push_back(s.depth);
  const std::vector<double> bases = schedule.base_times();
  return SuppressionProfile(
      [schedule](double x) { return super_schedule_suppression(schedule, x); },
      integer_zeros(bases, zero_window, &depths));
}

}  // namespace rodeo
