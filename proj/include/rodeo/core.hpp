#pragma once

// Dimensionless conventions: energies are x = E/Delta, times are tau = T/T0
// with T0 = 2 pi hbar / Delta, so the phase count of one iteration is
// zeta = x * tau and the per-iteration suppression is cos^2(pi x tau).

#include <cmath>
#include <functional>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

#include "rodeo/errors.hpp"
#include "rodeo/special.hpp"

namespace rodeo {

/// Ordered iteration times in units of T0. Nonempty, every entry finite and > 0.
class Schedule {
 public:
  explicit Schedule(Eigen::ArrayXd times);
  Schedule(std::initializer_list<double> times);
  explicit Schedule(const std::vector<double>& times);

  const Eigen::ArrayXd& times() const { return times_; }
  Eigen::Index size() const { return times_.size(); }
  double operator[](Eigen::Index i) const { return times_[i]; }
  double total() const { return total_; }
  std::vector<double> to_vector() const;

 private:
  Eigen::ArrayXd times_;
  double total_ = 0;
};

/// Schedule A followed by schedule B.
Schedule concat(const Schedule& a, const Schedule& b);

struct ExcitedComponent {
  double x = 1;       ///< energy ratio E/Delta, >= 1
  double weight = 0;  ///< |alpha_c|^2
};

/// Ground-state weight plus a discrete list of excited components.
/// Weights are nonnegative and sum to one within 1e-12; every x >= 1.
class DiscreteSpectrum {
 public:
  DiscreteSpectrum(double ground_weight, std::vector<ExcitedComponent> excited);

  double ground_weight() const { return ground_weight_; }
  const std::vector<ExcitedComponent>& excited() const { return excited_; }
  double excited_weight() const;

 private:
  double ground_weight_;
  std::vector<ExcitedComponent> excited_;
};

/// Suppression factor s(x) as a function of energy ratio, with the exact zeros
/// it knows about. Optionally carries a batch evaluator for grids and a
/// non-increasing analytic majorant used to cap the tail of searches.
class SuppressionProfile {
 public:
  using Evaluator = std::function<double(double)>;
  using BatchEvaluator = std::function<Eigen::ArrayXd(const Eigen::ArrayXd&)>;
  using TailBound = std::function<double(double)>;

  explicit SuppressionProfile(Evaluator eval, std::vector<double> zero_set = {},
                              BatchEvaluator batch = {}, TailBound tail = {});

  double operator()(double x) const { return eval_(x); }
  Eigen::ArrayXd operator()(const Eigen::ArrayXd& x) const;

  /// Sorted energies at which s vanishes exactly (within the window the
  /// profile was built for).
  const std::vector<double>& zero_set() const { return zero_set_; }

  bool has_tail_bound() const { return static_cast<bool>(tail_); }
  /// Non-increasing upper bound on s(y) for every y >= x.
  double tail_bound(double x) const { return tail_(x); }

  static SuppressionProfile constant(double value);
  /// Profile of a plain schedule; zeros listed on (0, zero_window].
  static SuppressionProfile of_schedule(const Schedule& schedule,
                                        double zero_window = 16.0);

 private:
  Evaluator eval_;
  BatchEvaluator batch_;
  TailBound tail_;
  std::vector<double> zero_set_;
};

/// cos^2(pi x tau); exactly 1 at x = 0 and exactly 0 when x tau is a half-integer.
template <typename Scalar>
Scalar single_iteration_suppression(Scalar x, Scalar tau) {
  using std::isfinite;
  if (!isfinite(x) || !isfinite(tau)) {
    throw DomainError("single_iteration_suppression: non-finite input");
  }
  if (x < 0 || !(tau > 0)) {
    throw DomainError("single_iteration_suppression: need x >= 0 and tau > 0");
  }
  if (x == 0) return Scalar(1);
  const Scalar c = cos_pi(x * tau);
  return c * c;
}

/// Product of single-iteration suppressions over the schedule. The running
/// product is moved into log space whenever it drops below 1e-300.
double schedule_suppression(const Schedule& schedule, double x);

/// log of schedule_suppression, finite down to the smallest representable
/// factors; -infinity when some factor is exactly zero.
double log_schedule_suppression(const Schedule& schedule, double x);

/// P_g^i / (P_g^i + (1 - P_g^i) S_E).
double ground_state_probability(double p_g_initial, double overall_suppression);

/// Weighted mean of s over the excited components only.
double overall_excited_suppression(const DiscreteSpectrum& spectrum,
                                   const SuppressionProfile& profile);
double overall_excited_suppression(const DiscreteSpectrum& spectrum,
                                   const Schedule& schedule);

/// |alpha_g|^2 + sum_c s(x_c) |alpha_c|^2: the chance that every iteration
/// of the schedule succeeds.
double success_probability(const DiscreteSpectrum& spectrum, const Schedule& schedule);
double success_probability(const DiscreteSpectrum& spectrum,
                           const SuppressionProfile& profile);

/// Expected wall time to obtain one successfully projected state.
double expected_total_time(const Schedule& schedule, double ground_weight);

}  // namespace rodeo
