#include "rodeo/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rodeo/errors.hpp"

namespace rodeo {

namespace {

constexpr double kLogSpaceThreshold = 1e-300;

void check_times(const Eigen::ArrayXd& times) {
  if (times.size() == 0) throw UsageError("schedule must contain at least one time");
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !(times[i] > 0)) {
      throw UsageError("schedule time " + std::to_string(i) +
                       " must be finite and positive");
    }
  }
}

Eigen::ArrayXd to_array(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Schedule::Schedule(Eigen::ArrayXd times) : times_(std::move(times)) {
  check_times(times_);
  total_ = times_.sum();
}

Schedule::Schedule(std::initializer_list<double> times)
    : Schedule(std::vector<double>(times)) {}

Schedule::Schedule(const std::vector<double>& times) : Schedule(to_array(times)) {}

std::vector<double> Schedule::to_vector() const {
  return {times_.data(), times_.data() + times_.size()};
}

Schedule concat(const Schedule& a, const Schedule& b) {
  Eigen::ArrayXd joined(a.size() + b.size());
  joined << a.times(), b.times();
  return Schedule(std::move(joined));
}

DiscreteSpectrum::DiscreteSpectrum(double ground_weight,
                                   std::vector<ExcitedComponent> excited)
    : ground_weight_(ground_weight), excited_(std::move(excited)) {
  if (!std::isfinite(ground_weight_) || ground_weight_ < 0) {
    throw DomainError("ground weight must be a nonnegative probability");
  }
  double total = ground_weight_;
  for (const auto& c : excited_) {
    if (!std::isfinite(c.weight) || c.weight < 0) {
      throw DomainError("excited weights must be nonnegative");
    }
    if (!std::isfinite(c.x) || c.x < 1) {
      throw DomainError("excited energy ratios must be >= 1");
    }
    total += c.weight;
  }
  if (std::abs(total - 1) > 1e-12) {
    throw DomainError("spectrum weights sum to " + std::to_string(total) + ", not 1");
  }
}

double DiscreteSpectrum::excited_weight() const {
  double w = 0;
  for (const auto& c : excited_) w += c.weight;
  return w;
}

SuppressionProfile::SuppressionProfile(Evaluator eval, std::vector<double> zero_set,
                                       BatchEvaluator batch, TailBound tail)
    : eval_(std::move(eval)),
      batch_(std::move(batch)),
      tail_(std::move(tail)),
      zero_set_(std::move(zero_set)) {
  std::sort(zero_set_.begin(), zero_set_.end());
}

Eigen::ArrayXd SuppressionProfile::operator()(const Eigen::ArrayXd& x) const {
  if (batch_) return batch_(x);
  return x.unaryExpr([this](double v) { return eval_(v); });
}

SuppressionProfile SuppressionProfile::constant(double value) {
  return SuppressionProfile([value](double) { return value; });
}

SuppressionProfile SuppressionProfile::of_schedule(const Schedule& schedule,
                                                   double zero_window) {
  std::vector<double> zeros;
  for (Eigen::Index j = 0; j < schedule.size(); ++j) {
    const double tau = schedule[j];
    for (double k = 0;; ++k) {
      const double x = (k + 0.5) / tau;
      if (x > zero_window) break;
      zeros.push_back(x);
    }
  }
  std::sort(zeros.begin(), zeros.end());
  zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());
  return SuppressionProfile([schedule](double x) { return schedule_suppression(schedule, x); },
                            std::move(zeros));
}

double schedule_suppression(const Schedule& schedule, double x) {
  double product = 1;
  double log_part = 0;
  bool in_log = false;
  for (Eigen::Index j = 0; j < schedule.size(); ++j) {
    const double s = single_iteration_suppression(x, schedule[j]);
    if (s == 0) return 0;
    product *= s;
    if (product < kLogSpaceThreshold) {
      log_part += std::log(product);
      product = 1;
      in_log = true;
    }
  }
  return in_log ? std::exp(log_part + std::log(product)) : product;
}

double log_schedule_suppression(const Schedule& schedule, double x) {
  double log_sum = 0;
  for (Eigen::Index j = 0; j < schedule.size(); ++j) {
    const double s = single_iteration_suppression(x, schedule[j]);
    if (s == 0) return -std::numeric_limits<double>::infinity();
    log_sum += std::log(s);
  }
  return log_sum;
}

double ground_state_probability(double p_g_initial, double overall_suppression) {
  if (!std::isfinite(p_g_initial) || !std::isfinite(overall_suppression)) {
    throw DomainError("ground_state_probability: non-finite input");
  }
  if (!(p_g_initial > 0) || p_g_initial > 1) {
    throw DomainError("initial ground-state probability must lie in (0, 1]");
  }
  if (overall_suppression < 0) throw DomainError("suppression must be nonnegative");
  return p_g_initial / (p_g_initial + (1 - p_g_initial) * overall_suppression);
}

double overall_excited_suppression(const DiscreteSpectrum& spectrum,
                                   const SuppressionProfile& profile) {
  double num = 0;
  double den = 0;
  for (const auto& c : spectrum.excited()) {
    num += c.weight * profile(c.x);
    den += c.weight;
  }
  if (!(den > 0)) throw DomainError("spectrum has zero excited weight");
  return num / den;
}

double overall_excited_suppression(const DiscreteSpectrum& spectrum,
                                   const Schedule& schedule) {
  return overall_excited_suppression(spectrum, SuppressionProfile::of_schedule(schedule, 0));
}

double success_probability(const DiscreteSpectrum& spectrum,
                           const SuppressionProfile& profile) {
  double p = spectrum.ground_weight();
  for (const auto& c : spectrum.excited()) p += c.weight * profile(c.x);
  return std::min(p, 1.0);
}

double success_probability(const DiscreteSpectrum& spectrum, const Schedule& schedule) {
  return success_probability(spectrum, SuppressionProfile::of_schedule(schedule, 0));
}

double expected_total_time(const Schedule& schedule, double ground_weight) {
  if (!std::isfinite(ground_weight) || !(ground_weight > 0) || ground_weight > 1) {
    throw DomainError("expected_total_time: ground weight must lie in (0, 1]");
  }
  return schedule.total() / ground_weight;
}

}  // namespace rodeo
