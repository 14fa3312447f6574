#pragma once

// Random rodeo algorithm: iteration times drawn independently from a
// half-normal distribution. Closed-form ensemble statistics, the separatrix of
// best achievable statistic at fixed total time, and Monte Carlo estimates.
//
// Throughout, `zeta` is the phase count per unit mean iteration time
// (x * mean_time) and `zeta_tot = n * zeta`.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rodeo/core.hpp"
#include "rodeo/random.hpp"

namespace rodeo {

/// Positive half of a zero-centred normal, parameterized by its mean.
class HalfNormalTimeDistribution {
 public:
  explicit HalfNormalTimeDistribution(double mean_time = 1.0);

  double mean_time() const { return mean_; }
  /// Scale of the underlying normal: mean * sqrt(pi / 2).
  double sigma() const { return sigma_; }
  double pdf(double t) const;
  double sample(RngStream& stream) const;

 private:
  double mean_;
  double sigma_;
};

struct EnsembleStatistics {
  double arithmetic_mean = 0;
  double geometric_mean = 0;
  double rms = 0;
  double sigma_over_mean = 0;
  int n = 0;
  double zeta = 0;
};

struct MonteCarloStatistics : EnsembleStatistics {
  double median = 0;
  double stderr_mean = 0;
  double stderr_rms = 0;
  double stderr_log_geometric = 0;  ///< standard error of mean(ln s)
  std::size_t trials = 0;
};

enum class Statistic { geometric, arithmetic, rms };

std::string_view to_string(Statistic statistic);
Statistic parse_statistic(std::string_view name);

/// n = alpha * zeta_tot minimizes the statistic at fixed zeta_tot, where it
/// equals exp(-beta * zeta_tot).
struct SeparatrixFit {
  double alpha = 0;
  double beta = 0;
};

/// ((1 + exp(-pi^3 zeta^2)) / 2)^n.
double rra_mean_per_iteration(double zeta, int n);

/// rra_mean_per_iteration(zeta_tot / n, n).
double rra_mean_total(double zeta_tot, int n);

/// Integral of log cos^2(pi T zeta) against the unit-mean half-normal density,
/// by tanh-sinh quadrature split at every zero of the cosine.
double rra_log_geometric_mean_per_iteration(double zeta);

/// exp(n * rra_log_geometric_mean_per_iteration(zeta)).
double rra_geometric_mean(double zeta, int n);

/// (3/8)^{n/2} (1 + e^{-4 pi^3 zeta^2}/3 + 4 e^{-pi^3 zeta^2}/3)^{n/2}.
double rra_rms(double zeta, int n);

/// Standard deviation over arithmetic mean of the suppression distribution.
double rra_sigma_over_mean(double zeta, int n);

EnsembleStatistics rra_closed_form_statistics(double zeta, int n);

/// Continuous-n stationary point of the arithmetic mean (alpha ~ 4.271).
SeparatrixFit solve_separatrix();

SeparatrixFit separatrix_fit_for(Statistic statistic);

/// Best value of the statistic over continuous n at fixed zeta_tot.
double separatrix_bound(Statistic statistic, double zeta_tot);

/// Smallest total time (units of T0) at which the mean suppression of every
/// component with x >= 1 can reach `target`: -ln(target) / beta.
double min_time_for_mean_suppression(double target);

/// n independent half-normal iteration times drawn from `stream`.
Schedule sample_schedule(int n, const HalfNormalTimeDistribution& dist, StreamId stream);

/// ln s for each of `trials` sampled unit-mean schedules at fixed zeta.
/// Trial t uses stream (seed, t); the result does not depend on `threads`.
std::vector<double> sample_log_suppressions(double zeta, int n, std::size_t trials,
                                            std::uint64_t seed, unsigned threads = 0);

MonteCarloStatistics monte_carlo_statistics(double zeta, int n, std::size_t trials,
                                            std::uint64_t seed, unsigned threads = 0);

/// Fraction of a uniform grid of `points` energies on [lo, hi] at which the
/// schedule's suppression is below `threshold`.
double fraction_below(const Schedule& schedule, double lo, double hi, std::size_t points,
                      double threshold);

}  // namespace rodeo
