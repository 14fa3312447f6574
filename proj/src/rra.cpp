#include "rodeo/rra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "rodeo/errors.hpp"
#include "rodeo/quadrature.hpp"
#include "rodeo/search.hpp"
#include "rodeo/special.hpp"

namespace rodeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi3 = kPi * kPi * kPi;

void require_n(int n) {
  if (n < 1) throw DomainError("iteration count must be >= 1");
}

void require_zeta(double zeta) {
  if (!std::isfinite(zeta) || zeta < 0) throw DomainError("zeta must be finite and >= 0");
}

// Natural log of the per-iteration factor of each statistic, as a function of
// the per-iteration phase count.
double log_arithmetic_factor(double z) {
  return std::log1p(std::exp(-kPi3 * z * z)) - std::numbers::ln2;
}

double log_rms_factor(double z) {
  const double e1 = std::exp(-kPi3 * z * z);
  const double e4 = std::exp(-4 * kPi3 * z * z);
  return 0.5 * (std::log(3.0 / 8.0) + std::log1p(e4 / 3 + 4 * e1 / 3));
}

double log_factor(Statistic statistic, double z) {
  switch (statistic) {
    case Statistic::arithmetic:
      return log_arithmetic_factor(z);
    case Statistic::rms:
      return log_rms_factor(z);
    case Statistic::geometric:
      return rra_log_geometric_mean_per_iteration(z);
  }
  return 0;
}

// log S / zeta_tot when n = alpha * zeta_tot.
double log_rate(Statistic statistic, double alpha) {
  return alpha * log_factor(statistic, 1 / alpha);
}

}  // namespace

HalfNormalTimeDistribution::HalfNormalTimeDistribution(double mean_time)
    : mean_(mean_time), sigma_(mean_time * std::sqrt(kPi / 2)) {
  if (!std::isfinite(mean_time) || !(mean_time > 0)) {
    throw DomainError("half-normal mean time must be finite and positive");
  }
}

double HalfNormalTimeDistribution::pdf(double t) const {
  if (t < 0) return 0;
  return 2 / (sigma_ * std::sqrt(2 * kPi)) * std::exp(-t * t / (2 * sigma_ * sigma_));
}

double HalfNormalTimeDistribution::sample(RngStream& stream) const {
  return std::abs(stream.normal()) * sigma_;
}

std::string_view to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::geometric:
      return "geometric";
    case Statistic::arithmetic:
      return "arithmetic";
    case Statistic::rms:
      return "rms";
  }
  return "?";
}

Statistic parse_statistic(std::string_view name) {
  if (name == "geometric") return Statistic::geometric;
  if (name == "arithmetic") return Statistic::arithmetic;
  if (name == "rms") return Statistic::rms;
  throw UsageError("unknown statistic '" + std::string(name) + "'");
}

double rra_mean_per_iteration(double zeta, int n) {
  require_zeta(zeta);
  require_n(n);
  return std::exp(n * log_arithmetic_factor(zeta));
}

double rra_mean_total(double zeta_tot, int n) {
  require_zeta(zeta_tot);
  require_n(n);
  return rra_mean_per_iteration(zeta_tot / n, n);
}

double rra_log_geometric_mean_per_iteration(double zeta) {
  require_zeta(zeta);
  if (zeta == 0) return 0;

  const HalfNormalTimeDistribution dist(1.0);
  const double t_max = 10 * dist.sigma();
  const TanhSinh quad(1e-10);

  // Between consecutive zeros T_k = (k + 1/2)/zeta the integrand is
  // log sin^2(pi zeta d), d = distance to a zero endpoint.
  auto integrate = [&](double a, double b, bool left_zero, bool right_zero) {
    return quad.integrate(
        [&](double t, double dl, double dr) {
          double c2;
          if (left_zero || right_zero) {
            double d = left_zero && right_zero ? std::min(dl, dr) : (left_zero ? dl : dr);
            const double s = std::sin(kPi * zeta * d);
            c2 = s * s;
          } else {
            const double c = cos_pi(zeta * t);
            c2 = c * c;
          }
          return std::log(c2) * dist.pdf(t);
        },
        a, b);
  };

  double total = 0;
  double left = 0;
  bool left_zero = false;
  for (double k = 0;; ++k) {
    const double zero = (k + 0.5) / zeta;
    if (zero >= t_max) break;
    total += integrate(left, zero, left_zero, true);
    left = zero;
    left_zero = true;
  }
  total += integrate(left, t_max, left_zero, false);
  if (!std::isfinite(total)) throw NumericError("geometric-mean quadrature diverged");
  return total;
}

double rra_geometric_mean(double zeta, int n) {
  require_n(n);
  return std::exp(n * rra_log_geometric_mean_per_iteration(zeta));
}

double rra_rms(double zeta, int n) {
  require_zeta(zeta);
  require_n(n);
  return std::exp(n * log_rms_factor(zeta));
}

double rra_sigma_over_mean(double zeta, int n) {
  require_zeta(zeta);
  require_n(n);
  // (rms / mean)^2 per iteration; the radicand is q^n - 1
  const double log_q = 2 * log_rms_factor(zeta) - 2 * log_arithmetic_factor(zeta);
  const double radicand = std::expm1(n * log_q);
  return radicand > 0 ? std::sqrt(radicand) : 0.0;
}

EnsembleStatistics rra_closed_form_statistics(double zeta, int n) {
  EnsembleStatistics s;
  s.n = n;
  s.zeta = zeta;
  s.arithmetic_mean = rra_mean_per_iteration(zeta, n);
  s.geometric_mean = rra_geometric_mean(zeta, n);
  s.rms = rra_rms(zeta, n);
  s.sigma_over_mean = rra_sigma_over_mean(zeta, n);
  return s;
}

SeparatrixFit solve_separatrix() {
  // d/dn [n log g(zeta_tot / n)] = 0 with n = alpha zeta_tot gives
  //   log((1 + e^{-pi^3/alpha^2}) / 2) + 2 pi^3 / (alpha^2 (1 + e^{pi^3/alpha^2})) = 0.
  auto residual = [](double alpha) {
    const double a2 = alpha * alpha;
    return log_arithmetic_factor(1 / alpha) + 2 * kPi3 / (a2 * (1 + std::exp(kPi3 / a2)));
  };
  SeparatrixFit fit;
  fit.alpha = bisect_root(residual, 3.0, 6.0, 1e-13);
  fit.beta = -fit.alpha * log_arithmetic_factor(1 / fit.alpha);
  return fit;
}

SeparatrixFit separatrix_fit_for(Statistic statistic) {
  if (statistic == Statistic::arithmetic) return solve_separatrix();
  // Minimize log S / zeta_tot over alpha.
  const auto best = golden_section_maximize(
      [statistic](double alpha) { return -log_rate(statistic, alpha); }, 1.5, 12.0, 1e-9);
  return {best.x, best.value};
}

double separatrix_bound(Statistic statistic, double zeta_tot) {
  require_zeta(zeta_tot);
  return std::exp(-separatrix_fit_for(statistic).beta * zeta_tot);
}

double min_time_for_mean_suppression(double target) {
  if (!std::isfinite(target) || !(target > 0) || !(target < 1)) {
    throw DomainError("target mean suppression must lie in (0, 1)");
  }
  return -std::log(target) / solve_separatrix().beta;
}

Schedule sample_schedule(int n, const HalfNormalTimeDistribution& dist, StreamId stream) {
  require_n(n);
  RngStream rng(stream);
  Eigen::ArrayXd times(n);
  for (int j = 0; j < n; ++j) times[j] = dist.sample(rng);
  return Schedule(std::move(times));
}

std::vector<double> sample_log_suppressions(double zeta, int n, std::size_t trials,
                                            std::uint64_t seed, unsigned threads) {
  require_zeta(zeta);
  require_n(n);
  if (trials == 0) throw UsageError("trials must be >= 1");
  const HalfNormalTimeDistribution dist(1.0);
  std::vector<double> out(trials);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      RngStream rng({seed, t});
      double log_s = 0;
      for (int j = 0; j < n; ++j) {
        const double c = cos_pi(zeta * dist.sample(rng));
        log_s += std::log(c * c);
      }
      out[t] = log_s;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
  if (threads <= 1) {
    work(0, trials);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (trials + threads - 1) / threads;
  for (unsigned i = 0; i < threads; ++i) {
    const std::size_t begin = i * chunk;
    const std::size_t end = std::min(trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

MonteCarloStatistics monte_carlo_statistics(double zeta, int n, std::size_t trials,
                                            std::uint64_t seed, unsigned threads) {
  std::vector<double> log_s = sample_log_suppressions(zeta, n, trials, seed, threads);
  const double count = static_cast<double>(trials);

  double sum_s = 0;
  double sum_s2 = 0;
  double sum_log = 0;
  for (double l : log_s) {
    const double s = std::exp(l);
    sum_s += s;
    sum_s2 += s * s;
    sum_log += l;
  }
  const double mean = sum_s / count;
  const double mean_s2 = sum_s2 / count;
  const double mean_log = sum_log / count;

  double var_s = 0;
  double var_s2 = 0;
  double var_log = 0;
  for (double l : log_s) {
    const double s = std::exp(l);
    var_s += (s - mean) * (s - mean);
    var_s2 += (s * s - mean_s2) * (s * s - mean_s2);
    var_log += (l - mean_log) * (l - mean_log);
  }
  const double dof = trials > 1 ? count - 1 : 1;
  var_s /= dof;
  var_s2 /= dof;
  var_log /= dof;

  MonteCarloStatistics out;
  out.n = n;
  out.zeta = zeta;
  out.trials = trials;
  out.arithmetic_mean = mean;
  out.rms = std::sqrt(mean_s2);
  out.geometric_mean = std::exp(mean_log);
  out.sigma_over_mean = mean > 0 ? std::sqrt(var_s) / mean : 0;
  out.stderr_mean = std::sqrt(var_s / count);
  out.stderr_rms = out.rms > 0 ? std::sqrt(var_s2 / count) / (2 * out.rms) : 0;
  out.stderr_log_geometric = std::sqrt(var_log / count);

  // sample median of ln s
  const auto mid = log_s.begin() + static_cast<std::ptrdiff_t>(trials / 2);
  std::nth_element(log_s.begin(), mid, log_s.end());
  double median_log = *mid;
  if (trials % 2 == 0) {
    const double lower = *std::max_element(log_s.begin(), mid);
    median_log = 0.5 * (lower + median_log);
  }
  out.median = std::exp(median_log);
  return out;
}

double fraction_below(const Schedule& schedule, double lo, double hi, std::size_t points,
                      double threshold) {
  if (points < 2 || !(hi > lo)) throw UsageError("fraction_below: need points >= 2 and hi > lo");
  std::size_t below = 0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    if (schedule_suppression(schedule, x) < threshold) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(points);
}

}  // namespace rodeo
