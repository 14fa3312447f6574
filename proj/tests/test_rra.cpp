#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rodeo/rra.hpp"

namespace {

using rodeo::Statistic;

TEST(RraMean, Examples) {
  EXPECT_EQ(rodeo::rra_mean_per_iteration(0.0, 3), 1.0);
  EXPECT_NEAR(rodeo::rra_mean_per_iteration(20.0, 6), 0.015625, 1e-9);
  EXPECT_NEAR(rodeo::rra_mean_per_iteration(0.2, 1), 0.5 * (1 + std::exp(-oracle::kPi3 * 0.04)), 1e-15);
  EXPECT_EQ(rodeo::rra_mean_total(0.0, 7), 1.0);
}

TEST(RraMean, MatchesQuadratureOfDensity) {
  for (double z : {0.05, 0.2, 0.5, 1.0, 2.0}) {
    EXPECT_NEAR(rodeo::rra_mean_per_iteration(z, 1), oracle::half_normal_moment(z, 1), 1e-9) << z;
  }
}

TEST(RraMean, BestIntegerCountAtZetaTotFive) {
  double best = 1;
  for (int n = 1; n <= 60; ++n) best = std::min(best, rodeo::rra_mean_total(5.0, n));
  EXPECT_GE(best, 1.34e-5 * (1 - 5e-3));
  EXPECT_NEAR(best, 1.34e-5, 0.03 * 1.34e-5);
}

TEST(RraGeometric, MatchesFourierSeries) {
  for (double z : {0.25, 0.4, 0.7, 1.0, 2.0, 3.5, 5.0, 10.0}) {
    const double expected = oracle::log_geometric_series(z);
    EXPECT_NEAR(rodeo::rra_log_geometric_mean_per_iteration(z), expected, 1e-8 * std::abs(expected)) << z;
  }
}

TEST(RraGeometric, Examples) {
  EXPECT_NEAR(rodeo::rra_geometric_mean(20.0, 1), 0.25, 1e-6);
  const double log150 = std::log(rodeo::rra_geometric_mean(3.0, 150));
  EXPECT_NEAR(log150, -150 * std::log(4.0), 0.03 * 150 * std::log(4.0));
  EXPECT_NEAR(rodeo::rra_geometric_mean(2.5, 4),
              std::exp(4 * rodeo::rra_log_geometric_mean_per_iteration(2.5)), 1e-15);
  EXPECT_EQ(rodeo::rra_geometric_mean(0.0, 5), 1.0);
}

TEST(RraRms, Examples) {
  EXPECT_NEAR(rodeo::rra_rms(0.0, 4), 1.0, 1e-15);
  EXPECT_NEAR(rodeo::rra_rms(20.0, 2), 3.0 / 8, 1e-9);
}

TEST(RraRms, MatchesQuadratureOfDensity) {
  for (double z : {0.1, 0.3, 0.6, 1.5}) {
    EXPECT_NEAR(rodeo::rra_rms(z, 2), oracle::half_normal_moment(z, 2), 1e-9) << z;
  }
}

TEST(RraSigmaOverMean, Examples) {
  EXPECT_NEAR(rodeo::rra_sigma_over_mean(20.0, 20), std::pow(1.5, 10), 1e-3 * std::pow(1.5, 10));
  EXPECT_EQ(rodeo::rra_sigma_over_mean(0.0, 9), 0.0);
  const double rms = rodeo::rra_rms(2.0, 8), mean = rodeo::rra_mean_per_iteration(2.0, 8);
  EXPECT_NEAR(rodeo::rra_sigma_over_mean(2.0, 8), std::sqrt(rms * rms / (mean * mean) - 1), 1e-12);
}

TEST(RraClosedForms, AmGmRmsOrdering) {
  for (double z : {0.1, 0.3, 0.5, 1.0, 2.0, 5.0}) {
    for (int n : {1, 2, 6, 15}) {
      const auto s = rodeo::rra_closed_form_statistics(z, n);
      EXPECT_LE(s.geometric_mean, s.arithmetic_mean) << z << ' ' << n;
      EXPECT_LE(s.arithmetic_mean, s.rms) << z << ' ' << n;
    }
  }
}

TEST(RraClosedForms, RejectInvalid) {
  EXPECT_THROW(rodeo::rra_mean_per_iteration(-1.0, 3), rodeo::DomainError);
  EXPECT_THROW(rodeo::rra_rms(1.0, 0), rodeo::DomainError);
}

TEST(Separatrix, ArithmeticConstants) {
  const auto fit = rodeo::solve_separatrix();
  EXPECT_NEAR(fit.alpha, 4.271, 1e-3);
  EXPECT_NEAR(fit.beta, 2.244, 1e-3);
  const auto same = rodeo::separatrix_fit_for(Statistic::arithmetic);
  EXPECT_EQ(same.alpha, fit.alpha);
  EXPECT_EQ(same.beta, fit.beta);
}

TEST(Separatrix, MatchesDenseScan) {
  auto log_mean = [](double z) { return std::log((1 + std::exp(-oracle::kPi3 * z * z)) / 2); };
  auto log_rms = [](double z) {
    return 0.5 * std::log(3.0 / 8 * (1 + std::exp(-4 * oracle::kPi3 * z * z) / 3 +
                                     4 * std::exp(-oracle::kPi3 * z * z) / 3));
  };
  const auto mean_scan = oracle::separatrix_scan(log_mean, 3, 6);
  const auto rms_scan = oracle::separatrix_scan(log_rms, 3, 7);
  const auto geo_scan = oracle::separatrix_scan(oracle::log_geometric_series, 3, 6);
  const auto mean = rodeo::separatrix_fit_for(Statistic::arithmetic);
  const auto rms = rodeo::separatrix_fit_for(Statistic::rms);
  const auto geo = rodeo::separatrix_fit_for(Statistic::geometric);
  EXPECT_NEAR(mean.alpha, mean_scan.alpha, 1e-5);
  EXPECT_NEAR(mean.beta, mean_scan.beta, 1e-9);
  EXPECT_NEAR(rms.alpha, rms_scan.alpha, 1e-5);
  EXPECT_NEAR(rms.beta, rms_scan.beta, 1e-9);
  EXPECT_NEAR(geo.alpha, geo_scan.alpha, 1e-4);
  EXPECT_NEAR(geo.beta, geo_scan.beta, 1e-8);
}

TEST(Separatrix, RmsConstant) {
  EXPECT_NEAR(rodeo::separatrix_fit_for(Statistic::rms).beta, 1.637, 1e-3);
}

TEST(Separatrix, GeometricConstant) {
  EXPECT_NEAR(rodeo::separatrix_fit_for(Statistic::geometric).beta, 4.46, 1e-2);
}

TEST(Separatrix, BoundIsMinimumOverContinuousN) {
  for (double zt : {1.0, 5.0, 9.0}) {
    const double bound = rodeo::separatrix_bound(Statistic::arithmetic, zt);
    for (int n = 1; n <= 60; ++n) EXPECT_LE(bound, rodeo::rra_mean_total(zt, n) * (1 + 1e-12));
  }
}

TEST(MinTime, Examples) {
  EXPECT_NEAR(rodeo::min_time_for_mean_suppression(1e-6), std::log(1e6) / 2.244, 1e-3);
  const double beta = rodeo::solve_separatrix().beta;
  EXPECT_NEAR(rodeo::min_time_for_mean_suppression(std::exp(-beta)), 1.0, 1e-12);
  const double near_one = rodeo::min_time_for_mean_suppression(1 - 1e-9);
  EXPECT_GT(near_one, 0.0);
  EXPECT_LT(near_one, 1e-8);
  EXPECT_THROW(rodeo::min_time_for_mean_suppression(1.0), rodeo::DomainError);
  EXPECT_THROW(rodeo::min_time_for_mean_suppression(0.0), rodeo::DomainError);
}

TEST(HalfNormal, Parameterization) {
  const rodeo::HalfNormalTimeDistribution d(2.0);
  EXPECT_NEAR(d.sigma(), 2.0 * std::sqrt(std::numbers::pi / 2), 1e-15);
  const double mass = oracle::simpson([&](double t) { return d.pdf(t); }, 0, 40, 20000);
  const double mean = oracle::simpson([&](double t) { return t * d.pdf(t); }, 0, 40, 20000);
  EXPECT_NEAR(mass, 1.0, 1e-10);
  EXPECT_NEAR(mean, 2.0, 1e-10);
  EXPECT_EQ(d.pdf(-0.1), 0.0);
}

TEST(SampleSchedule, ReproducibleAndPositive) {
  const rodeo::HalfNormalTimeDistribution d(1.0);
  const auto a = rodeo::sample_schedule(5, d, {9, 3});
  const auto b = rodeo::sample_schedule(5, d, {9, 3});
  ASSERT_EQ(a.size(), 5);
  for (Eigen::Index i = 0; i < 5; ++i) {
    EXPECT_GT(a[i], 0.0);
    EXPECT_EQ(a[i], b[i]);
  }
}

TEST(SampleSchedule, SampleMeanIsMeanTime) {
  const rodeo::HalfNormalTimeDistribution d(1.0);
  const auto s = rodeo::sample_schedule(200000, d, {10, 0});
  const double sd = std::sqrt(std::numbers::pi / 2 - 1);
  EXPECT_NEAR(s.total() / 200000, 1.0, 4 * sd / std::sqrt(200000.0));
}

TEST(MonteCarlo, ZeroZetaIsDeterministic) {
  const auto mc = rodeo::monte_carlo_statistics(0.0, 4, 1000, 1);
  EXPECT_EQ(mc.arithmetic_mean, 1.0);
  EXPECT_EQ(mc.geometric_mean, 1.0);
  EXPECT_EQ(mc.rms, 1.0);
  EXPECT_EQ(mc.median, 1.0);
  EXPECT_EQ(mc.sigma_over_mean, 0.0);
  EXPECT_EQ(mc.stderr_mean, 0.0);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  const auto one = rodeo::sample_log_suppressions(1.3, 4, 5001, 77, 1);
  const auto three = rodeo::sample_log_suppressions(1.3, 4, 5001, 77, 3);
  EXPECT_EQ(one, three);
}

TEST(MonteCarlo, AgreesWithClosedForms) {
  for (double z : {0.5, 1.0, 2.0, 5.0}) {
    for (int n : {1, 3, 6}) {
      const auto mc = rodeo::monte_carlo_statistics(z, n, 200000, 2024);
      EXPECT_NEAR(mc.arithmetic_mean, rodeo::rra_mean_per_iteration(z, n), 3 * mc.stderr_mean) << z << ' ' << n;
      EXPECT_NEAR(mc.rms, rodeo::rra_rms(z, n), 3 * mc.stderr_rms) << z << ' ' << n;
      EXPECT_NEAR(std::log(mc.geometric_mean), n * oracle::log_geometric_series(z),
                  3 * mc.stderr_log_geometric) << z << ' ' << n;
    }
  }
}

TEST(MonteCarlo, AmGmRmsOrdering) {
  for (double z : {0.3, 1.0, 4.0}) {
    const auto mc = rodeo::monte_carlo_statistics(z, 5, 20000, 5);
    EXPECT_LE(mc.geometric_mean, mc.arithmetic_mean);
    EXPECT_LE(mc.arithmetic_mean, mc.rms);
  }
}

TEST(MonteCarlo, LargeZetaMeanIsHalfToTheN) {
  const auto mc = rodeo::monte_carlo_statistics(20.0, 6, 1000000, 7);
  EXPECT_NEAR(mc.arithmetic_mean, std::pow(2.0, -6), 3 * mc.stderr_mean);
  EXPECT_NEAR(mc.geometric_mean, std::pow(4.0, -6), 0.2 * std::pow(4.0, -6));
}

TEST(MonteCarlo, LargeZetaMedianNearQuarterToTheN) {
  const auto mc = rodeo::monte_carlo_statistics(20.0, 6, 1000000, 7);
  EXPECT_NEAR(mc.median, std::pow(4.0, -6), 0.2 * std::pow(4.0, -6));
}

TEST(MonteCarlo, LogSuppressionSkewnessShrinks) {
  for (int n : {20, 50}) {
    const auto logs = rodeo::sample_log_suppressions(3.0, n, 100000, 31);
    double mean = 0;
    for (double l : logs) mean += l;
    mean /= logs.size();
    double m2 = 0, m3 = 0;
    for (double l : logs) {
      m2 += (l - mean) * (l - mean);
      m3 += (l - mean) * (l - mean) * (l - mean);
    }
    m2 /= logs.size();
    m3 /= logs.size();
    const double skew = m3 / std::pow(m2, 1.5);
    EXPECT_LE(std::abs(skew), 5 / std::sqrt(static_cast<double>(n))) << n;
  }
}

TEST(SingleRun, FractionBelowQuarterPower) {
  const rodeo::HalfNormalTimeDistribution d(1.0);
  int inside = 0;
  const int seeds = 200;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto s = rodeo::sample_schedule(6, d, {static_cast<std::uint64_t>(seed), 0});
    const double f = rodeo::fraction_below(s, 2, 10, 801, std::pow(4.0, -6));
    inside += f >= 0.35 && f <= 0.75;
  }
  EXPECT_GE(inside, static_cast<int>(0.95 * seeds));
}

TEST(Statistic, NamesRoundTrip) {
  for (Statistic s : {Statistic::geometric, Statistic::arithmetic, Statistic::rms}) {
    EXPECT_EQ(rodeo::parse_statistic(rodeo::to_string(s)), s);
  }
  EXPECT_THROW(rodeo::parse_statistic("median"), rodeo::UsageError);
}

}  // namespace
