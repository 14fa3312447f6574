#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rodeo/bounds.hpp"
#include "rodeo/random.hpp"
#include "rodeo/wam.hpp"

namespace {

struct RowThree {
  rodeo::WamState state = rodeo::wam_optimize(3);
  rodeo::SuppressionProfile profile = state.profile();
  rodeo::MonotoneEnvelope envelope = rodeo::monotone_envelope(profile, 1.0, 20.0);
};

const RowThree& row_three() {
  static const RowThree r;
  return r;
}

TEST(Envelope, ConstantProfile) {
  const auto env = rodeo::monotone_envelope(rodeo::SuppressionProfile::constant(0.3), 1.0, 4.0);
  rodeo::RngStream rng({1, 0});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(env(1 + 3 * rng.uniform()), 0.3);
  EXPECT_EQ(env(4.0), 0.3);
}

TEST(Envelope, DecreasingProfileIsItsOwnEnvelope) {
  const rodeo::SuppressionProfile p([](double x) { return 1 / (x * x); });
  const auto env = rodeo::monotone_envelope(p, 1.0, 6.0);
  for (const auto& b : env.breakpoints()) EXPECT_EQ(b.s_ub, p(b.x));
  rodeo::RngStream rng({2, 0});
  for (int i = 0; i < 1000; ++i) {
    const double x = 1 + 5 * rng.uniform();
    EXPECT_GE(env(x), p(x));
    EXPECT_NEAR(env(x), p(x), 1e-3 * p(x));
  }
}

TEST(Envelope, RowThreeLeftEdgeIsQ) {
  EXPECT_NEAR(row_three().envelope(1.0), 2.421e-5, 0.05 * 2.421e-5);
  EXPECT_NEAR(row_three().envelope(1.0), rodeo::worst_case_bound(row_three().state),
              1e-9 * row_three().envelope(1.0));
}

TEST(Envelope, Dominates) {
  const auto& r = row_three();
  rodeo::RngStream rng({3, 0});
  for (int i = 0; i < 100000; ++i) {
    const double x = 1 + 30 * rng.uniform();
    ASSERT_GE(r.envelope(x), r.profile(x)) << x;
  }
}

TEST(Envelope, NonIncreasing) {
  const auto& b = row_three().envelope.breakpoints();
  for (std::size_t i = 1; i < b.size(); ++i) {
    ASSERT_GT(b[i].x, b[i - 1].x);
    ASSERT_LE(b[i].s_ub, b[i - 1].s_ub);
  }
}

TEST(Envelope, LeastOnItsSamples) {
  // every step value is attained by the profile at the right end of its
  // plateau, so no smaller non-increasing majorant exists on the samples
  const auto& r = row_three();
  const auto& b = r.envelope.breakpoints();
  int checked = 0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (b[i + 1].s_ub == b[i].s_ub) continue;
    ++checked;
    ASSERT_GE(r.profile(b[i].x), b[i].s_ub * (1 - 1e-12)) << b[i].x;
  }
  EXPECT_GT(checked, 10);
}

TEST(Envelope, AgreesWithFinerReferenceGrid) {
  const auto& r = row_three();
  const double lo = 1, hi = 6;
  const int points = static_cast<int>((hi - lo) * 2e5) + 1;
  std::vector<double> ref(points);
  const double h = (hi - lo) / (points - 1);
  double running = 0;
  for (int i = points - 1; i >= 0; --i) {
    running = std::max(running, r.profile(lo + i * h));
    ref[i] = running;
  }
  // the coarse envelope also sees the profile beyond hi
  const double beyond = r.envelope(hi);
  for (int i = 0; i < points; i += 97) {
    const double want = std::max(ref[i], beyond);
    EXPECT_NEAR(r.envelope(lo + i * h), want, 1e-3 * want) << lo + i * h;
  }
}

TEST(Envelope, TailBeyondGridIsAnalyticMajorant) {
  const auto& r = row_three();
  EXPECT_TRUE(r.envelope.covers(1000.0));
  for (double x : {25.0, 60.0, 300.0}) {
    EXPECT_GE(r.envelope(x), r.profile(x));
    EXPECT_LE(r.envelope(x), r.envelope(20.0));
  }
}

TEST(Envelope, RejectsDomainBelowGap) {
  EXPECT_THROW(rodeo::monotone_envelope(rodeo::SuppressionProfile::constant(1), 0.5, 2), rodeo::DomainError);
  const auto env = rodeo::monotone_envelope(rodeo::SuppressionProfile::constant(0.2), 1.0, 3.0);
  EXPECT_FALSE(env.covers(5.0));
  EXPECT_THROW(env(5.0), rodeo::DomainError);
}

TEST(PartialInfo, ReferenceBounds) {
  const auto& env = row_three().envelope;
  EXPECT_NEAR(rodeo::partial_info_bound(env, {0.99, 3}), 5.591e-7, 0.02 * 5.591e-7);
  EXPECT_NEAR(rodeo::partial_info_bound(env, {0.9999, 8}), 1.194e-8, 0.02 * 1.194e-8);
}

TEST(PartialInfo, NoInformationGivesQ) {
  const auto& env = row_three().envelope;
  EXPECT_EQ(rodeo::partial_info_bound(env, {0.0, 5}), env(1.0));
  for (double f : {0.1, 0.5, 0.9, 1.0}) {
    for (double x0 : {1.0, 2.0, 7.5, 19.0}) EXPECT_LE(rodeo::partial_info_bound(env, {f, x0}), env(1.0));
  }
}

TEST(PartialInfo, RejectsOutOfDomain) {
  const auto env = rodeo::monotone_envelope(rodeo::SuppressionProfile::constant(0.2), 1.0, 3.0);
  EXPECT_THROW(rodeo::partial_info_bound(env, {0.5, 4.0}), rodeo::DomainError);
  EXPECT_THROW(rodeo::partial_info_bound(env, {1.5, 2.0}), rodeo::DomainError);
  EXPECT_THROW(rodeo::partial_info_bound(env, {0.5, 0.5}), rodeo::DomainError);
}

TEST(PartialInfo, BoundChainOnConsistentSpectra) {
  const auto& r = row_three();
  rodeo::RngStream rng({4, 0});
  for (int trial = 0; trial < 1000; ++trial) {
    const double f = rng.uniform();
    const double x0 = 1 + 9 * rng.uniform();
    // weight f spread above x0, weight 1 - f on [1, x0)
    std::vector<rodeo::ExcitedComponent> excited;
    const int high = 1 + static_cast<int>(3 * rng.uniform());
    const int low = 1 + static_cast<int>(3 * rng.uniform());
    const double excited_total = 0.8;
    for (int i = 0; i < high; ++i) excited.push_back({x0 + 15 * rng.uniform(), excited_total * f / high});
    for (int i = 0; i < low; ++i) excited.push_back({1 + (x0 - 1) * rng.uniform(), excited_total * (1 - f) / low});
    const rodeo::DiscreteSpectrum spectrum(1 - excited_total, excited);
    const double exact = rodeo::overall_excited_suppression(spectrum, r.profile);
    const double bound = rodeo::partial_info_bound(r.envelope, {f, x0});
    ASSERT_LE(exact, bound * (1 + 1e-12)) << trial;
    ASSERT_LE(bound, r.envelope(1.0) * (1 + 1e-12));
  }
}

std::vector<rodeo::TableEntry> table_two() {
  const auto state = rodeo::wam_optimize(8);
  std::vector<rodeo::TableEntry> table;
  for (const auto& row : state.history) {
    table.push_back({"wam-" + std::to_string(row.times.size()), rodeo::bessel_profile(row.times), row.total_time});
  }
  return table;
}

TEST(TableLookup, SpectrumAtZerosPicksFirstRow) {
  const auto table = table_two();
  // first row zeros sit at m / t1
  const double t1 = table[0].total_time;
  const rodeo::DiscreteSpectrum spectrum(0.5, {{2 / t1, 0.25}, {5 / t1, 0.25}});
  const auto sel = rodeo::exact_SE_from_table(spectrum, table, 1e-30);
  ASSERT_TRUE(sel.found);
  EXPECT_EQ(sel.index, 0u);
  EXPECT_LE(sel.suppression, 1e-30);
}

TEST(TableLookup, ThresholdTooSmallReportsBest) {
  const auto table = table_two();
  const rodeo::DiscreteSpectrum spectrum(0.5, {{1.0, 0.5}});
  const auto sel = rodeo::exact_SE_from_table(spectrum, table, 1e-40);
  EXPECT_FALSE(sel.found);
  double best = INFINITY;
  for (const auto& e : table) best = std::min(best, e.profile(1.0));
  EXPECT_EQ(sel.best_suppression, best);
}

TEST(TableLookup, WeightAtThreeNeedsAtMostRowThree) {
  const auto table = table_two();
  const rodeo::DiscreteSpectrum spectrum(0.2, {{3.0, 0.8}});
  const auto sel = rodeo::exact_SE_from_table(spectrum, table, 1e-6);
  ASSERT_TRUE(sel.found);
  EXPECT_LE(sel.index, 2u);
  EXPECT_LE(sel.suppression, 1e-6);
  EXPECT_EQ(sel.suppression, table[sel.index].profile(3.0));
}

TEST(TableLookup, ScansByTotalTime) {
  auto table = table_two();
  std::reverse(table.begin(), table.end());
  const rodeo::DiscreteSpectrum spectrum(0.2, {{3.0, 0.8}});
  const auto sel = rodeo::exact_SE_from_table(spectrum, table, 1e-6);
  ASSERT_TRUE(sel.found);
  EXPECT_GE(sel.index, 5u);
  EXPECT_THROW(rodeo::exact_SE_from_table(spectrum, {}, 1e-6), rodeo::UsageError);
}

}  // namespace
