#include "rodeo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rodeo/errors.hpp"
#include "rodeo/search.hpp"
#include "rodeo/wam.hpp"

namespace rodeo {

MonotoneEnvelope::MonotoneEnvelope(std::vector<Breakpoint> breakpoints,
                                   SuppressionProfile::TailBound tail)
    : breakpoints_(std::move(breakpoints)), tail_(std::move(tail)) {
  if (breakpoints_.empty()) throw UsageError("envelope needs at least one breakpoint");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i].x > breakpoints_[i - 1].x)) {
      throw UsageError("envelope breakpoints must be strictly increasing in x");
    }
    if (breakpoints_[i].s_ub > breakpoints_[i - 1].s_ub) {
      throw UsageError("envelope values must be non-increasing");
    }
  }
}

bool MonotoneEnvelope::covers(double x) const {
  return x >= x_min() && (x <= x_max() || static_cast<bool>(tail_));
}

double MonotoneEnvelope::operator()(double x) const {
  if (!covers(x)) throw DomainError("energy ratio outside the envelope domain");
  if (x > x_max()) return std::min(breakpoints_.back().s_ub, tail_(x));
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x,
                             [](double v, const Breakpoint& b) { return v < b.x; });
  return std::prev(it)->s_ub;
}

MonotoneEnvelope monotone_envelope(const SuppressionProfile& profile, double x_min,
                                   double x_max) {
  if (!(x_min >= 1)) throw DomainError("envelope domain must start at x >= 1");
  if (!(x_max > x_min)) throw UsageError("envelope needs x_max > x_min");

  const auto points =
      static_cast<Eigen::Index>(std::ceil((x_max - x_min) * kPeakGridPerUnit)) + 1;
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(points, x_min, x_max);
  const Eigen::ArrayXd values = profile(grid);

  std::vector<MonotoneEnvelope::Breakpoint> samples;
  samples.reserve(static_cast<std::size_t>(points) + 1024);
  for (Eigen::Index i = 0; i < points; ++i) {
    samples.push_back({grid[i], values[i]});
    const bool interior = i > 0 && i < points - 1;
    if (interior && values[i] > values[i - 1] && values[i] >= values[i + 1] && values[i] > 0) {
      const Extremum peak = golden_section_maximize([&](double x) { return profile(x); },
                                                    grid[i - 1], grid[i + 1], 1e-12);
      if (peak.value > values[i] && peak.x != grid[i]) samples.push_back({peak.x, peak.value});
    }
  }
  auto sort_unique = [](std::vector<MonotoneEnvelope::Breakpoint>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    v.erase(std::unique(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.x == b.x; }),
            v.end());
  };
  sort_unique(samples);

  SuppressionProfile::TailBound tail;
  if (profile.has_tail_bound()) {
    tail = [profile](double x) { return profile.tail_bound(x); };
  }
  const double tail_floor = tail ? profile.tail_bound(samples.back().x) : 0.0;
  auto running_max = [&](std::vector<MonotoneEnvelope::Breakpoint>& v) {
    std::vector<double> ub(v.size());
    ub.back() = std::max(v.back().s_ub, tail_floor);
    for (std::size_t i = v.size() - 1; i-- > 0;) ub[i] = std::max(v[i].s_ub, ub[i + 1]);
    return ub;
  };

  // steep descents get extra samples so neighbouring steps differ by at most
  // kEnvelopeStepRatio
  std::vector<double> ub = running_max(samples);
  std::vector<MonotoneEnvelope::Breakpoint> extra;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (!(ub[i + 1] > 0) || ub[i] <= ub[i + 1] * (1 + kEnvelopeStepRatio)) continue;
    const double k = std::ceil(std::log(ub[i] / ub[i + 1]) / std::log1p(kEnvelopeStepRatio));
    const auto count = static_cast<int>(std::min(k, 4096.0));
    const double h = (samples[i + 1].x - samples[i].x) / (count + 1);
    for (int j = 1; j <= count; ++j) {
      const double x = samples[i].x + j * h;
      extra.push_back({x, profile(x)});
    }
  }
  if (!extra.empty()) {
    samples.insert(samples.end(), extra.begin(), extra.end());
    sort_unique(samples);
    ub = running_max(samples);
  }

  // plateaus keep both ends; the right end is where the value is attained
  std::vector<MonotoneEnvelope::Breakpoint> steps;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const bool first_of_run = i == 0 || ub[i] < ub[i - 1];
    const bool last_of_run = i + 1 == samples.size() || ub[i + 1] < ub[i];
    if (first_of_run || last_of_run) steps.push_back({samples[i].x, ub[i]});
  }
  return MonotoneEnvelope(std::move(steps), std::move(tail));
}

double partial_info_bound(const MonotoneEnvelope& envelope, const PartialSpectralInfo& info) {
  if (!(info.f >= 0 && info.f <= 1)) throw DomainError("f must lie in [0, 1]");
  if (!(info.x0 >= 1)) throw DomainError("x0 must be >= 1");
  if (!envelope.covers(1.0) || !envelope.covers(info.x0)) {
    throw DomainError("envelope does not cover [1, x0]");
  }
  const double q = envelope(1.0);
  return q - info.f * (q - envelope(info.x0));
}

TableSelection exact_SE_from_table(const DiscreteSpectrum& spectrum,
                                   const std::vector<TableEntry>& table, double threshold) {
  if (table.empty()) throw UsageError("schedule table is empty");
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table[a].total_time < table[b].total_time;
  });

  TableSelection out;
  bool have_best = false;
  for (std::size_t i : order) {
    const double se = overall_excited_suppression(spectrum, table[i].profile);
    if (!have_best || se < out.best_suppression) {
      out.best_index = i;
      out.best_suppression = se;
      have_best = true;
    }
    if (se <= threshold) {
      out.found = true;
      out.index = i;
      out.suppression = se;
      return out;
    }
  }
  return out;
}

}  // namespace rodeo
