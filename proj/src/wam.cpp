#include "rodeo/wam.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rodeo/errors.hpp"
#include "rodeo/search.hpp"

namespace rodeo {

std::vector<double> WamState::times() const {
  std::vector<double> out(unit_bases);
  for (double& t : out) t *= scale;
  return out;
}

double WamState::total_time() const {
  return scale * std::accumulate(unit_bases.begin(), unit_bases.end(), 0.0);
}

SuperSchedule WamState::super_schedule() const {
  return SuperSchedule::from_bases(times(), depth);
}

SuppressionProfile WamState::unit_profile() const { return bessel_profile(unit_bases); }

SuppressionProfile WamState::profile() const { return bessel_profile(times()); }

Peak find_worst_peak(const SuppressionProfile& profile, double x_min, double x_max) {
  if (!(x_max > x_min)) throw UsageError("find_worst_peak: need x_min < x_max");
  const auto points =
      static_cast<Eigen::Index>(std::ceil((x_max - x_min) * kPeakGridPerUnit)) + 1;
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(points, x_min, x_max);
  const Eigen::ArrayXd values = profile(grid);
  const double step = grid[1] - grid[0];

  std::vector<Eigen::Index> maxima;
  for (Eigen::Index i = 0; i < points; ++i) {
    const bool left_ok = i == 0 || values[i] >= values[i - 1];
    const bool right_ok = i == points - 1 || values[i] >= values[i + 1];
    if (left_ok && right_ok) maxima.push_back(i);
  }
  if (maxima.empty()) maxima.push_back(0);
  // maxima is in ascending x, so a stable sort keeps smaller x first on ties
  std::stable_sort(maxima.begin(), maxima.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });
  if (maxima.size() > kPeakCandidates) maxima.resize(kPeakCandidates);

  Peak best{grid[maxima.front()], values[maxima.front()]};
  bool first = true;
  for (Eigen::Index i : maxima) {
    const double lo = std::max(x_min, grid[i] - step);
    const double hi = std::min(x_max, grid[i] + step);
    Extremum refined = golden_section_maximize([&](double x) { return profile(x); }, lo, hi, 1e-10);
    if (!(refined.value > values[i])) refined = {grid[i], values[i]};
    const double tie = 1e-12 * std::max(refined.value, best.value);
    if (first || refined.value > best.value + tie ||
        (std::abs(refined.value - best.value) <= tie && refined.x < best.location)) {
      best = {refined.x, refined.value};
      first = false;
    }
  }
  return best;
}

Peak find_worst_peak_above_gap(const std::vector<double>& base_times) {
  const SuppressionProfile profile = bessel_profile(base_times);
  double x_max = 4 / *std::min_element(base_times.begin(), base_times.end());
  for (int attempt = 0; attempt < 8; ++attempt, x_max *= 2) {
    const Peak peak = find_worst_peak(profile, 1.0, x_max);
    if (profile.tail_bound(x_max) < peak.value || peak.value == 0) return peak;
  }
  throw NumericError("worst-peak search: tail majorant never dropped below the peak");
}

WamState initial_wam_state(int depth) {
  if (depth < 1) throw UsageError("depth must be >= 1");
  WamState state;
  state.depth = depth;
  state.worst = find_worst_peak_above_gap(state.unit_bases);
  return state;
}

WamState whack(WamState state) {
  const double x = state.worst.location;
  if (!(x >= 1)) throw NumericError("whack: worst peak lies below x = 1");
  state.unit_bases.push_back(1 / x);
  state.scale = 1;
  state.worst = find_worst_peak_above_gap(state.unit_bases);
  return state;
}

std::pair<double, WamState> rescale_to_equalize(WamState state) {
  const SuppressionProfile profile = state.unit_profile();
  if (profile(1.0) > 1e-15) throw NumericError("rescale: unit-frame profile must vanish at x = 1");
  const double q = state.worst.value;
  double lambda = 1;
  if (q > 0) {
    constexpr double lowest = 0.7;
    const double h = 1 / kPeakGridPerUnit;
    double y = 1;
    while (profile(y - h) <= q) {
      y -= h;
      if (y - h < lowest) throw NumericError("rescale: no fixed point in [0.7, 1]");
    }
    lambda = bisect_root([&](double t) { return profile(t) - q; }, y - h, y, 1e-13);
  }
  state.scale = lambda;
  state.history.push_back({state.times(), q, state.total_time()});
  return {lambda, std::move(state)};
}

WamState wam_optimize(int cycles, int depth) {
  if (cycles < 1) throw UsageError("cycles must be >= 1");
  WamState state = rescale_to_equalize(initial_wam_state(depth)).second;
  for (int c = 2; c <= cycles; ++c) {
    state = rescale_to_equalize(whack(std::move(state))).second;
  }
  return state;
}

double worst_case_bound(const WamState& state) { return state.worst.value; }

}  // namespace rodeo
