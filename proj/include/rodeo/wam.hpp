#pragma once

// Whac-a-Mole schedule optimizer. Starting from one super iteration of base
// time 1 (zeros at every integer x), each cycle places the first Bessel zero
// of a new super iteration on the current worst peak over x >= 1, then scales
// all times down until the suppression at x = 1 equals that worst value.
//
// The optimizer works in the unit frame, where the first base time is 1 and
// s(1) = 0. The deployed schedule is the unit-frame one scaled by `scale`;
// scaling by lambda maps a unit-frame energy y to x = y / lambda.

#include <utility>
#include <vector>

#include "rodeo/core.hpp"
#include "rodeo/superiter.hpp"

namespace rodeo {

struct Peak {
  double location = 1;
  double value = 0;
};

struct WamSnapshot {
  std::vector<double> times;  ///< scaled base times
  double worst = 0;           ///< max_{x >= 1} s
  double total_time = 0;
};

struct WamState {
  std::vector<double> unit_bases{1.0};
  double scale = 1;
  int depth = kDefaultSuperDepth;
  Peak worst;  ///< unit frame
  std::vector<WamSnapshot> history;

  std::vector<double> times() const;
  double total_time() const;
  SuperSchedule super_schedule() const;
  /// Infinite-depth profile of the unscaled bases.
  SuppressionProfile unit_profile() const;
  /// Infinite-depth profile of the deployed (scaled) bases.
  SuppressionProfile profile() const;
};

inline constexpr double kPeakGridPerUnit = 2e4;
inline constexpr int kPeakCandidates = 5;

/// Global maximum of the profile on [x_min, x_max]: grid scan at
/// kPeakGridPerUnit points per unit x, then golden-section refinement of the
/// best kPeakCandidates grid maxima to 1e-10. Ties go to the smaller x.
Peak find_worst_peak(const SuppressionProfile& profile, double x_min, double x_max);

/// Worst peak over x >= 1 of an infinite-depth Bessel profile. The search runs
/// on [1, X] with X = 4 / min(base), doubled until the analytic tail majorant
/// at X is below the peak found.
Peak find_worst_peak_above_gap(const std::vector<double>& base_times);

/// Single super iteration of base 1 with its worst peak located, unscaled.
WamState initial_wam_state(int depth = kDefaultSuperDepth);

/// Append a super iteration of base 1/x* at the current worst peak x*, reset
/// the scale to 1 and locate the new worst peak.
WamState whack(WamState state);

/// Scale lambda in (0, 1] at which s(1) equals the worst value over x >= 1,
/// found by scanning down from y = 1 in the unit frame and bisecting the first
/// crossing of s(y) = Q in [0.7, 1] to 1e-13. Returns the scaled state with a
/// history snapshot appended.
std::pair<double, WamState> rescale_to_equalize(WamState state);

/// `cycles` rounds of the prescription; cycle 1 is the single base-1 super
/// iteration, rescaled.
WamState wam_optimize(int cycles, int depth = kDefaultSuperDepth);

/// Q = max_{x >= 1} s of the state; an upper bound on S_E for every spectrum
/// whose excited components have x >= 1.
double worst_case_bound(const WamState& state);

}  // namespace rodeo
