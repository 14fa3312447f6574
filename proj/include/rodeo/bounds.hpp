#pragma once

// Least non-increasing majorant s_UB(x) = sup_{y >= x} s(y) of a suppression
// profile, and the bounds on S_E it gives when part of the spectral weight is
// known to sit at high energy.

#include <cstddef>
#include <string>
#include <vector>

#include "rodeo/core.hpp"

namespace rodeo {

/// Right-continuous non-increasing step function through sorted breakpoints:
/// value ub_i on [x_i, x_{i+1}). Past the last breakpoint it follows the
/// profile's analytic tail majorant when one was available.
class MonotoneEnvelope {
 public:
  struct Breakpoint {
    double x;
    double s_ub;
  };

  MonotoneEnvelope(std::vector<Breakpoint> breakpoints,
                   SuppressionProfile::TailBound tail = {});

  double operator()(double x) const;

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  double x_min() const { return breakpoints_.front().x; }
  double x_max() const { return breakpoints_.back().x; }
  bool covers(double x) const;

 private:
  std::vector<Breakpoint> breakpoints_;
  SuppressionProfile::TailBound tail_;
};

/// Neighbouring envelope steps on a descent differ by at most this ratio - 1.
inline constexpr double kEnvelopeStepRatio = 2.5e-4;

/// Right-to-left running maximum of the profile over a grid of
/// kPeakGridPerUnit points per unit x on [x_min, x_max], with every grid
/// local maximum refined and inserted as its own breakpoint and steep descents
/// subdivided. Plateaus keep both ends; the right end attains the value.
MonotoneEnvelope monotone_envelope(const SuppressionProfile& profile, double x_min,
                                   double x_max);

/// Fraction f of the excited spectral weight lies at x >= x0.
struct PartialSpectralInfo {
  double f = 0;
  double x0 = 1;
};

/// (1 - f) s_UB(1) + f s_UB(x0); never above s_UB(1) = Q.
double partial_info_bound(const MonotoneEnvelope& envelope, const PartialSpectralInfo& info);

struct TableEntry {
  std::string id;
  SuppressionProfile profile;
  double total_time = 0;
};

struct TableSelection {
  bool found = false;
  std::size_t index = 0;  ///< chosen entry (valid when found)
  double suppression = 0;  ///< exact S_E of the chosen entry
  std::size_t best_index = 0;
  double best_suppression = 0;
};

/// Shortest-total-time table entry whose exact S_E is at or below `threshold`.
/// When none qualifies, `found` is false and the best entry is reported.
TableSelection exact_SE_from_table(const DiscreteSpectrum& spectrum,
                                   const std::vector<TableEntry>& table, double threshold);

}  // namespace rodeo
