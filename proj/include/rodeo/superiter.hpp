#pragma once

// Super iterations: a ladder of iterations with times T/2, T/4, ..., T/2^N.
// For infinite depth the combined suppression is j0^2(pi zeta_sup), with
// zeta_sup = x * T the phase count of the whole ladder.

#include <vector>

#include "rodeo/core.hpp"

namespace rodeo {

inline constexpr int kDefaultSuperDepth = 32;

struct SuperIteration {
  double base_time = 1;  ///< nominal ladder time T (twice the leading rung)
  int depth = kDefaultSuperDepth;

  /// Sum of the rung times: base_time (1 - 2^-depth).
  double expanded_time() const;
};

/// Ordered super iterations. Nonempty; each base_time > 0 and depth >= 1.
class SuperSchedule {
 public:
  explicit SuperSchedule(std::vector<SuperIteration> supers);
  /// Super iterations with the given base times, all at the same depth.
  static SuperSchedule from_bases(const std::vector<double>& base_times,
                                  int depth = kDefaultSuperDepth);

  const std::vector<SuperIteration>& supers() const { return supers_; }
  std::size_t size() const { return supers_.size(); }
  /// Exact time of the expanded schedule.
  double total() const { return total_; }
  /// Sum of base times (the infinite-depth total).
  double nominal_total() const;
  std::vector<double> base_times() const;

 private:
  std::vector<SuperIteration> supers_;
  double total_ = 0;
};

/// j0^2(pi zeta): suppression of an infinitely deep super iteration. Zeros
/// exactly at the positive integers.
double super_suppression(double zeta_sup);

/// prod_{k=1}^{depth} cos^2(pi zeta / 2^k), evaluated as the ratio
/// j0^2(pi zeta) / j0^2(pi zeta / 2^depth).
double truncated_super_suppression(double zeta_sup, int depth);

/// Energy up to which a single truncated super iteration with leading time
/// `leading_time` keeps the tabulated bound: (2^depth - 1.430) / leading_time.
double max_valid_energy(int depth, double leading_time = 0.8129);

/// Flat schedule listing every rung.
Schedule expand(const SuperSchedule& schedule);

/// s(x) = prod_k truncated_super_suppression(x * base_k, depth_k).
double super_schedule_suppression(const SuperSchedule& schedule, double x);

/// Infinite-depth profile prod_k j0^2(pi x b_k) for the given base times, with
/// its zero set on [0, zero_window] and the tail majorant prod_k 1/(pi x b_k)^2.
SuppressionProfile bessel_profile(const std::vector<double>& base_times,
                                  double zero_window = 16.0);

/// Profile of the truncated super schedule (exact for the expanded rungs).
SuppressionProfile super_profile(const SuperSchedule& schedule, double zero_window = 16.0);

}  // namespace rodeo
