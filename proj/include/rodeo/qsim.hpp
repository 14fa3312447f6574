#pragma once

// Exact statevector model of rodeo iterations: an ancilla qubit prepared up,
// a Hadamard, evolution of the physical system controlled on the ancilla, a
// second Hadamard and a z-basis measurement of the ancilla ("up" = success).
// The Hamiltonian is diagonal in the working basis, so controlled evolution
// for time tau multiplies component c by exp(-i 2 pi x_c tau) on the up branch.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "rodeo/core.hpp"
#include "rodeo/random.hpp"

namespace rodeo {

inline constexpr Eigen::Index kMaxDensityDim = 64;
inline constexpr Eigen::Index kMaxStateDim = Eigen::Index{1} << 14;

/// Amplitudes over an energy eigenbasis. Unit norm within 1e-12, energies
/// sorted ascending with energies[0] = 0 (the ground state).
class PhysicalState {
 public:
  PhysicalState(Eigen::VectorXcd amplitudes, Eigen::VectorXd energies);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  const Eigen::VectorXd& energies() const { return energies_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  double ground_probability() const { return std::norm(amplitudes_[0]); }

  /// The matching spectrum; excited components must have x >= 1.
  DiscreteSpectrum spectrum() const;

 private:
  Eigen::VectorXcd amplitudes_;
  Eigen::VectorXd energies_;
};

/// Random state: energies[0] = 0, the rest uniform on [x_lo, x_hi] and
/// sorted; amplitudes complex Gaussian, normalized.
PhysicalState random_physical_state(Eigen::Index dim, StreamId stream, double x_lo = 1.0,
                                    double x_hi = 10.0);

/// Ancilla (x) physical amplitudes, index = ancilla * dim + i with ancilla
/// 0 = up, 1 = down.
class CompositeState {
 public:
  /// |up> (x) state.
  explicit CompositeState(const PhysicalState& state);
  CompositeState(Eigen::VectorXcd amplitudes, Eigen::Index physical_dim);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::Index physical_dim() const { return dim_; }
  /// Physical block of one ancilla value (0 = up, 1 = down).
  Eigen::VectorXcd branch(int ancilla) const { return amplitudes_.segment(ancilla * dim_, dim_); }

  /// Hadamard on the ancilla.
  void apply_hadamard();
  /// exp(-i 2 pi x tau) on the up branch only.
  void apply_controlled_evolution(const Eigen::VectorXd& energies, double tau);

 private:
  Eigen::VectorXcd amplitudes_;
  Eigen::Index dim_;
};

/// exp(-i p_up^x (x) H tau) on the composite space, p_up^x = (1 + sigma_x)/2,
/// as a dense matrix. Only for dim <= kMaxDensityDim.
Eigen::MatrixXcd iteration_unitary(const Eigen::VectorXd& energies, double tau);

/// Composite state after Hadamard / controlled evolution / Hadamard.
CompositeState run_iteration_circuit(const PhysicalState& state, double tau);

struct IterationOutcome {
  double success_probability = 0;
  /// Absent when the success probability is below 1e-14.
  std::optional<PhysicalState> post_success;
  /// Absent when the failure probability is below 1e-14.
  std::optional<PhysicalState> post_failure;
};

IterationOutcome apply_iteration(const PhysicalState& state, double tau);

struct ReducedDensityCheck {
  /// Frobenius norm of Tr_ancilla(rho_total) - (P_s rho_s + P_u rho_u), with the
  /// two branches taken from their closed forms.
  double mixture_residual = 0;
  /// |rho_phys(0, 0) - |alpha_g|^2|.
  double ground_population_error = 0;
  Eigen::MatrixXcd reduced;
};

ReducedDensityCheck verify_reduced_density(const PhysicalState& state, double tau);

struct TrajectoryResult {
  bool success = false;
  PhysicalState final_state;
  std::vector<bool> record;  ///< ancilla outcomes, true = up
};

/// Runs the schedule, sampling each ancilla measurement from `stream`; stops at
/// the first failure.
TrajectoryResult run_trajectory(const PhysicalState& state, const Schedule& schedule,
                                StreamId stream);

/// Ratio of (|alpha_c| / |alpha_g|)^2 after and before running the whole
/// schedule on the all-success branch.
double suppression_via_simulation(const PhysicalState& state, const Schedule& schedule,
                                  Eigen::Index component);

}  // namespace rodeo
