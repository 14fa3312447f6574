#include "rodeo/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "rodeo/errors.hpp"
#include "rodeo/special.hpp"

namespace rodeo {

namespace {

using cd = std::complex<double>;

constexpr double kBranchCutoff = 1e-14;

// exp(-i 2 pi x tau), reduced exactly through cos_pi / sin_pi
cd evolution_phase(double x, double tau) {
  const double z = 2 * x * tau;
  return {cos_pi(z), -sin_pi(z)};
}

Eigen::VectorXcd phases(const Eigen::VectorXd& energies, double tau) {
  Eigen::VectorXcd out(energies.size());
  for (Eigen::Index i = 0; i < energies.size(); ++i) out[i] = evolution_phase(energies[i], tau);
  return out;
}

void check_tau(double tau) {
  if (!std::isfinite(tau) || !(tau > 0)) throw DomainError("iteration time must be positive");
}

}  // namespace

PhysicalState::PhysicalState(Eigen::VectorXcd amplitudes, Eigen::VectorXd energies)
    : amplitudes_(std::move(amplitudes)), energies_(std::move(energies)) {
  if (amplitudes_.size() == 0 || amplitudes_.size() != energies_.size()) {
    throw UsageError("state needs matching, nonempty amplitude and energy lists");
  }
  if (amplitudes_.size() > kMaxStateDim) throw UsageError("state dimension above 2^14");
  if (energies_[0] != 0) throw UsageError("energies[0] must be the ground state at 0");
  for (Eigen::Index i = 1; i < energies_.size(); ++i) {
    if (!std::isfinite(energies_[i]) || energies_[i] < energies_[i - 1]) {
      throw UsageError("energies must be finite and sorted ascending");
    }
  }
  if (!amplitudes_.allFinite() || std::abs(amplitudes_.squaredNorm() - 1) > 1e-12) {
    throw UsageError("state amplitudes must have unit norm");
  }
}

DiscreteSpectrum PhysicalState::spectrum() const {
  std::vector<ExcitedComponent> excited;
  for (Eigen::Index i = 1; i < dim(); ++i) {
    excited.push_back({energies_[i], std::norm(amplitudes_[i])});
  }
  const double ground = std::max(0.0, 1 - std::accumulate(excited.begin(), excited.end(), 0.0,
                                                          [](double acc, const auto& c) {
                                                            return acc + c.weight;
                                                          }));
  return DiscreteSpectrum(ground, std::move(excited));
}

PhysicalState random_physical_state(Eigen::Index dim, StreamId stream, double x_lo,
                                    double x_hi) {
  if (dim < 1) throw UsageError("dimension must be >= 1");
  RngStream rng(stream);
  Eigen::VectorXd energies(dim);
  energies[0] = 0;
  for (Eigen::Index i = 1; i < dim; ++i) energies[i] = x_lo + (x_hi - x_lo) * rng.uniform();
  std::sort(energies.begin() + 1, energies.end());
  Eigen::VectorXcd amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i) amps[i] = cd(rng.normal(), rng.normal());
  amps.normalize();
  return PhysicalState(std::move(amps), std::move(energies));
}

CompositeState::CompositeState(const PhysicalState& state)
    : amplitudes_(Eigen::VectorXcd::Zero(2 * state.dim())), dim_(state.dim()) {
  amplitudes_.head(dim_) = state.amplitudes();
}

CompositeState::CompositeState(Eigen::VectorXcd amplitudes, Eigen::Index physical_dim)
    : amplitudes_(std::move(amplitudes)), dim_(physical_dim) {
  if (amplitudes_.size() != 2 * dim_) throw UsageError("composite length must be 2 * dim");
}

void CompositeState::apply_hadamard() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Eigen::Map<Eigen::MatrixXcd> blocks(amplitudes_.data(), dim_, 2);
  blocks = (blocks * h.transpose()).eval();
}

void CompositeState::apply_controlled_evolution(const Eigen::VectorXd& energies, double tau) {
  amplitudes_.head(dim_).array() *= phases(energies, tau).array();
}

Eigen::MatrixXcd iteration_unitary(const Eigen::VectorXd& energies, double tau) {
  check_tau(tau);
  const Eigen::Index d = energies.size();
  if (d > kMaxDensityDim) throw UsageError("dense unitary limited to dim <= 64");
  Eigen::Matrix2cd p_plus;
  p_plus << 0.5, 0.5, 0.5, 0.5;
  const Eigen::Matrix2cd p_minus = Eigen::Matrix2cd::Identity() - p_plus;
  const Eigen::MatrixXcd evolved = phases(energies, tau).asDiagonal();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd u(2 * d, 2 * d);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      u.block(a * d, b * d, d, d) = p_plus(a, b) * evolved + p_minus(a, b) * identity;
    }
  }
  return u;
}

CompositeState run_iteration_circuit(const PhysicalState& state, double tau) {
  check_tau(tau);
  CompositeState composite(state);
  composite.apply_hadamard();
  composite.apply_controlled_evolution(state.energies(), tau);
  composite.apply_hadamard();
  return composite;
}

IterationOutcome apply_iteration(const PhysicalState& state, double tau) {
  const CompositeState composite = run_iteration_circuit(state, tau);
  Eigen::VectorXcd up = composite.branch(0);
  Eigen::VectorXcd down = composite.branch(1);
  const double p_up = up.squaredNorm();
  const double p_down = down.squaredNorm();

  IterationOutcome out{p_up, std::nullopt, std::nullopt};
  if (p_up >= kBranchCutoff) {
    up /= std::sqrt(p_up);
    out.post_success.emplace(std::move(up), state.energies());
  }
  if (p_down >= kBranchCutoff) {
    down /= std::sqrt(p_down);
    out.post_failure.emplace(std::move(down), state.energies());
  }
  return out;
}

ReducedDensityCheck verify_reduced_density(const PhysicalState& state, double tau) {
  const Eigen::Index d = state.dim();
  if (d > kMaxDensityDim) throw UsageError("density-matrix check limited to dim <= 64");
  const CompositeState composite = run_iteration_circuit(state, tau);
  const Eigen::VectorXcd& v = composite.amplitudes();
  const Eigen::MatrixXcd rho = v * v.adjoint();

  ReducedDensityCheck out;
  out.reduced = rho.topLeftCorner(d, d) + rho.bottomRightCorner(d, d);

  // Unnormalized branch amplitudes: (1 + e^{-i phi}) / 2 and (e^{-i phi} - 1) / 2.
  const Eigen::VectorXcd ph = phases(state.energies(), tau);
  const Eigen::VectorXcd success =
      (0.5 * (ph.array() + 1.0) * state.amplitudes().array()).matrix();
  const Eigen::VectorXcd failure =
      (0.5 * (ph.array() - 1.0) * state.amplitudes().array()).matrix();
  const Eigen::MatrixXcd mixture = success * success.adjoint() + failure * failure.adjoint();

  out.mixture_residual = (out.reduced - mixture).norm();
  out.ground_population_error = std::abs(out.reduced(0, 0).real() - state.ground_probability());
  return out;
}

TrajectoryResult run_trajectory(const PhysicalState& state, const Schedule& schedule,
                                StreamId stream) {
  RngStream rng(stream);
  TrajectoryResult out{true, state, {}};
  for (Eigen::Index j = 0; j < schedule.size(); ++j) {
    IterationOutcome step = apply_iteration(out.final_state, schedule[j]);
    const bool up = rng.uniform() < step.success_probability && step.post_success;
    out.record.push_back(up);
    if (!up) {
      out.success = false;
      if (step.post_failure) out.final_state = std::move(*step.post_failure);
      return out;
    }
    out.final_state = std::move(*step.post_success);
  }
  return out;
}

double suppression_via_simulation(const PhysicalState& state, const Schedule& schedule,
                                  Eigen::Index component) {
  if (component < 1 || component >= state.dim()) {
    throw UsageError("component must index an excited state");
  }
  const double g0 = std::norm(state.amplitudes()[0]);
  const double c0 = std::norm(state.amplitudes()[component]);
  if (!(g0 > 0)) throw DomainError("ground amplitude must be nonzero");
  if (!(c0 > 0)) throw DomainError("component amplitude must be nonzero");

  PhysicalState current = state;
  for (Eigen::Index j = 0; j < schedule.size(); ++j) {
    const CompositeState composite = run_iteration_circuit(current, schedule[j]);
    Eigen::VectorXcd up = composite.branch(0);
    const double norm2 = up.squaredNorm();
    if (!(norm2 > 0)) throw DegenerateBranchError("all-success branch has zero norm");
    up /= std::sqrt(norm2);
    current = PhysicalState(std::move(up), state.energies());
  }
  const double g1 = std::norm(current.amplitudes()[0]);
  const double c1 = std::norm(current.amplitudes()[component]);
  return (c1 / g1) / (c0 / g0);
}

}  // namespace rodeo
