#pragma once

#include <functional>
#include <random>
#include <vector>

#include <Eigen/Sparse>

#include "mqec/hilbert.hpp"

namespace mqec {

/// Scalar pulse envelope in angular-frequency units; may be complex to carry
/// a laser phase.
using Envelope = std::function<cplx(double)>;

/// One term of a pulsed Hamiltonian: envelope(t) * op, plus the Hermitian
/// conjugate when add_adjoint is set.  All Hamiltonians are stored as H/hbar
/// (rad/s).
struct HamTerm {
  LinearOperator op;
  Envelope envelope;
  bool add_adjoint = false;
};

struct PulsedHamiltonian {
  SpaceSpec space;
  std::vector<HamTerm> terms;
  std::optional<LinearOperator> constant_part;

  Mat at(double t) const;
  /// y += -i * H(t) * x  (Schroedinger right-hand side, hbar = 1)
  void apply_rhs(double t, const Vec& x, Vec& y) const;
  /// crude spectral-radius estimate used for step-size selection
  double frequency_scale(double t0, double t1) const;

  /// Cache sparse copies of the term matrices; apply_rhs uses them when
  /// present.  Laser-coupling terms are extremely sparse, so this speeds up
  /// long pulse integrations by orders of magnitude.
  void prepare_sparse();

  std::vector<Eigen::SparseMatrix<cplx>> sparse_ops;
  std::vector<Eigen::SparseMatrix<cplx>> sparse_adjoints;
  std::optional<Eigen::SparseMatrix<cplx>> sparse_constant;
};

struct LindbladModel {
  std::optional<PulsedHamiltonian> hamiltonian;
  // jump operator and its rate (s^-1); the rate multiplies L rho L^dagger,
  // i.e. the effective channel is sqrt(rate) * op.
  struct Channel {
    LinearOperator op;
    double rate = 1.0;
  };
  std::vector<Channel> jumps;

  const SpaceSpec& space() const;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::vector<std::pair<double, int>> jump_events;  // (time, channel index)
  StateVector final_state;
  std::vector<double> norm_history;
};

/// Deterministic per-trajectory RNG stream keyed by (master seed, index);
/// independent of execution order.
std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t index);

/// Fixed-step RK4 Schroedinger integration; preserves norm to integrator
/// accuracy for Hermitian H.  dt <= 0 selects a step from the Hamiltonian's
/// frequency scale (nu * dt <= 0.05).
StateVector evolve_schrodinger(const PulsedHamiltonian& h,
                               const StateVector& psi, double t0, double t1,
                               double dt = 0.0);

/// As evolve_schrodinger, but invoking observer(t, amps) after every
/// integration step (and once at t0) for mid-pulse diagnostics.
StateVector evolve_schrodinger_observed(
    const PulsedHamiltonian& h, const StateVector& psi, double t0, double t1,
    double dt, const std::function<void(double, const Vec&)>& observer);

/// No-jump evolution under H_eff = H - (i/2) sum rate * L^dag L.  Returns the
/// unnormalized state; its squared norm is the no-jump probability.
StateVector evolve_effective(const LindbladModel& model, const StateVector& psi,
                             double t0, double t1, double dt = 0.0);

/// Dense density-operator master-equation integration (RK4).
Mat evolve_lindblad(const LindbladModel& model, const Mat& rho, double t0,
                    double t1, double dt = 0.0);

struct TrajectoryOptions {
  double dt = 0.0;            // 0 -> automatic
  double jump_time_tol = 0.0; // 0 -> dt * 1e-3
  int norm_samples = 0;       // number of norm history samples to keep
};

/// Quantum-jump (Monte Carlo wavefunction) unraveling with waiting-time
/// thresholds; jump times resolved by bisection on the squared norm.
TrajectoryRecord run_trajectory(const LindbladModel& model,
                                const StateVector& psi, double t0, double t1,
                                std::uint64_t master_seed,
                                std::uint64_t traj_index = 0,
                                const TrajectoryOptions& opts = {});

struct EnsembleResult {
  std::vector<TrajectoryRecord> records;
  Mat average_density;  // (1/N) sum |psi_i><psi_i|
};

EnsembleResult ensemble(const LindbladModel& model, const StateVector& psi,
                        double t0, double t1, std::uint64_t master_seed,
                        int n_trajectories, const TrajectoryOptions& opts = {});

/// 0.5 * || rho1 - rho2 ||_1 for Hermitian inputs.
double trace_distance(const Mat& rho1, const Mat& rho2);

Mat density_of(const StateVector& psi);

/// Amplitude-damping model at temperature n_bar on every mode of the space:
/// channels sqrt(gamma (n_bar+1)) a and sqrt(gamma n_bar) a^dagger.
LindbladModel thermal_two_mode_model(const SpaceSpec& space, double gamma,
                                     double n_bar);

}  // namespace mqec
