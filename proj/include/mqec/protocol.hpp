#pragma once

#include "mqec/restore.hpp"

namespace mqec {

struct ProtocolConfig {
  double gamma = 1.0;      // decoherence rate, s^-1
  double n_bar = 0.0;      // reservoir occupation (evolution-only when > 0)
  double tau = 0.05;       // interrogation period, s
  int cycles = 100;
  StageMode stage_mode = StageMode::Ideal;
  std::uint64_t seed = 0;
  int mode_cutoff = 8;
  double detector_efficiency = 1.0;
  double leakage_tol = 1e-6;  // weight outside the three subspaces
  RestorePlan restore_plan{};

  SpaceSpec space() const;
  void validate() const;
};

struct CycleReport {
  int cycle = 0;
  int jumps_x = 0;
  int jumps_y = 0;
  bool x_detected = false;
  bool y_detected = false;
  bool failed = false;  // multi-jump / leakage: not correctable
  double fidelity = 0.0;
  double leakage = 0.0;
};

struct ProtocolResult {
  std::vector<CycleReport> cycles;
  double final_fidelity = 0.0;
  int failures = 0;
};

/// One stabilization cycle: free decay over tau (quantum trajectory), then
/// syndrome detection, then restoration.  Cycles with more than one jump are
/// marked failed and left uncorrected.
CycleReport run_cycle(StateVector& psi, const StateVector& reference,
                      const CodeSubspaces& code, const ProtocolConfig& cfg,
                      std::uint64_t traj_index);

ProtocolResult run_protocol(const LogicalQubit& qubit,
                            const ProtocolConfig& cfg);

/// Baseline: master-equation evolution of the encoded state with no
/// interrogation; returns (t, fidelity to the initial state) samples.
std::vector<std::pair<double, double>> run_unprotected(
    const LogicalQubit& qubit, const ProtocolConfig& cfg,
    const std::vector<double>& times);

struct FigureOfMerit {
  // log-log slope of the per-cycle failure probability vs gamma*tau
  double slope = 0.0;
  std::vector<double> gamma_taus;
  std::vector<double> failure_probabilities;     // measured, per cycle
  std::vector<double> dyson_deficits;            // analytic 1 - p0 - px - py
  double protected_rate = 0.0;    // failures per unit time at the last point
  double unprotected_rate = 0.0;  // (1 - F(tau)) / tau, master equation
  double suppression_ratio = 0.0;
};

/// Empirical scaling of the uncorrectable (multi-jump) failure probability:
/// single fresh cycles per trajectory at each gamma*tau value.
FigureOfMerit figure_of_merit(const LogicalQubit& qubit,
                              const ProtocolConfig& cfg,
                              const std::vector<double>& gamma_taus,
                              int trajectories_per_point);

}  // namespace mqec
