#pragma once

#include "mqec/encoding.hpp"
#include "mqec/raman.hpp"

namespace mqec {

enum class StageMode { Ideal, Pulsed };

struct SyndromeOutcome {
  bool x_jump = false;
  bool y_jump = false;
  StateVector post_state;
  // (stage label, photon detected) for the two readouts
  std::vector<std::pair<std::string, bool>> photon_records;
  // parity of the +/- basis-label swaps still pending after the sequence;
  // each entangler swaps the labels once, so a completed double
  // interrogation always nets to the identity frame
  bool frame_flipped = false;
};

struct CavityReadoutConfig {
  double kappa = 0.0;      // cavity linewidth, rad/s
  double g_C = 0.0;        // ion-cavity coupling, rad/s
  double g_L_peak = 0.0;   // readout laser Raman coupling peak, rad/s
  double delta = 0.0;      // Raman detuning |Delta|, rad/s
  double detector_efficiency = 1.0;

  double g_cavity() const { return g_C * g_L_peak / delta; }
  bool bad_cavity_ok() const { return kappa > 3.0 * g_cavity(); }
};

CavityReadoutConfig readout_from_preset(const PhysicalPreset& preset);

/// Analytic entangler U(A) = cos(chi A)(|a><a| + |b><b|)
///                         + sin(chi A)(|a><b| - |b><a|),
/// chi = |g| n_axis, as a unitary on the full space (identity on |c> and on
/// the cavity if present).  g_area = |g| * A is the dimensionless product;
/// pi/2 realizes the syndrome mapping.
LinearOperator entangle(const SpaceSpec& space, Axis axis, double g_area);
inline LinearOperator entangle_x(const SpaceSpec& s, double g_area) {
  return entangle(s, Axis::X, g_area);
}
inline LinearOperator entangle_y(const SpaceSpec& s, double g_area) {
  return entangle(s, Axis::Y, g_area);
}

/// Pulse-level entangler: integrates the number-sensitive Raman Hamiltonian
/// over the pulse and returns the resulting state map.  With the default
/// sin^2 shape and T_L = 4 pi / 3|g| this reproduces entangle(axis, pi/2).
std::function<StateVector(const StateVector&)> entangle_via_pulse(
    const SpaceSpec& space, double eta, double g1_peak, Axis axis,
    const PulseShape& shape);

/// Single-photon emission probability P = 1 - exp(-2 integral |g(t)|^2 / kappa
/// dt) with g(t) = (g_C g_L(t)) / Delta = g_cavity f(t).
double photon_gun_probability(const CavityReadoutConfig& cfg,
                              const PulseShape& shape);

struct CavityReadoutResult {
  double detection_probability;  // includes detector efficiency
  double emission_probability;   // physical single-photon probability
  bool bad_cavity_ok;
  StateVector post_electronic;   // |a> for either outcome
};

/// Integrates the reduced two-level (x) cavity {0,1} model with non-Hermitian
/// cavity decay; emission probability = 1 - ||psi||^2, to be compared with
/// photon_gun_probability.
CavityReadoutResult cavity_readout_simulate(const CavityReadoutConfig& cfg,
                                            const PulseShape& shape,
                                            const StateVector& psi_el);

struct DetectConfig {
  StageMode mode = StageMode::Ideal;
  double detector_efficiency = 1.0;
  double leakage_tol = 1e-9;
  // pulsed-mode entangler parameters
  double eta = 0.2;
  double g1_peak = 0.0;  // first-pair coupling |g^(1)|, rad/s
};

/// Full double interrogation: entangle on x, measure and reset the
/// electronic state, entangle on y, measure and reset.  Outcomes are sampled
/// by the Born rule (thinned by detector efficiency); the motional factor of
/// a no-jump state is returned unchanged.
SyndromeOutcome detect(const StateVector& state, const CodeSubspaces& code,
                       const DetectConfig& cfg, std::mt19937_64& rng);

}  // namespace mqec
