#pragma once

#include <string>

#include "mqec/dynamics.hpp"

namespace mqec {

enum class Axis : int { X = 0, Y = 1 };

/// Dimensionless pulse envelope with peak coupling and laser phase.  The
/// envelope is sin^2(pi (t - delay)/T) (or flat / sampled) on
/// [delay, delay + duration] and zero outside.
struct PulseShape {
  enum class Kind { SinSquared, Flat, Samples };
  Kind kind = Kind::SinSquared;
  double duration = 0.0;        // T_L, s
  double peak = 0.0;            // peak coupling magnitude, rad/s
  double phase = 0.0;           // laser phase, rad
  double delay = 0.0;           // start time, s
  std::vector<double> samples;  // Kind::Samples: uniform grid on [0, T]

  double envelope(double t) const;  // dimensionless, in [0, 1]
  cplx value(double t) const;       // peak * e^{i phase} * envelope(t)
};

/// Generalized pulse area: integral of envelope^power over the pulse.
/// Analytic for sin^2 and flat; Simpson quadrature for samples.
double pulse_area(const PulseShape& shape, int power);

struct TrapConfig {
  double nu_x = 0.0;  // rad/s
  double nu_y = 0.0;
};

struct RamanConfig {
  double eta_x = 0.0;
  double eta_y = 0.0;
  double g_peak = 0.0;  // Raman coupling |g| = |g_a g_b / 2 Delta|, rad/s
  double delta = 0.0;   // |Delta|, rad/s (diagnostics only)
  enum class Alignment { X, Y, None } alignment = Alignment::X;
};

/// Pulsed stimulated-Raman Hamiltonian aligned with one principal axis,
/// including the non-resonant sideband terms: for each (m, n) with
/// m + n <= order a term
///   -g(t) e^{-eta^2/2} (-i eta)^{m+n}/(m! n!) a^dag^m a^n e^{-i nu (n-m) t}
///   x |a><b| + H.c.,
/// with g(t) = g_peak f(t)^2.  Alignment::None keeps only the carrier.
PulsedHamiltonian build_full_raman(const SpaceSpec& space,
                                   const RamanConfig& cfg,
                                   const TrapConfig& trap,
                                   const PulseShape& shape, int order = 6);

/// Vibrational-RWA version: only the resonant (m = n) terms; diagonal in the
/// Fock occupation of the chosen axis.
PulsedHamiltonian build_rwa_raman(const SpaceSpec& space, double eta,
                                  const PulseShape& shape, Axis axis,
                                  int order = 6);

/// Diagonal matrix element (without the -g(t) prefactor) of the RWA series
/// on Fock level n: e^{-eta^2/2} sum_k (-eta^2)^k n! / ((k!)^2 (n-k)!).
double rwa_diagonal(double eta, int n, int order = 6);

struct NumberSensitive {
  PulsedHamiltonian ideal;      // g(t) n_j x |a><b| + H.c., g = i|g| f(t)^2
  PulsedHamiltonian composite;  // eta-exact sum of the two Raman pairs
  double g_eff;                 // |g| = eta^2 e^{-eta^2/2} g1_peak
};

/// Number-sensitive coupling from two pairs of Raman lasers: the first pair
/// aligned with the axis, the second co-propagating and phased to cancel the
/// carrier.  The ideal member keeps the Lamb-Dicke leading order (exactly
/// g(t) n_j); the composite keeps the full sideband series of the first pair
/// and is reported for accuracy diagnostics.
NumberSensitive build_number_sensitive(const SpaceSpec& space, double eta,
                                       double g1_peak, const PulseShape& shape,
                                       Axis axis, int order = 6);

/// g(t)(n_axis - n_other) x |a><b| + H.c. with g = i g_peak f(t)^2.
PulsedHamiltonian build_split(const SpaceSpec& space, double g_peak,
                              const PulseShape& shape, Axis axis = Axis::X);

struct SidebandJCM {
  PulsedHamiltonian full;     // nonlinear kappa-quantum series
  PulsedHamiltonian leading;  // Lamb-Dicke leading order a^dag^kappa
  cplx g_eff;                 // g~ e^{-eta^2/2} (-i eta)^kappa / kappa!
};

/// kappa-th red-sideband excitation of the dipole transition |leg> <-> |c>
/// aligned with one motional axis; g~(t) = g_tilde_peak f(t).
SidebandJCM build_sideband_jcm(const SpaceSpec& space, Level leg, Axis axis,
                               int kappa, double eta, double g_tilde_peak,
                               const PulseShape& shape, int order = 6);

/// Lambda-system add-quantum Hamiltonian
///   -g_a(t)|a><c| - g_b(t) a_axis^dag x |b><c| + H.c.
/// pump drives a<->c (carrier), stokes drives b<->c (first red sideband).
PulsedHamiltonian build_lambda_add(const SpaceSpec& space, Axis axis,
                                   const PulseShape& pump,
                                   const PulseShape& stokes);

/// Lambda-system recombine Hamiltonian
///   -g_a(t) a_from^dag^4 x |a><c| - g_b(t) a_to^dag^4 x |b><c| + H.c.
/// where `to` is the other axis.
PulsedHamiltonian build_lambda_combine(const SpaceSpec& space, Axis from,
                                       const PulseShape& pump,
                                       const PulseShape& stokes);

/// Optical Stark shift magnitudes 2|g_i(t)|^2/Delta at the pulse peak;
/// assumed mutually cancelled, reported for diagnostics only.
double stark_shift_peak(double g_i_peak, double delta);

/// Physical parameter preset (angular frequencies in rad/s).
struct PhysicalPreset {
  std::string name;
  double nu = 0.0;       // trap frequency nu_x = nu_y
  double eta = 0.0;      // Lamb-Dicke parameter
  double g1 = 0.0;       // first-pair Raman coupling peak |g^(1)|
  double kappa = 0.0;    // cavity linewidth
  double g_L = 0.0;      // readout Raman laser coupling
  double g_C = 0.0;      // ion-cavity coupling
  double delta = 0.0;    // Raman detuning |Delta|
  double g_tilde = 0.0;  // resonant dipole coupling |g~_{a,b}|
  double detector_efficiency = 1.0;
};

struct TimescaleRow {
  std::string name;
  double computed;      // recomputed from the preset (SI)
  double quoted;        // headline value (SI)
  double rel_deviation; // |computed - quoted| / |quoted|
  std::string unit;
};

/// Derived timescales and couplings: number-sensitive coupling |g|/2pi, the
/// syndrome pulse duration 4pi/3|g|, the readout threshold 4kappa/3|g_cav|^2,
/// the single-photon probability at 100 us, the fourth-sideband coupling,
/// the adiabatic bound 2/|g_ab| and the RWA ratio eta |g1| / nu.
std::vector<TimescaleRow> timescale_report(const PhysicalPreset& preset);

}  // namespace mqec
