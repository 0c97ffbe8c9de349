#pragma once

#include "mqec/syndrome.hpp"

namespace mqec {

/// Parameters for the three-step jump inversion.  Durations are in seconds;
/// peak couplings are derived from the requested adiabatic pulse area
/// (integral |g| dt = stirap_area) for the sin^2 shape.
struct RestorePlan {
  StageMode mode = StageMode::Ideal;
  double stirap_area = 50.0;        // integral |g(t)| dt per adiabatic pulse
  double stage_duration = 1.0;      // pulse duration T for each stage
  double stokes_advance = 1.0 / 3.0;  // Stokes precedes pump by this * T
  double recombine_phase_offset = kPi;  // Stokes phase relative to pump
};

struct StageDiagnostics {
  double max_c_population = 0.0;   // peak |c> population during the stage
  double min_dark_overlap = 1.0;   // worst instantaneous dark-state overlap
  bool adiabaticity_ok = true;     // integral |g| dt >= 10
};

/// Step 1: |n_x, n_y> x |a> -> |n_x+1, n_y> x |b> (x channel; axis = quantum
/// added along this axis).  Ideal mode applies the exact map; pulsed mode
/// integrates the STIRAP pulse pair.
StateVector add_quantum(const StateVector& state, Axis axis,
                        const RestorePlan& plan,
                        StageDiagnostics* diag = nullptr);

/// Step 2: entangler with chi = |g| (n_axis - n_other) at area pi/16:
/// |4,0> x |b> -> |4,0> x (|a>+|b>)/sqrt2 while |2,2> is untouched.
StateVector split(const StateVector& state, Axis axis,
                  const RestorePlan& plan);

/// Step 3: |n+4, m> x |a> -> |n, m+4> x |b> along axis -> other axis; states
/// annihilated by a_other^4 x <b| are untouched.
StateVector recombine(const StateVector& state, Axis axis,
                      const RestorePlan& plan,
                      StageDiagnostics* diag = nullptr);

/// Dispatch on the syndrome: no jump -> identity; x/y jump -> the three-step
/// sequence on the corresponding axis.  The output motional state is the
/// restored encoded state with the electronic factor in |b>.
StateVector restore(const StateVector& state, const SyndromeOutcome& outcome,
                    const RestorePlan& plan,
                    StageDiagnostics* diag = nullptr);

/// Map the electronic |b> component back to |a> (classical reset between
/// cycles); requires the |a> component to be unoccupied.
StateVector reset_electronic(const StateVector& state);

}  // namespace mqec
