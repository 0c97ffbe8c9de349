#pragma once

#include <array>

#include "mqec/hilbert.hpp"

namespace mqec {

/// Logical qubit c_plus |psi_+> + c_minus |psi_-> stored with the code
/// phases phi1, phi2.
struct LogicalQubit {
  cplx c_plus{1.0, 0.0};
  cplx c_minus{0.0, 0.0};
  double phi1 = 0.0;
  double phi2 = 0.0;

  void validate() const;
};

/// The protected subspace H0 and the two single-jump subspaces H1x, H1y.
struct CodeSubspaces {
  SpaceSpec space;
  std::array<StateVector, 2> h0;   // |psi_+->_0
  std::array<StateVector, 2> h1x;  // |psi_+->_x
  std::array<StateVector, 2> h1y;  // |psi_+->_y
};

/// Unitary 2x2 mixing of the two mode operators.
struct ModeRotation {
  double theta = 0.0;
  double phi = 0.0;
};

enum class JumpLabel { None, X, Y };

struct JumpMixture {
  struct Entry {
    double probability;
    StateVector state;
    JumpLabel label;
  };
  std::vector<Entry> entries;
};

/// Code states (|4,0> + e^{i phi1}|0,4> +- sqrt2 e^{i phi2}|2,2>)/2 and the
/// jump bases (|3,0> +- |1,2>)/sqrt2, (|0,3> +- |2,1>)/sqrt2.  The jump bases
/// use phi1 = phi2 = 0; for nonzero phases they are obtained by applying the
/// jump operator to the code states and orthonormalizing.
CodeSubspaces build_code(const SpaceSpec& space, double phi1 = 0.0,
                         double phi2 = 0.0);

StateVector encode(const LogicalQubit& qubit, const CodeSubspaces& code);

struct DecodeResult {
  cplx c_plus;
  cplx c_minus;
  double residual;  // 1 - |projection onto the two-state span|^2
};

/// Decode against an orthonormal two-state basis (h0, h1x or h1y).
DecodeResult decode(const StateVector& psi,
                    const std::array<StateVector, 2>& basis);

struct ReversibilityReport {
  bool reversible;
  double mu_squared;     // mean diagonal of P A^dag A P on the span
  double max_deviation;  // max |(P A^dag A P)_{kl} - mu^2 delta_{kl}|
};

/// Nielsen-Caves condition: A is unitarily reversible on span(basis) iff
/// P A^dag A P = mu^2 P.
ReversibilityReport check_reversibility(const LinearOperator& a,
                                        const std::vector<StateVector>& basis,
                                        double tol = 1e-10);

struct NoJumpReport {
  bool operator_level_pass;  // basis states degenerate H_eff eigenstates
  double gamma_eff;          // common decay rate Gamma (units of gamma)
  struct TauCheck {
    double tau;
    bool pass;
    double max_deviation;
  };
  std::vector<TauCheck> per_tau;
};

/// Checks that no-jump evolution under the zero-temperature two-mode damping
/// model is unitarily reversible on span(basis): all basis states must be
/// degenerate eigenstates of sum n_x + n_y (so U(tau) = e^{-Gamma tau} on the
/// span for every tau).
NoJumpReport check_no_jump_condition(const std::vector<StateVector>& basis,
                                     double gamma,
                                     const std::vector<double>& tau_samples);

/// Mode-mixed jump operators
///   a_g = cos(theta) a_x + e^{i phi} sin(theta) a_y
///   a_d = cos(theta) a_y - e^{-i phi} sin(theta) a_x.
std::pair<LinearOperator, LinearOperator> bogolyubov(const SpaceSpec& space,
                                                     const ModeRotation& rot);

/// Fock state of the transformed modes, (a_d^dag)^{n_d} (a_g^dag)^{n_g}
/// applied to the vacuum and normalized; theta = pi/4 balanced mixing.
StateVector rotated_fock(const SpaceSpec& space, int n_d, int n_g, double phi);

/// First-order decomposition of the dissipative evolution of an encoded
/// state over a period tau at zero temperature: a no-jump branch with
/// probability e^{-4 gamma tau} and one x- and one y-jump branch with
/// probability 2 e^{-4 gamma tau}(e^{gamma tau} - 1) each.
JumpMixture dyson_first_order(const LogicalQubit& qubit,
                              const CodeSubspaces& code, double gamma,
                              double tau);

/// Density operator of a mixture (for comparison with master-equation
/// output); entries weighted by probability, deficit ignored.
Mat mixture_density(const JumpMixture& mixture);

}  // namespace mqec
