#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mqec {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

constexpr double kPi = 3.14159265358979323846;

/// Electronic level labels for the effective three-level ion (Lambda system).
enum class Level : int { a = 0, b = 1, c = 2 };

/// A factor of the tensor-product space.
struct Factor {
  enum class Kind { Mode, Electronic, Cavity } kind;
  int index;  // mode index for Kind::Mode, otherwise 0
};

/// Factored finite-dimensional Hilbert space:
/// (mode_0 Fock) x (mode_1 Fock) x ... x electronic x optional cavity.
/// Index order is row-major with mode 0 slowest, cavity fastest.
struct SpaceSpec {
  std::vector<int> mode_cutoffs;          // inclusive max Fock occupation
  int electronic_levels = 1;              // 1, 2 or 3
  std::optional<int> cavity_cutoff;       // inclusive, if a cavity is present

  int dim() const;
  int num_modes() const { return static_cast<int>(mode_cutoffs.size()); }
  bool has_cavity() const { return cavity_cutoff.has_value(); }

  // flat index of a product basis state
  int index(const std::vector<int>& mode_occ, int electronic = 0,
            int cavity = 0) const;

  // dimension of a single factor
  int factor_dim(Factor f) const;

  bool operator==(const SpaceSpec& other) const = default;

  void validate() const;
};

struct StateVector {
  SpaceSpec space;
  Vec amps;

  double norm() const { return amps.norm(); }
  StateVector normalized() const;
};

struct LinearOperator {
  SpaceSpec space;
  Mat mat;
  bool hermitian = false;

  LinearOperator dagger() const;
  LinearOperator operator*(const LinearOperator& rhs) const;
  LinearOperator operator+(const LinearOperator& rhs) const;
  LinearOperator operator-(const LinearOperator& rhs) const;
  LinearOperator operator*(cplx scale) const;
};

StateVector apply(const LinearOperator& op, const StateVector& psi);

enum class LadderKind { Lower, Raise };

/// Annihilation/creation operator of a bosonic mode, embedded in the full
/// space.  Raising past the cutoff maps to zero (truncation convention).
LinearOperator ladder(const SpaceSpec& space, int mode, LadderKind kind);
LinearOperator cavity_ladder(const SpaceSpec& space, LadderKind kind);

/// Number operator of a mode, embedded in the full space.
LinearOperator number_op(const SpaceSpec& space, int mode);
LinearOperator cavity_number_op(const SpaceSpec& space);

/// Electronic |i><j|, embedded in the full space.
LinearOperator electronic_op(const SpaceSpec& space, Level i, Level j);

LinearOperator identity_op(const SpaceSpec& space);

/// Embed an operator acting on a single factor into the full space
/// (identity on every other factor).
LinearOperator tensor_embed(const Mat& factor_op, const SpaceSpec& space,
                            Factor factor);

/// Product basis state |n_0, n_1, ...> x |electronic> x |cavity>.
StateVector basis_state(const SpaceSpec& space, const std::vector<int>& modes,
                        int electronic = 0, int cavity = 0);

cplx inner(const StateVector& bra, const StateVector& ket);
cplx expectation(const LinearOperator& op, const StateVector& psi);

/// |<psi|phi>|^2 for normalized inputs.
double fidelity(const StateVector& psi, const StateVector& phi);

/// Squared norm of the projection of psi onto span(basis);
/// basis must be orthonormal.
double projection_weight(const StateVector& psi,
                         const std::vector<StateVector>& basis);

/// Total population in the top Fock level of each mode; used as the
/// truncation-leakage monitor.
double truncation_leakage(const StateVector& psi);

}  // namespace mqec
