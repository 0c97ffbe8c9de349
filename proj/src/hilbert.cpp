#include "mqec/hilbert.hpp"

#include <cmath>

namespace mqec {

int SpaceSpec::dim() const {
  int d = 1;
  for (int c : mode_cutoffs) d *= c + 1;
  d *= electronic_levels;
  if (cavity_cutoff) d *= *cavity_cutoff + 1;
  return d;
}

void SpaceSpec::validate() const {
  for (int c : mode_cutoffs)
    if (c < 0) throw std::invalid_argument("mode cutoff must be >= 0");
  if (electronic_levels < 1 || electronic_levels > 3)
    throw std::invalid_argument("electronic_levels must be in {1,2,3}");
  if (cavity_cutoff && *cavity_cutoff < 0)
    throw std::invalid_argument("cavity cutoff must be >= 0");
  if (dim() <= 0) throw std::invalid_argument("space dimension must be > 0");
}

int SpaceSpec::index(const std::vector<int>& mode_occ, int electronic,
                     int cavity) const {
  if (static_cast<int>(mode_occ.size()) != num_modes())
    throw std::invalid_argument("mode occupation count mismatch");
  int idx = 0;
  for (int m = 0; m < num_modes(); ++m) {
    if (mode_occ[m] < 0 || mode_occ[m] > mode_cutoffs[m])
      throw std::out_of_range("mode occupation outside cutoff");
    idx = idx * (mode_cutoffs[m] + 1) + mode_occ[m];
  }
  if (electronic < 0 || electronic >= electronic_levels)
    throw std::out_of_range("electronic level outside space");
  idx = idx * electronic_levels + electronic;
  if (cavity_cutoff) {
    if (cavity < 0 || cavity > *cavity_cutoff)
      throw std::out_of_range("cavity occupation outside cutoff");
    idx = idx * (*cavity_cutoff + 1) + cavity;
  } else if (cavity != 0) {
    throw std::out_of_range("space has no cavity factor");
  }
  return idx;
}

int SpaceSpec::factor_dim(Factor f) const {
  switch (f.kind) {
    case Factor::Kind::Mode:
      if (f.index < 0 || f.index >= num_modes())
        throw std::invalid_argument("unknown mode identifier");
      return mode_cutoffs[f.index] + 1;
    case Factor::Kind::Electronic:
      return electronic_levels;
    case Factor::Kind::Cavity:
      if (!cavity_cutoff) throw std::invalid_argument("space has no cavity");
      return *cavity_cutoff + 1;
  }
  throw std::logic_error("bad factor");
}

StateVector StateVector::normalized() const {
  double n = amps.norm();
  if (n == 0.0) throw std::runtime_error("cannot normalize zero vector");
  return {space, amps / n};
}

LinearOperator LinearOperator::dagger() const {
  return {space, mat.adjoint(), hermitian};
}

LinearOperator LinearOperator::operator*(const LinearOperator& rhs) const {
  if (!(space == rhs.space)) throw std::invalid_argument("space mismatch");
  return {space, mat * rhs.mat, false};
}

LinearOperator LinearOperator::operator+(const LinearOperator& rhs) const {
  if (!(space == rhs.space)) throw std::invalid_argument("space mismatch");
  return {space, mat + rhs.mat, hermitian && rhs.hermitian};
}

LinearOperator LinearOperator::operator-(const LinearOperator& rhs) const {
  if (!(space == rhs.space)) throw std::invalid_argument("space mismatch");
  return {space, mat - rhs.mat, hermitian && rhs.hermitian};
}

LinearOperator LinearOperator::operator*(cplx scale) const {
  return {space, mat * scale, hermitian && scale.imag() == 0.0};
}

StateVector apply(const LinearOperator& op, const StateVector& psi) {
  if (!(op.space == psi.space))
    throw std::invalid_argument("operator/state space mismatch");
  return {psi.space, op.mat * psi.amps};
}

LinearOperator tensor_embed(const Mat& factor_op, const SpaceSpec& space,
                            Factor factor) {
  const int fd = space.factor_dim(factor);
  if (factor_op.rows() != fd || factor_op.cols() != fd)
    throw std::invalid_argument("factor operator dimension mismatch");

  // dimensions to the left (slower) and right (faster) of the factor
  int left = 1, right = 1;
  bool seen = false;
  auto account = [&](Factor f, int d) {
    bool is_target = (f.kind == factor.kind && f.index == factor.index);
    if (is_target) {
      seen = true;
    } else if (!seen) {
      left *= d;
    } else {
      right *= d;
    }
  };
  for (int m = 0; m < space.num_modes(); ++m)
    account({Factor::Kind::Mode, m}, space.mode_cutoffs[m] + 1);
  account({Factor::Kind::Electronic, 0}, space.electronic_levels);
  if (space.has_cavity())
    account({Factor::Kind::Cavity, 0}, *space.cavity_cutoff + 1);
  if (!seen) throw std::invalid_argument("factor not part of space");

  Mat full = Mat::Zero(space.dim(), space.dim());
  for (int l = 0; l < left; ++l)
    for (int i = 0; i < fd; ++i)
      for (int j = 0; j < fd; ++j) {
        if (factor_op(i, j) == cplx(0.0)) continue;
        for (int r = 0; r < right; ++r)
          full((l * fd + i) * right + r, (l * fd + j) * right + r) =
              factor_op(i, j);
      }
  return {space, std::move(full), false};
}

namespace {

Mat lowering_matrix(int dim) {
  Mat m = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(double(n));
  return m;
}

}  // namespace

LinearOperator ladder(const SpaceSpec& space, int mode, LadderKind kind) {
  Factor f{Factor::Kind::Mode, mode};
  Mat low = lowering_matrix(space.factor_dim(f));
  return tensor_embed(kind == LadderKind::Lower ? low : Mat(low.adjoint()),
                      space, f);
}

LinearOperator cavity_ladder(const SpaceSpec& space, LadderKind kind) {
  Factor f{Factor::Kind::Cavity, 0};
  Mat low = lowering_matrix(space.factor_dim(f));
  return tensor_embed(kind == LadderKind::Lower ? low : Mat(low.adjoint()),
                      space, f);
}

LinearOperator number_op(const SpaceSpec& space, int mode) {
  Factor f{Factor::Kind::Mode, mode};
  const int d = space.factor_dim(f);
  Mat n = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = double(k);
  auto op = tensor_embed(n, space, f);
  op.hermitian = true;
  return op;
}

LinearOperator cavity_number_op(const SpaceSpec& space) {
  Factor f{Factor::Kind::Cavity, 0};
  const int d = space.factor_dim(f);
  Mat n = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = double(k);
  auto op = tensor_embed(n, space, f);
  op.hermitian = true;
  return op;
}

LinearOperator electronic_op(const SpaceSpec& space, Level i, Level j) {
  const int d = space.electronic_levels;
  const int ii = static_cast<int>(i), jj = static_cast<int>(j);
  if (ii >= d || jj >= d)
    throw std::invalid_argument("electronic level outside space");
  Mat m = Mat::Zero(d, d);
  m(ii, jj) = 1.0;
  auto op = tensor_embed(m, space, {Factor::Kind::Electronic, 0});
  op.hermitian = (i == j);
  return op;
}

LinearOperator identity_op(const SpaceSpec& space) {
  return {space, Mat::Identity(space.dim(), space.dim()), true};
}

StateVector basis_state(const SpaceSpec& space, const std::vector<int>& modes,
                        int electronic, int cavity) {
  Vec v = Vec::Zero(space.dim());
  v(space.index(modes, electronic, cavity)) = 1.0;
  return {space, std::move(v)};
}

cplx inner(const StateVector& bra, const StateVector& ket) {
  if (!(bra.space == ket.space))
    throw std::invalid_argument("state space mismatch");
  return bra.amps.dot(ket.amps);
}

cplx expectation(const LinearOperator& op, const StateVector& psi) {
  if (!(op.space == psi.space))
    throw std::invalid_argument("operator/state space mismatch");
  return psi.amps.dot(op.mat * psi.amps);
}

double fidelity(const StateVector& psi, const StateVector& phi) {
  return std::norm(inner(psi, phi));
}

double projection_weight(const StateVector& psi,
                         const std::vector<StateVector>& basis) {
  double w = 0.0;
  for (const auto& b : basis) w += std::norm(inner(b, psi));
  return w;
}

double truncation_leakage(const StateVector& psi) {
  const auto& s = psi.space;
  double leak = 0.0;
  for (int m = 0; m < s.num_modes(); ++m) {
    auto top = number_op(s, m);  // reuse index layout via diagonal test
    for (int i = 0; i < s.dim(); ++i) {
      if (std::real(top.mat(i, i)) == double(s.mode_cutoffs[m]))
        leak += std::norm(psi.amps(i));
    }
  }
  return leak;
}

}  // namespace mqec
