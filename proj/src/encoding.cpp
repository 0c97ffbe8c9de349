#include "mqec/encoding.hpp"

#include <cmath>

#include "mqec/dynamics.hpp"

namespace mqec {

void LogicalQubit::validate() const {
  const double n = std::norm(c_plus) + std::norm(c_minus);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("logical coefficients not normalized");
}

namespace {

StateVector superpose(const SpaceSpec& space,
                      const std::vector<std::pair<cplx, std::vector<int>>>&
                          terms) {
  StateVector out{space, Vec::Zero(space.dim())};
  for (const auto& [amp, occ] : terms) out.amps[space.index(occ)] += amp;
  return out;
}

StateVector orthonormal_jump_state(const LinearOperator& jump,
                                   const StateVector& code_state) {
  StateVector s = apply(jump, code_state);
  const double n = s.norm();
  if (n < 1e-14)
    throw std::invalid_argument("code state annihilated by jump operator");
  s.amps /= n;
  return s;
}

}  // namespace

CodeSubspaces build_code(const SpaceSpec& space, double phi1, double phi2) {
  if (space.num_modes() != 2 || space.mode_cutoffs[0] < 4 ||
      space.mode_cutoffs[1] < 4)
    throw std::invalid_argument(
        "code construction needs two modes with cutoffs >= 4");

  const cplx e1 = std::exp(cplx(0.0, phi1));
  const cplx e2 = std::exp(cplx(0.0, phi2));
  const double s2 = std::sqrt(2.0);
  const double inv2 = 0.5;

  CodeSubspaces code;
  code.space = space;
  for (int sign = 0; sign < 2; ++sign) {
    const double pm = sign == 0 ? 1.0 : -1.0;
    code.h0[sign] = superpose(space, {{inv2, {4, 0}},
                                      {inv2 * e1, {0, 4}},
                                      {inv2 * pm * s2 * e2, {2, 2}}});
  }

  if (phi1 == 0.0 && phi2 == 0.0) {
    const double r = 1.0 / s2;
    for (int sign = 0; sign < 2; ++sign) {
      const double pm = sign == 0 ? 1.0 : -1.0;
      code.h1x[sign] = superpose(space, {{r, {3, 0}}, {pm * r, {1, 2}}});
      code.h1y[sign] = superpose(space, {{r, {0, 3}}, {pm * r, {2, 1}}});
    }
  } else {
    const auto ax = ladder(space, 0, LadderKind::Lower);
    const auto ay = ladder(space, 1, LadderKind::Lower);
    for (int sign = 0; sign < 2; ++sign) {
      code.h1x[sign] = orthonormal_jump_state(ax, code.h0[sign]);
      code.h1y[sign] = orthonormal_jump_state(ay, code.h0[sign]);
    }
  }
  return code;
}

StateVector encode(const LogicalQubit& qubit, const CodeSubspaces& code) {
  qubit.validate();
  StateVector out{code.space,
                  qubit.c_plus * code.h0[0].amps +
                      qubit.c_minus * code.h0[1].amps};
  return out;
}

DecodeResult decode(const StateVector& psi,
                    const std::array<StateVector, 2>& basis) {
  const cplx cp = inner(basis[0], psi);
  const cplx cm = inner(basis[1], psi);
  const double total = psi.amps.squaredNorm();
  return {cp, cm, total - std::norm(cp) - std::norm(cm)};
}

ReversibilityReport check_reversibility(const LinearOperator& a,
                                        const std::vector<StateVector>& basis,
                                        double tol) {
  const size_t k = basis.size();
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j <= i; ++j) {
      const cplx ip = inner(basis[i], basis[j]);
      const cplx expect = i == j ? cplx(1.0) : cplx(0.0);
      if (std::abs(ip - expect) > 1e-10)
        throw std::invalid_argument("basis is not orthonormal");
    }

  std::vector<Vec> images(k);
  for (size_t i = 0; i < k; ++i) images[i] = a.mat * basis[i].amps;

  Mat gram(k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      gram(i, j) = images[i].dot(images[j]);  // <A b_i | A b_j>

  const double mu2 = gram.diagonal().real().mean();
  double dev = 0.0;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      const cplx target = i == j ? cplx(mu2) : cplx(0.0);
      dev = std::max(dev, std::abs(gram(i, j) - target));
    }
  return {dev <= tol, mu2, dev};
}

NoJumpReport check_no_jump_condition(const std::vector<StateVector>& basis,
                                     double gamma,
                                     const std::vector<double>& tau_samples) {
  if (basis.empty()) throw std::invalid_argument("empty basis");
  const SpaceSpec& space = basis.front().space;

  // H_eff = -(i gamma / 2)(n_x + n_y); the span is reversible for every tau
  // iff all basis states are total-number eigenstates with one eigenvalue.
  const auto ntot = number_op(space, 0) + number_op(space, 1);
  NoJumpReport report;
  report.operator_level_pass = true;

  double common_n = 0.0;
  for (size_t i = 0; i < basis.size(); ++i) {
    const Vec img = ntot.mat * basis[i].amps;
    const double n_i = std::real(basis[i].amps.dot(img));
    const double spread = (img - n_i * basis[i].amps).norm();
    if (spread > 1e-10) report.operator_level_pass = false;
    if (i == 0)
      common_n = n_i;
    else if (std::abs(n_i - common_n) > 1e-10)
      report.operator_level_pass = false;
  }
  report.gamma_eff = gamma * common_n / 2.0;

  LindbladModel model = thermal_two_mode_model(space, gamma, 0.0);
  for (double tau : tau_samples) {
    NoJumpReport::TauCheck check{tau, true, 0.0};
    const double amp = std::exp(-report.gamma_eff * tau);
    // include the +/- superposition to catch non-degenerate spans
    std::vector<StateVector> probes = basis;
    if (basis.size() >= 2) {
      StateVector mix{space,
                      (basis[0].amps + basis[1].amps) / std::sqrt(2.0)};
      probes.push_back(std::move(mix));
    }
    for (const auto& probe : probes) {
      StateVector evolved = evolve_effective(model, probe, 0.0, tau);
      check.max_deviation = std::max(
          check.max_deviation, (evolved.amps - amp * probe.amps).norm());
    }
    check.pass = check.max_deviation <= 1e-6;
    report.per_tau.push_back(check);
  }
  return report;
}

std::pair<LinearOperator, LinearOperator> bogolyubov(const SpaceSpec& space,
                                                     const ModeRotation& rot) {
  const auto ax = ladder(space, 0, LadderKind::Lower);
  const auto ay = ladder(space, 1, LadderKind::Lower);
  const double c = std::cos(rot.theta), s = std::sin(rot.theta);
  const cplx eip = std::exp(cplx(0.0, rot.phi));
  LinearOperator a_g = ax * cplx(c) + ay * (eip * s);
  LinearOperator a_d = ay * cplx(c) - ax * (std::conj(eip) * s);
  return {a_g, a_d};
}

StateVector rotated_fock(const SpaceSpec& space, int n_d, int n_g,
                         double phi) {
  if (n_d + n_g > std::min(space.mode_cutoffs[0], space.mode_cutoffs[1]))
    throw std::invalid_argument("cutoff too small for rotated Fock state");
  auto [a_g, a_d] = bogolyubov(space, {kPi / 4.0, phi});
  const Mat gd = a_g.dagger().mat;
  const Mat dd = a_d.dagger().mat;
  Vec v = basis_state(space, {0, 0}).amps;
  for (int k = 0; k < n_g; ++k) v = gd * v;
  for (int k = 0; k < n_d; ++k) v = dd * v;
  StateVector out{space, std::move(v)};
  return out.normalized();
}

JumpMixture dyson_first_order(const LogicalQubit& qubit,
                              const CodeSubspaces& code, double gamma,
                              double tau) {
  if (gamma * tau >= 0.3)
    throw std::invalid_argument(
        "first-order decomposition valid only for gamma*tau < 0.3");
  const StateVector encoded = encode(qubit, code);
  JumpMixture mix;
  const double p0 = std::exp(-4.0 * gamma * tau);
  mix.entries.push_back({p0, encoded, JumpLabel::None});
  if (tau > 0.0) {
    const double pj = 2.0 * p0 * (std::exp(gamma * tau) - 1.0);
    StateVector jx{code.space, qubit.c_plus * code.h1x[0].amps +
                                   qubit.c_minus * code.h1x[1].amps};
    StateVector jy{code.space, qubit.c_plus * code.h1y[0].amps +
                                   qubit.c_minus * code.h1y[1].amps};
    mix.entries.push_back({pj, std::move(jx), JumpLabel::X});
    mix.entries.push_back({pj, std::move(jy), JumpLabel::Y});
  }
  return mix;
}

Mat mixture_density(const JumpMixture& mixture) {
  if (mixture.entries.empty()) throw std::invalid_argument("empty mixture");
  const int d = mixture.entries.front().state.space.dim();
  Mat rho = Mat::Zero(d, d);
  for (const auto& e : mixture.entries)
    rho += e.probability * (e.state.amps * e.state.amps.adjoint());
  return rho;
}

}  // namespace mqec
