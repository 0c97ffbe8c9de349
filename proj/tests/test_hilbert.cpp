#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mqec/hilbert.hpp"

using namespace mqec;

namespace {
SpaceSpec motional(int cutoff = 8) {
  SpaceSpec s;
  s.mode_cutoffs = {cutoff, cutoff};
  return s;
}
}  // namespace

TEST_CASE("indexing is row-major with mode 0 slowest") {
  SpaceSpec s = motional(2);
  s.electronic_levels = 3;
  s.cavity_cutoff = 1;
  CHECK(s.dim() == 3 * 3 * 3 * 2);
  CHECK(s.index({0, 0}, 0, 0) == 0);
  CHECK(s.index({0, 0}, 0, 1) == 1);
  CHECK(s.index({0, 0}, 1, 0) == 2);
  CHECK(s.index({0, 1}, 0, 0) == 6);
  CHECK(s.index({1, 0}, 0, 0) == 18);
}

TEST_CASE("ladder algebra on Fock states") {
  SpaceSpec s = motional(4);
  const auto ax = ladder(s, 0, LadderKind::Lower);
  const auto adagx = ladder(s, 0, LadderKind::Raise);

  auto n2 = basis_state(s, {2, 1});
  auto lowered = apply(ax, n2);
  CHECK((lowered.amps - std::sqrt(2.0) * basis_state(s, {1, 1}).amps).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));
  auto raised = apply(adagx, n2);
  CHECK((raised.amps - std::sqrt(3.0) * basis_state(s, {3, 1}).amps).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));

  // raising past the cutoff truncates to zero
  CHECK(apply(adagx, basis_state(s, {4, 0})).norm() == 0.0);

  // [a, a^dag] = 1 away from the truncation edge
  Mat comm = (ax * adagx - adagx * ax).mat;
  auto probe = basis_state(s, {2, 3});
  CHECK((comm * probe.amps - probe.amps).norm() < 1e-13);
}

TEST_CASE("number operator expectations") {
  SpaceSpec s = motional();
  auto psi = basis_state(s, {3, 1});
  CHECK(expectation(number_op(s, 0), psi).real() == doctest::Approx(3.0));
  CHECK(expectation(number_op(s, 1), psi).real() == doctest::Approx(1.0));
  CHECK(expectation(number_op(s, 0), basis_state(s, {0, 0})).real() ==
        doctest::Approx(0.0));
}

TEST_CASE("adjoint is an involution and embedded factors commute") {
  SpaceSpec s = motional(3);
  s.electronic_levels = 2;
  const auto a = ladder(s, 0, LadderKind::Lower);
  CHECK((a.dagger().dagger().mat - a.mat).norm() == 0.0);

  const auto b = ladder(s, 1, LadderKind::Lower);
  const auto sig = electronic_op(s, Level::a, Level::b);
  CHECK(((a * b - b * a).mat).norm() == 0.0);
  CHECK(((a * sig - sig * a).mat).norm() == 0.0);
}

TEST_CASE("unitaries preserve the norm") {
  SpaceSpec s = motional(4);
  // exp(i theta n) is unitary; the number operator is diagonal
  const Mat h = number_op(s, 0).mat;
  Mat u = Mat::Zero(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i)
    u(i, i) = std::exp(cplx(0.0, 0.7) * h(i, i));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  StateVector psi{s, Vec::Zero(s.dim())};
  for (int i = 0; i < s.dim(); ++i) psi.amps[i] = cplx(normal(rng), normal(rng));
  psi = psi.normalized();
  CHECK(std::abs((u * psi.amps).norm() - 1.0) < 1e-12);
}

TEST_CASE("projection weight and truncation leakage") {
  SpaceSpec s = motional();
  std::vector<StateVector> span = {basis_state(s, {4, 0}),
                                   basis_state(s, {0, 4})};
  auto psi = basis_state(s, {3, 0});
  CHECK(projection_weight(psi, span) == doctest::Approx(0.0));
  CHECK(projection_weight(span[0], span) == doctest::Approx(1.0));

  CHECK(truncation_leakage(basis_state(s, {8, 0})) ==
        doctest::Approx(1.0));
  CHECK(truncation_leakage(basis_state(s, {4, 4})) ==
        doctest::Approx(0.0));
}

TEST_CASE("fidelity basics") {
  SpaceSpec s = motional(2);
  auto p = basis_state(s, {1, 0});
  auto q = basis_state(s, {0, 1});
  CHECK(fidelity(p, p) == doctest::Approx(1.0));
  CHECK(fidelity(p, q) == doctest::Approx(0.0));
}
