#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mqec/presets.hpp"
#include "mqec/raman.hpp"

using namespace mqec;

namespace {

SpaceSpec three_level(int cutoff = 6) {
  SpaceSpec s;
  s.mode_cutoffs = {cutoff, cutoff};
  s.electronic_levels = 3;
  return s;
}

PulseShape sin2(double duration, double peak, double phase = 0.0,
                double delay = 0.0) {
  PulseShape p;
  p.duration = duration;
  p.peak = peak;
  p.phase = phase;
  p.delay = delay;
  return p;
}

double hermiticity_defect(const PulsedHamiltonian& h, double t) {
  const Mat m = h.at(t);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("pulse areas: analytic sin^2 integrals") {
  auto p = sin2(2.0, 3.0);
  // integral sin^2 = T/2, integral sin^4 = 3T/8 (envelope only)
  CHECK(pulse_area(p, 1) == doctest::Approx(1.0));
  CHECK(pulse_area(p, 2) == doctest::Approx(0.75));
  PulseShape flat;
  flat.kind = PulseShape::Kind::Flat;
  flat.duration = 2.0;
  CHECK(pulse_area(flat, 1) == doctest::Approx(2.0));
  CHECK(pulse_area(flat, 2) == doctest::Approx(2.0));
}

TEST_CASE("RWA diagonal series values") {
  // n = 0: e^{-eta^2/2}; n = 1: e^{-eta^2/2}(1 - eta^2)
  const double eta = 0.2;
  CHECK(rwa_diagonal(eta, 0) == doctest::Approx(std::exp(-0.02)));
  CHECK(rwa_diagonal(eta, 1) ==
        doctest::Approx(std::exp(-0.02) * (1.0 - 0.04)));
  // n = 2: e^{-eta^2/2}(1 - 2 eta^2 + eta^4/2)
  CHECK(rwa_diagonal(eta, 2) ==
        doctest::Approx(std::exp(-0.02) * (1.0 - 0.08 + 0.0008)));
}

TEST_CASE("built Hamiltonians are Hermitian at sampled times") {
  SpaceSpec s = three_level(4);
  auto shape = sin2(1e-4, 2.0 * kPi * 5e5);
  RamanConfig rcfg;
  rcfg.eta_x = 0.2;
  rcfg.eta_y = 0.2;
  rcfg.g_peak = shape.peak;
  TrapConfig trap{2.0 * kPi * 1e7, 2.0 * kPi * 1e7};

  std::vector<PulsedHamiltonian> hams;
  hams.push_back(build_full_raman(s, rcfg, trap, shape));
  hams.push_back(build_rwa_raman(s, 0.2, shape, Axis::X));
  hams.push_back(build_split(s, shape.peak, shape));
  auto ns = build_number_sensitive(s, 0.2, shape.peak, shape, Axis::X);
  hams.push_back(ns.ideal);
  hams.push_back(ns.composite);
  hams.push_back(build_lambda_add(s, Axis::X, shape, shape));

  for (const auto& h : hams)
    for (double frac : {0.1, 0.33, 0.5, 0.77})
      CHECK(hermiticity_defect(h, frac * shape.duration) < 1e-12 * shape.peak);
}

TEST_CASE("number-sensitive and split Hamiltonians conserve both numbers") {
  SpaceSpec s = three_level(4);
  auto shape = sin2(1e-4, 1e5);
  auto ns = build_number_sensitive(s, 0.2, 1e5, shape, Axis::X);
  auto sp = build_split(s, 1e5, shape);
  for (int mode = 0; mode < 2; ++mode) {
    const Mat n = number_op(s, mode).mat;
    CHECK((ns.ideal.at(shape.duration / 3.0) * n -
           n * ns.ideal.at(shape.duration / 3.0))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    CHECK((sp.at(shape.duration / 3.0) * n - n * sp.at(shape.duration / 3.0))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
  }
}

TEST_CASE("effective coupling formulas") {
  SpaceSpec s = three_level(4);
  const double eta = 0.2, g1 = 2.0 * kPi * 5e5;
  auto shape = sin2(1e-4, g1);
  auto ns = build_number_sensitive(s, eta, g1, shape, Axis::X);
  CHECK(ns.g_eff == doctest::Approx(eta * eta * std::exp(-eta * eta / 2) * g1));

  const double gt = 2.0 * kPi * 1.5e7;
  auto jcm = build_sideband_jcm(s, Level::b, Axis::X, 4, eta, gt, shape);
  const cplx want = gt * std::exp(-eta * eta / 2.0) *
                    std::pow(cplx(0.0, -eta), 4) / 24.0;
  CHECK(std::abs(jcm.g_eff - want) < 1e-9 * std::abs(want));
}

TEST_CASE("full Raman reduces to the RWA on resonance-averaged dynamics") {
  // at the carrier level (t-independent terms) the m = n weights agree
  SpaceSpec s = three_level(3);
  auto shape = sin2(1e-4, 1e5);
  auto rwa = build_rwa_raman(s, 0.2, shape, Axis::X);
  // RWA diagonal weights appear directly in the matrix at peak
  const Mat m = rwa.at(shape.duration / 2.0);
  const int ia0 = s.index({0, 0}, int(Level::a));
  const int ib0 = s.index({0, 0}, int(Level::b));
  const int ia1 = s.index({1, 0}, int(Level::a));
  const int ib1 = s.index({1, 0}, int(Level::b));
  CHECK(std::abs(m(ia0, ib0)) ==
        doctest::Approx(1e5 * rwa_diagonal(0.2, 0)).epsilon(1e-10));
  CHECK(std::abs(m(ia1, ib1)) ==
        doctest::Approx(1e5 * rwa_diagonal(0.2, 1)).epsilon(1e-10));
  // off-diagonal Fock blocks vanish in the RWA
  CHECK(std::abs(m(ia0, ib1)) < 1e-12);
}

TEST_CASE("lambda Hamiltonians annihilate their dark states") {
  SpaceSpec s = three_level(6);
  const double T = 1.0;
  auto pump = sin2(T, 100.0, 0.0, T / 3.0);
  auto stokes = sin2(T, 100.0, 0.0, 0.0);

  auto h_add = build_lambda_add(s, Axis::X, pump, stokes);
  auto h_comb = build_lambda_combine(s, Axis::X, pump, stokes);

  const int nx = 1, ny = 2;
  for (int k = 1; k < 50; ++k) {
    const double t = (T + T / 3.0) * k / 50.0;
    const Mat ma = h_add.at(t);
    const Mat mc = h_comb.at(t);
    const double scale = std::max(1.0, ma.cwiseAbs().maxCoeff());

    // add: alpha |nx,ny,a> - beta |nx+1,ny,b>, alpha = g_b* sqrt(nx+1),
    // beta = g_a*
    const cplx ga = pump.value(t), gb = stokes.value(t);
    Vec dark = Vec::Zero(s.dim());
    dark[s.index({nx, ny}, int(Level::a))] =
        std::conj(gb) * std::sqrt(double(nx + 1));
    dark[s.index({nx + 1, ny}, int(Level::b))] = -std::conj(ga);
    if (dark.norm() > 0.0) {
      dark.normalize();
      CHECK((ma * dark).norm() < 1e-10 * scale);
    }

    // combine annihilates |4,0,b> and |2,2,b> (no a_y^dag^4 image within
    // cutoff reach of <b| coupling on those states having n_y + 4 <= cutoff
    // but zero <a| component)
    Vec v40 = basis_state(s, {4, 0}, int(Level::b)).amps;
    Vec v22 = basis_state(s, {2, 2}, int(Level::b)).amps;
    const double cs = std::max(1.0, mc.cwiseAbs().maxCoeff());
    CHECK((mc * v40).norm() / cs < 1e-10);
    CHECK((mc * v22).norm() / cs < 1e-10);
  }
}

TEST_CASE("pump-off dark state is the bare ground state") {
  SpaceSpec s = three_level(4);
  auto stokes = sin2(1.0, 50.0);
  PulseShape pump_off = sin2(1.0, 0.0);
  auto h = build_lambda_add(s, Axis::X, pump_off, stokes);
  const Mat m = h.at(0.5);
  Vec bare = basis_state(s, {2, 1}, int(Level::a)).amps;
  CHECK((m * bare).norm() < 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()));
}

TEST_CASE("timescale table matches the headline values") {
  auto preset = load_preset("be_plus");
  auto rows = timescale_report(preset);
  auto find = [&](const std::string& name) -> const TimescaleRow& {
    for (const auto& r : rows)
      if (r.name == name) return r;
    throw std::runtime_error("missing row " + name);
  };

  CHECK(find("number_sensitive_coupling_over_2pi").computed ==
        doctest::Approx(19604.0).epsilon(1e-3));
  CHECK(find("syndrome_pulse_duration").computed ==
        doctest::Approx(34.0e-6).epsilon(0.03));
  CHECK(find("readout_threshold_duration").computed ==
        doctest::Approx(15.9e-6).epsilon(0.01));
  CHECK(find("photon_probability_100us").computed ==
        doctest::Approx(0.998).epsilon(1e-3));
  CHECK(find("fourth_sideband_coupling_over_2pi").computed ==
        doctest::Approx(980.2).epsilon(1e-3));
  CHECK(find("adiabatic_bound_duration").computed ==
        doctest::Approx(324.7e-6).epsilon(1e-2));
  CHECK(find("rwa_ratio").computed == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("stark shift diagnostic") {
  CHECK(stark_shift_peak(3.0, 18.0) == doctest::Approx(1.0));
}
