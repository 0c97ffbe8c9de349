#include "mqec/syndrome.hpp"

#include <cmath>

namespace mqec {

CavityReadoutConfig readout_from_preset(const PhysicalPreset& p) {
  return {p.kappa, p.g_C, p.g_L, p.delta, p.detector_efficiency};
}

LinearOperator entangle(const SpaceSpec& space, Axis axis, double g_area) {
  if (space.electronic_levels < 2)
    throw std::invalid_argument("electronic factor required");
  const int d = space.dim();
  Mat u = Mat::Zero(d, d);

  const int nx_d = space.mode_cutoffs[0] + 1;
  const int ny_d = space.num_modes() > 1 ? space.mode_cutoffs[1] + 1 : 1;
  const int cav_d = space.has_cavity() ? *space.cavity_cutoff + 1 : 1;

  for (int nx = 0; nx < nx_d; ++nx)
    for (int ny = 0; ny < ny_d; ++ny)
      for (int cav = 0; cav < cav_d; ++cav) {
        const int n = axis == Axis::X ? nx : ny;
        const double c = std::cos(n * g_area);
        const double s = std::sin(n * g_area);
        const int ia = space.index({nx, ny}, int(Level::a), cav);
        const int ib = space.index({nx, ny}, int(Level::b), cav);
        u(ia, ia) = c;
        u(ib, ib) = c;
        u(ia, ib) = s;   // |a><b|
        u(ib, ia) = -s;  // -|b><a|
        for (int lvl = 2; lvl < space.electronic_levels; ++lvl) {
          const int il = space.index({nx, ny}, lvl, cav);
          u(il, il) = 1.0;
        }
      }
  return {space, std::move(u), false};
}

std::function<StateVector(const StateVector&)> entangle_via_pulse(
    const SpaceSpec& space, double eta, double g1_peak, Axis axis,
    const PulseShape& shape) {
  auto built = build_number_sensitive(space, eta, g1_peak, shape, axis);
  const double t0 = shape.delay;
  const double t1 = shape.delay + shape.duration;
  return [h = std::move(built.ideal), t0, t1](const StateVector& psi) {
    return evolve_schrodinger(h, psi, t0, t1);
  };
}

double photon_gun_probability(const CavityReadoutConfig& cfg,
                              const PulseShape& shape) {
  const double g = cfg.g_cavity();
  const double a2 = pulse_area(shape, 2);
  return 1.0 - std::exp(-2.0 * g * g * a2 / cfg.kappa);
}

CavityReadoutResult cavity_readout_simulate(const CavityReadoutConfig& cfg,
                                            const PulseShape& shape,
                                            const StateVector& psi_el) {
  if (psi_el.space.electronic_levels < 2)
    throw std::invalid_argument("two electronic levels required");

  SpaceSpec joint;
  joint.electronic_levels = 2;
  joint.cavity_cutoff = 1;

  // embed the electronic input with the cavity in vacuum
  StateVector psi{joint, Vec::Zero(joint.dim())};
  for (int lvl = 0; lvl < 2; ++lvl)
    psi.amps[joint.index({}, lvl, 0)] =
        psi_el.amps[psi_el.space.index({}, lvl)];

  // Raman channel |b,0> -> |a,1>, then cavity decay at energy rate 2 kappa
  PulsedHamiltonian h;
  h.space = joint;
  LinearOperator op = cavity_ladder(joint, LadderKind::Raise) *
                      electronic_op(joint, Level::a, Level::b);
  PulseShape drive = shape;
  drive.peak = cfg.g_cavity();
  h.terms.push_back(
      {std::move(op), [drive](double t) { return drive.value(t); }, true});

  LindbladModel model;
  model.hamiltonian = std::move(h);
  model.jumps.push_back({cavity_ladder(joint, LadderKind::Lower),
                         2.0 * cfg.kappa});

  StateVector out =
      evolve_effective(model, psi, shape.delay, shape.delay + shape.duration);
  const double emission = 1.0 - out.amps.squaredNorm();

  StateVector ground{psi_el.space, Vec::Zero(psi_el.space.dim())};
  ground.amps[psi_el.space.index({}, int(Level::a))] = 1.0;
  return {emission * cfg.detector_efficiency, emission, cfg.bad_cavity_ok(),
          std::move(ground)};
}

namespace {

StateVector measure_and_reset(const StateVector& psi, bool& detected,
                              double efficiency, std::mt19937_64& rng) {
  const SpaceSpec& space = psi.space;
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const auto pb = electronic_op(space, Level::b, Level::b);
  const Vec projected_b = pb.mat * psi.amps;
  const double prob_b = projected_b.squaredNorm();

  const bool outcome_b = unif(rng) < prob_b;
  detected = outcome_b && (efficiency >= 1.0 || unif(rng) < efficiency);

  StateVector post{space, Vec()};
  if (outcome_b) {
    // collapse onto |b> and reset the electronic state to |a>
    const auto lower = electronic_op(space, Level::a, Level::b);
    post.amps = lower.mat * projected_b / std::sqrt(prob_b);
  } else {
    post.amps = (psi.amps - projected_b) / std::sqrt(1.0 - prob_b);
  }
  return post;
}

}  // namespace

SyndromeOutcome detect(const StateVector& state, const CodeSubspaces& code,
                       const DetectConfig& cfg, std::mt19937_64& rng) {
  const SpaceSpec& space = state.space;
  if (!(space == code.space))
    throw std::invalid_argument("state/code space mismatch");

  // the motional part must lie in H0 + H1x + H1y (electronic |a>)
  double weight = 0.0;
  for (const auto* pair : {&code.h0, &code.h1x, &code.h1y})
    for (const auto& b : *pair) weight += std::norm(inner(b, state));
  if (1.0 - weight > cfg.leakage_tol)
    throw std::runtime_error(
        "input leaks outside the code and single-jump subspaces "
        "(multi-jump or truncation issue)");

  auto apply_entangler = [&](const StateVector& psi,
                             Axis axis) -> StateVector {
    if (cfg.mode == StageMode::Ideal)
      return apply(entangle(space, axis, kPi / 2.0), psi);
    const double g_eff =
        cfg.eta * cfg.eta * std::exp(-cfg.eta * cfg.eta / 2.0) * cfg.g1_peak;
    PulseShape shape{PulseShape::Kind::SinSquared,
                     4.0 * kPi / (3.0 * g_eff), 0.0, 0.0, 0.0, {}};
    return entangle_via_pulse(space, cfg.eta, cfg.g1_peak, axis, shape)(psi);
  };

  SyndromeOutcome out;
  int swaps = 0;

  StateVector psi = apply_entangler(state, Axis::X);
  ++swaps;
  bool detected = false;
  psi = measure_and_reset(psi, detected, cfg.detector_efficiency, rng);
  out.x_jump = detected;
  out.photon_records.emplace_back("x", detected);

  psi = apply_entangler(psi, Axis::Y);
  ++swaps;
  psi = measure_and_reset(psi, detected, cfg.detector_efficiency, rng);
  out.y_jump = detected;
  out.photon_records.emplace_back("y", detected);

  out.frame_flipped = (swaps % 2) != 0;
  out.post_state = std::move(psi);
  return out;
}

}  // namespace mqec
