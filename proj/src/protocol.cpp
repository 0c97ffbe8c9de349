#include "mqec/protocol.hpp"

#include <cmath>

namespace mqec {

SpaceSpec ProtocolConfig::space() const {
  SpaceSpec s;
  s.mode_cutoffs = {mode_cutoff, mode_cutoff};
  s.electronic_levels = 3;
  return s;
}

void ProtocolConfig::validate() const {
  if (gamma < 0.0 || tau <= 0.0 || cycles <= 0 || mode_cutoff < 4)
    throw std::invalid_argument("invalid protocol configuration");
  if (n_bar > 0.0)
    throw std::invalid_argument(
        "n_bar > 0 is supported for evolution-only experiments; detection "
        "and restoration are defined for the zero-temperature channels");
}

namespace {

double subspace_weight(const StateVector& psi, const CodeSubspaces& code) {
  double w = 0.0;
  for (const auto* pair : {&code.h0, &code.h1x, &code.h1y})
    for (const auto& b : *pair) w += std::norm(inner(b, psi));
  return w;
}

LindbladModel decay_model(const SpaceSpec& space, double gamma) {
  LindbladModel model;
  model.jumps.push_back({ladder(space, 0, LadderKind::Lower), gamma});
  model.jumps.push_back({ladder(space, 1, LadderKind::Lower), gamma});
  return model;
}

}  // namespace

CycleReport run_cycle(StateVector& psi, const StateVector& reference,
                      const CodeSubspaces& code, const ProtocolConfig& cfg,
                      std::uint64_t traj_index) {
  CycleReport report;
  report.cycle = int(traj_index);

  const LindbladModel model = decay_model(psi.space, cfg.gamma);
  auto rec = run_trajectory(model, psi, 0.0, cfg.tau, cfg.seed, traj_index);
  for (const auto& [t, channel] : rec.jump_events)
    (channel == 0 ? report.jumps_x : report.jumps_y)++;

  StateVector decayed = rec.final_state.normalized();
  report.leakage = 1.0 - subspace_weight(decayed, code);
  report.failed =
      (report.jumps_x + report.jumps_y > 1) || report.leakage > cfg.leakage_tol;
  if (report.failed) {
    psi = std::move(decayed);
    report.fidelity = fidelity(reference, psi);
    return report;
  }

  auto rng = make_stream(cfg.seed + 0x5eed, traj_index);
  DetectConfig detect_cfg;
  detect_cfg.mode = cfg.stage_mode;
  detect_cfg.detector_efficiency = cfg.detector_efficiency;
  detect_cfg.leakage_tol = std::max(cfg.leakage_tol, 1e-9);
  SyndromeOutcome outcome = detect(decayed, code, detect_cfg, rng);
  report.x_detected = outcome.x_jump;
  report.y_detected = outcome.y_jump;

  StateVector restored = restore(outcome.post_state, outcome,
                                 cfg.restore_plan);
  if (outcome.x_jump || outcome.y_jump)
    restored = reset_electronic(restored);
  psi = restored.normalized();
  report.fidelity = fidelity(reference, psi);
  return report;
}

ProtocolResult run_protocol(const LogicalQubit& qubit,
                            const ProtocolConfig& cfg) {
  cfg.validate();
  const SpaceSpec space = cfg.space();
  const CodeSubspaces code = build_code(space, qubit.phi1, qubit.phi2);
  const StateVector reference = encode(qubit, code);

  ProtocolResult result;
  StateVector psi = reference;
  for (int c = 0; c < cfg.cycles; ++c) {
    result.cycles.push_back(run_cycle(psi, reference, code, cfg, c));
    if (result.cycles.back().failed) ++result.failures;
  }
  result.final_fidelity = result.cycles.back().fidelity;
  return result;
}

std::vector<std::pair<double, double>> run_unprotected(
    const LogicalQubit& qubit, const ProtocolConfig& cfg,
    const std::vector<double>& times) {
  SpaceSpec space;
  space.mode_cutoffs = {cfg.mode_cutoff, cfg.mode_cutoff};
  const CodeSubspaces code = build_code(space, qubit.phi1, qubit.phi2);
  const StateVector psi0 = encode(qubit, code);

  const LindbladModel model =
      thermal_two_mode_model(space, cfg.gamma, cfg.n_bar);
  std::vector<std::pair<double, double>> curve;
  Mat rho = density_of(psi0);
  double t_prev = 0.0;
  for (double t : times) {
    if (t < t_prev) throw std::invalid_argument("times must be increasing");
    if (t > t_prev) rho = evolve_lindblad(model, rho, t_prev, t);
    t_prev = t;
    curve.emplace_back(t,
                       std::real(psi0.amps.dot(rho * psi0.amps)));
  }
  return curve;
}

FigureOfMerit figure_of_merit(const LogicalQubit& qubit,
                              const ProtocolConfig& cfg,
                              const std::vector<double>& gamma_taus,
                              int trajectories_per_point) {
  // failure statistics only need the motional factor
  SpaceSpec space;
  space.mode_cutoffs = {cfg.mode_cutoff, cfg.mode_cutoff};
  const CodeSubspaces code = build_code(space, qubit.phi1, qubit.phi2);
  const StateVector psi0 = encode(qubit, code);
  const LindbladModel model = decay_model(space, cfg.gamma);

  FigureOfMerit fom;
  for (double gt : gamma_taus) {
    const double tau = gt / cfg.gamma;
    int failures = 0;
    for (int i = 0; i < trajectories_per_point; ++i) {
      auto rec = run_trajectory(model, psi0, 0.0, tau, cfg.seed,
                                std::uint64_t(i) + (std::uint64_t(1) << 32) *
                                                       fom.gamma_taus.size());
      if (rec.jump_events.size() > 1) {
        ++failures;
        continue;
      }
      StateVector fin = rec.final_state.normalized();
      if (1.0 - subspace_weight(fin, code) > cfg.leakage_tol) ++failures;
    }
    fom.gamma_taus.push_back(gt);
    fom.failure_probabilities.push_back(double(failures) /
                                        trajectories_per_point);
    const double p0 = std::exp(-4.0 * gt);
    fom.dyson_deficits.push_back(1.0 - p0 -
                                 4.0 * p0 * (std::exp(gt) - 1.0));
  }

  // least-squares slope on log-log
  const size_t n = fom.gamma_taus.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = std::log(fom.gamma_taus[i]);
    const double y = std::log(std::max(fom.failure_probabilities[i], 1e-12));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fom.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  const double gt_last = fom.gamma_taus.back();
  const double tau_last = gt_last / cfg.gamma;
  fom.protected_rate = fom.failure_probabilities.back() / tau_last;
  ProtocolConfig base = cfg;
  auto curve = run_unprotected(qubit, base, {tau_last});
  fom.unprotected_rate = (1.0 - curve.front().second) / tau_last;
  fom.suppression_ratio =
      fom.protected_rate > 0.0 ? fom.unprotected_rate / fom.protected_rate
                               : std::numeric_limits<double>::infinity();
  return fom;
}

}  // namespace mqec
