#include "mqec/restore.hpp"

#include <cmath>

namespace mqec {

namespace {

struct Occupation {
  int nx, ny, lvl;
};

/// Enumerate nonzero amplitudes of a two-mode x electronic state.
void for_each_component(const StateVector& psi,
                        const std::function<void(const Occupation&, int,
                                                 cplx)>& fn) {
  const SpaceSpec& s = psi.space;
  for (int nx = 0; nx <= s.mode_cutoffs[0]; ++nx)
    for (int ny = 0; ny <= s.mode_cutoffs[1]; ++ny)
      for (int lvl = 0; lvl < s.electronic_levels; ++lvl) {
        const int idx = s.index({nx, ny}, lvl);
        if (psi.amps[idx] != cplx(0.0))
          fn({nx, ny, lvl}, idx, psi.amps[idx]);
      }
}

void require_three_levels(const SpaceSpec& space) {
  if (space.num_modes() != 2 || space.electronic_levels < 3 ||
      space.has_cavity())
    throw std::invalid_argument(
        "restoration needs a two-mode x three-level electronic space");
}

/// STIRAP pulse pair in counter-intuitive order: the Stokes pulse starts at
/// t = 0 and the pump is delayed by stokes_advance * T.  The envelope is
/// sin^2.8(pi t / T): with the default T/3 delay this exponent puts the
/// dark-state rotation where both pulses are strong, which maximizes the
/// worst-case transfer across vibrational quantum numbers at small area.
std::pair<PulseShape, PulseShape> stirap_pair(const RestorePlan& plan,
                                              double stokes_phase) {
  constexpr int kSamples = 801;
  constexpr double kExponent = 2.8;
  std::vector<double> env(kSamples);
  double integral = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    env[i] = std::pow(std::sin(kPi * double(i) / (kSamples - 1)), kExponent);
    if (i > 0)
      integral += 0.5 * (env[i - 1] + env[i]) *
                  (plan.stage_duration / (kSamples - 1));
  }
  const double peak = plan.stirap_area / integral;
  PulseShape pump{PulseShape::Kind::Samples, plan.stage_duration, peak,
                  0.0, plan.stokes_advance * plan.stage_duration, env};
  PulseShape stokes{PulseShape::Kind::Samples, plan.stage_duration, peak,
                    stokes_phase, 0.0, env};
  return {pump, stokes};
}

struct DarkComponent {
  int idx_a, idx_b;       // basis indices of the |a> and |b> legs
  double weight_a, weight_b;  // ladder matrix elements multiplying g_b, g_a
};

/// Track excited-state population and dark-subspace overlap during a STIRAP
/// stage.  Components of the initial state that the Hamiltonian annihilates
/// count toward the overlap with unit weight.
class StirapMonitor {
 public:
  StirapMonitor(std::vector<DarkComponent> components,
                const PulseShape& pump, const PulseShape& stokes,
                std::vector<int> c_indices, double inert_weight)
      : components_(std::move(components)),
        pump_(pump),
        stokes_(stokes),
        c_indices_(std::move(c_indices)),
        inert_weight_(inert_weight) {}

  void operator()(double t, const Vec& x) {
    double pc = 0.0;
    for (int idx : c_indices_) pc += std::norm(x[idx]);
    diag.max_c_population = std::max(diag.max_c_population, pc);

    const cplx ga = pump_.value(t);
    const cplx gb = stokes_.value(t);
    if (std::abs(ga) + std::abs(gb) < 1e-6 * pump_.peak) return;
    double overlap = inert_weight_;
    for (const auto& comp : components_) {
      const cplx alpha = std::conj(gb) * comp.weight_b;
      const cplx beta = std::conj(ga) * comp.weight_a;
      const double n2 = std::norm(alpha) + std::norm(beta);
      const cplx amp =
          std::conj(alpha) * x[comp.idx_a] - std::conj(beta) * x[comp.idx_b];
      overlap += std::norm(amp) / n2;
    }
    diag.min_dark_overlap = std::min(diag.min_dark_overlap, overlap);
  }

  StageDiagnostics diag;

 private:
  std::vector<DarkComponent> components_;
  PulseShape pump_, stokes_;
  std::vector<int> c_indices_;
  double inert_weight_;
};

std::vector<int> excited_indices(const SpaceSpec& s) {
  std::vector<int> out;
  for (int nx = 0; nx <= s.mode_cutoffs[0]; ++nx)
    for (int ny = 0; ny <= s.mode_cutoffs[1]; ++ny)
      out.push_back(s.index({nx, ny}, int(Level::c)));
  return out;
}

double ladder_product(int n, int k) {  // sqrt((n+k)! / n!)
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r *= double(n + j);
  return std::sqrt(r);
}

}  // namespace

StateVector add_quantum(const StateVector& state, Axis axis,
                        const RestorePlan& plan, StageDiagnostics* diag) {
  const SpaceSpec& s = state.space;
  require_three_levels(s);
  const int mode = int(axis);

  if (plan.mode == StageMode::Ideal) {
    StateVector out{s, Vec::Zero(s.dim())};
    for_each_component(state, [&](const Occupation& occ, int idx, cplx amp) {
      if (occ.lvl == int(Level::a)) {
        const int n = mode == 0 ? occ.nx : occ.ny;
        if (n >= s.mode_cutoffs[mode])
          throw std::runtime_error("add_quantum would exceed the cutoff");
        const int nx = occ.nx + (mode == 0 ? 1 : 0);
        const int ny = occ.ny + (mode == 1 ? 1 : 0);
        out.amps[s.index({nx, ny}, int(Level::b))] += amp;
      } else {
        out.amps[idx] += amp;
      }
    });
    return out;
  }

  auto [pump, stokes] = stirap_pair(plan, 0.0);
  PulsedHamiltonian h = build_lambda_add(s, axis, pump, stokes);
  h.prepare_sparse();

  std::vector<DarkComponent> comps;
  double inert = 0.0;
  for_each_component(state, [&](const Occupation& occ, int idx, cplx amp) {
    if (occ.lvl == int(Level::a)) {
      const int n = mode == 0 ? occ.nx : occ.ny;
      if (n >= s.mode_cutoffs[mode]) {
        // truncation-edge residual from an earlier imperfect stage; not a
        // trackable dark component
        inert += std::norm(amp);
        return;
      }
      const int nx = occ.nx + (mode == 0 ? 1 : 0);
      const int ny = occ.ny + (mode == 1 ? 1 : 0);
      comps.push_back({idx, s.index({nx, ny}, int(Level::b)),
                       1.0, std::sqrt(double(n + 1))});
    } else {
      inert += std::norm(amp);
    }
  });
  StirapMonitor monitor(std::move(comps), pump, stokes, excited_indices(s),
                        inert);

  const double t1 = plan.stage_duration * (1.0 + plan.stokes_advance);
  StateVector out = evolve_schrodinger_observed(h, state, 0.0, t1, 0.0,
                                                std::ref(monitor));
  monitor.diag.adiabaticity_ok = plan.stirap_area >= 10.0;
  if (diag) *diag = monitor.diag;
  // STIRAP through the dark state produces the transferred components with
  // an overall minus sign; remove it so both modes implement the same map
  out.amps = -out.amps;
  return out;
}

StateVector split(const StateVector& state, Axis axis,
                  const RestorePlan& plan) {
  const SpaceSpec& s = state.space;
  require_three_levels(s);
  const int first = int(axis);

  if (plan.mode == StageMode::Ideal) {
    StateVector out{s, Vec::Zero(s.dim())};
    for_each_component(state, [&](const Occupation& occ, int idx, cplx amp) {
      const int diff = first == 0 ? occ.nx - occ.ny : occ.ny - occ.nx;
      const double theta = kPi / 16.0 * diff;
      const int ia = s.index({occ.nx, occ.ny}, int(Level::a));
      const int ib = s.index({occ.nx, occ.ny}, int(Level::b));
      if (occ.lvl == int(Level::a)) {
        out.amps[ia] += std::cos(theta) * amp;
        out.amps[ib] += -std::sin(theta) * amp;
      } else if (occ.lvl == int(Level::b)) {
        out.amps[ib] += std::cos(theta) * amp;
        out.amps[ia] += std::sin(theta) * amp;
      } else {
        out.amps[idx] += amp;
      }
    });
    return out;
  }

  // area |g| A = pi/16 with A = integral f^2 dt = 3T/8
  const double g_peak = kPi / (6.0 * plan.stage_duration);
  PulseShape shape{PulseShape::Kind::SinSquared, plan.stage_duration, 0.0,
                   0.0, 0.0, {}};
  PulsedHamiltonian h = build_split(s, g_peak, shape, axis);
  h.prepare_sparse();
  return evolve_schrodinger(h, state, 0.0, plan.stage_duration);
}

StateVector recombine(const StateVector& state, Axis axis,
                      const RestorePlan& plan, StageDiagnostics* diag) {
  const SpaceSpec& s = state.space;
  require_three_levels(s);
  const int from = int(axis);
  const int to = 1 - from;

  if (plan.mode == StageMode::Ideal) {
    StateVector out{s, Vec::Zero(s.dim())};
    for_each_component(state, [&](const Occupation& occ, int idx, cplx amp) {
      if (occ.lvl == int(Level::a)) {
        const int n_from = from == 0 ? occ.nx : occ.ny;
        const int n_to = from == 0 ? occ.ny : occ.nx;
        if (n_from < 4)
          throw std::runtime_error(
              "recombine input has |a> population below the fourth sideband");
        if (n_to + 4 > s.mode_cutoffs[to])
          throw std::runtime_error("recombine would exceed the cutoff");
        const int nx = from == 0 ? occ.nx - 4 : occ.nx + 4;
        const int ny = from == 0 ? occ.ny + 4 : occ.ny - 4;
        out.amps[s.index({nx, ny}, int(Level::b))] += amp;
      } else {
        out.amps[idx] += amp;
      }
    });
    return out;
  }

  auto [pump, stokes] = stirap_pair(plan, plan.recombine_phase_offset);
  PulsedHamiltonian h = build_lambda_combine(s, axis, pump, stokes);
  h.prepare_sparse();

  std::vector<DarkComponent> comps;
  double inert = 0.0;
  for_each_component(state, [&](const Occupation& occ, int idx, cplx amp) {
    if (occ.lvl == int(Level::a)) {
      const int n_from = from == 0 ? occ.nx : occ.ny;
      const int n_to = from == 0 ? occ.ny : occ.nx;
      if (n_from < 4 || n_to + 4 > s.mode_cutoffs[to]) {
        // annihilated by the fourth-power ladder (or truncation-edge
        // residual from an earlier imperfect stage): not transferred
        inert += std::norm(amp);
        return;
      }
      const int nx = from == 0 ? occ.nx - 4 : occ.nx + 4;
      const int ny = from == 0 ? occ.ny + 4 : occ.ny - 4;
      comps.push_back({idx, s.index({nx, ny}, int(Level::b)),
                       ladder_product(n_from - 4, 4),
                       ladder_product(n_to, 4)});
    } else {
      inert += std::norm(amp);
    }
  });
  StirapMonitor monitor(std::move(comps), pump, stokes, excited_indices(s),
                        inert);

  const double t1 = plan.stage_duration * (1.0 + plan.stokes_advance);
  StateVector out = evolve_schrodinger_observed(h, state, 0.0, t1, 0.0,
                                                std::ref(monitor));
  monitor.diag.adiabaticity_ok = plan.stirap_area >= 10.0;
  if (diag) *diag = monitor.diag;
  return out;
}

StateVector restore(const StateVector& state, const SyndromeOutcome& outcome,
                    const RestorePlan& plan, StageDiagnostics* diag) {
  if (!outcome.x_jump && !outcome.y_jump) return state;
  if (outcome.x_jump && outcome.y_jump)
    throw std::invalid_argument("both jump flags set in one cycle");
  const Axis axis = outcome.x_jump ? Axis::X : Axis::Y;

  StageDiagnostics d1, d3;
  StateVector s1 = add_quantum(state, axis, plan, &d1);
  StateVector s2 = split(s1, axis, plan);
  StateVector s3 = recombine(s2, axis, plan, &d3);
  if (diag) {
    diag->max_c_population = std::max(d1.max_c_population,
                                      d3.max_c_population);
    diag->min_dark_overlap = std::min(d1.min_dark_overlap,
                                      d3.min_dark_overlap);
    diag->adiabaticity_ok = d1.adiabaticity_ok && d3.adiabaticity_ok;
  }
  return s3;
}

StateVector reset_electronic(const StateVector& state) {
  const SpaceSpec& s = state.space;
  double pop_a = 0.0, pop_b = 0.0;
  for_each_component(state, [&](const Occupation& occ, int, cplx amp) {
    if (occ.lvl == int(Level::a)) pop_a += std::norm(amp);
    else if (occ.lvl == int(Level::b)) pop_b += std::norm(amp);
  });
  if (pop_b == 0.0) return state;
  // The reset is part of the electronic readout: it projects onto the
  // dominant outcome and pumps |b> back to |a>.  A balanced superposition of
  // the two outcomes cannot be deterministically reset; small residuals in
  // the other level (imperfect adiabatic stages) are projected away.
  if (std::min(pop_a, pop_b) > 1e-2 * (pop_a + pop_b))
    throw std::runtime_error(
        "electronic reset with occupied |a> component");
  StateVector out{s, Vec::Zero(s.dim())};
  const bool keep_b = pop_b >= pop_a;
  for_each_component(state, [&](const Occupation& occ, int idx, cplx amp) {
    if (keep_b && occ.lvl == int(Level::b))
      out.amps[s.index({occ.nx, occ.ny}, int(Level::a))] += amp;
    else if (!keep_b && occ.lvl == int(Level::a))
      out.amps[idx] += amp;
  });
  out.amps /= std::sqrt(keep_b ? pop_b : pop_a);
  return out;
}

}  // namespace mqec
