#include "mqec/raman.hpp"

#include <cmath>

namespace mqec {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

Mat factor_lower(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

/// a^dag^m a^n on the Fock factor of one mode, embedded in the full space.
LinearOperator mode_monomial(const SpaceSpec& space, int mode, int m, int n) {
  const int d = space.mode_cutoffs[mode] + 1;
  const Mat a = factor_lower(d);
  Mat op = Mat::Identity(d, d);
  for (int k = 0; k < n; ++k) op = a * op;
  for (int k = 0; k < m; ++k) op = a.adjoint() * op;
  return tensor_embed(op, space, {Factor::Kind::Mode, mode});
}

cplx ipow_neg(int k) {  // (-i)^k
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

Envelope squared_pulse(const PulseShape& shape, cplx scale) {
  return [shape, scale](double t) {
    const double f = shape.envelope(t);
    return scale * shape.peak * f * f * std::exp(cplx(0.0, shape.phase));
  };
}

}  // namespace

double PulseShape::envelope(double t) const {
  const double s = t - delay;
  if (s < 0.0 || s > duration) return 0.0;
  switch (kind) {
    case Kind::Flat:
      return 1.0;
    case Kind::SinSquared: {
      const double u = std::sin(kPi * s / duration);
      return u * u;
    }
    case Kind::Samples: {
      if (samples.size() < 2) throw std::invalid_argument("too few samples");
      const double pos = s / duration * (samples.size() - 1);
      const size_t i = std::min(size_t(pos), samples.size() - 2);
      const double w = pos - double(i);
      return (1.0 - w) * samples[i] + w * samples[i + 1];
    }
  }
  return 0.0;
}

cplx PulseShape::value(double t) const {
  return peak * envelope(t) * std::exp(cplx(0.0, phase));
}

double pulse_area(const PulseShape& shape, int power) {
  if (power < 1) throw std::invalid_argument("pulse_area power must be >= 1");
  if (shape.duration <= 0.0) throw std::invalid_argument("empty pulse");
  switch (shape.kind) {
    case PulseShape::Kind::Flat:
      return shape.duration;
    case PulseShape::Kind::SinSquared:
      if (power == 1) return shape.duration / 2.0;
      if (power == 2) return 3.0 * shape.duration / 8.0;
      break;
    case PulseShape::Kind::Samples:
      break;
  }
  // composite Simpson on a fine grid (handles samples and higher powers)
  const int n = 4096;  // even
  const double h = shape.duration / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double f = std::pow(shape.envelope(shape.delay + i * h), power);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / 3.0;
}

PulsedHamiltonian build_full_raman(const SpaceSpec& space,
                                   const RamanConfig& cfg,
                                   const TrapConfig& trap,
                                   const PulseShape& shape, int order) {
  if (space.electronic_levels < 2)
    throw std::invalid_argument("electronic factor required");
  PulsedHamiltonian h;
  h.space = space;
  const auto flip = electronic_op(space, Level::a, Level::b);

  const bool aligned = cfg.alignment != RamanConfig::Alignment::None;
  const int mode = cfg.alignment == RamanConfig::Alignment::Y ? 1 : 0;
  const double eta =
      cfg.alignment == RamanConfig::Alignment::Y ? cfg.eta_y : cfg.eta_x;
  const double nu = mode == 1 ? trap.nu_y : trap.nu_x;
  const double dw = aligned ? std::exp(-eta * eta / 2.0) : 1.0;

  if (!aligned || eta == 0.0) {
    HamTerm term{flip * cplx(-dw), squared_pulse(shape, 1.0), true};
    h.terms.push_back(std::move(term));
    return h;
  }

  for (int m = 0; m + 0 <= order; ++m)
    for (int n = 0; m + n <= order; ++n) {
      const cplx coeff = -dw * ipow_neg(m + n) * std::pow(eta, m + n) /
                         (factorial(m) * factorial(n));
      LinearOperator op = mode_monomial(space, mode, m, n) * flip * coeff;
      const double det = nu * (n - m);
      Envelope env = [shape, det](double t) {
        const double f = shape.envelope(t);
        return shape.peak * f * f *
               std::exp(cplx(0.0, shape.phase - det * t));
      };
      h.terms.push_back({std::move(op), std::move(env), true});
    }
  return h;
}

double rwa_diagonal(double eta, int n, int order) {
  double sum = 0.0;
  for (int k = 0; 2 * k <= order && k <= n; ++k) {
    const double fk = factorial(k);
    sum += std::pow(-eta * eta, k) * factorial(n) /
           (fk * fk * factorial(n - k));
  }
  return std::exp(-eta * eta / 2.0) * sum;
}

PulsedHamiltonian build_rwa_raman(const SpaceSpec& space, double eta,
                                  const PulseShape& shape, Axis axis,
                                  int order) {
  if (space.electronic_levels < 2)
    throw std::invalid_argument("electronic factor required");
  const int mode = int(axis);
  const int d = space.mode_cutoffs[mode] + 1;
  Mat diag = Mat::Zero(d, d);
  for (int n = 0; n < d; ++n) diag(n, n) = rwa_diagonal(eta, n, order);
  LinearOperator motional = tensor_embed(diag, space, {Factor::Kind::Mode,
                                                       mode});
  LinearOperator op =
      motional * electronic_op(space, Level::a, Level::b) * cplx(-1.0);

  PulsedHamiltonian h;
  h.space = space;
  h.terms.push_back({std::move(op), squared_pulse(shape, 1.0), true});
  return h;
}

NumberSensitive build_number_sensitive(const SpaceSpec& space, double eta,
                                       double g1_peak, const PulseShape& shape,
                                       Axis axis, int order) {
  NumberSensitive result;
  result.g_eff = eta * eta * std::exp(-eta * eta / 2.0) * g1_peak;

  const auto flip = electronic_op(space, Level::a, Level::b);
  const auto n_j = number_op(space, int(axis));

  // idealized: +g(t) n_j |a><b| + H.c. with g = i|g| (paper phase choice)
  PulseShape eff = shape;
  eff.peak = result.g_eff;
  result.ideal.space = space;
  result.ideal.terms.push_back(
      {n_j * flip, squared_pulse(eff, cplx(0.0, 1.0)), true});

  // composite: full RWA series of pair 1 (phase i) plus the carrier-cancelling
  // co-propagating pair 2 with g2(t) = -e^{-eta^2/2} g1(t)
  PulseShape pair1 = shape;
  pair1.peak = g1_peak;
  result.composite = build_rwa_raman(space, eta, pair1, axis, order);
  for (auto& term : result.composite.terms) {
    Envelope base = term.envelope;
    term.envelope = [base](double t) { return cplx(0.0, 1.0) * base(t); };
  }
  const double dw = std::exp(-eta * eta / 2.0);
  result.composite.terms.push_back(
      {flip * cplx(dw), squared_pulse(pair1, cplx(0.0, 1.0)), true});
  return result;
}

PulsedHamiltonian build_split(const SpaceSpec& space, double g_peak,
                              const PulseShape& shape, Axis axis) {
  const int first = int(axis);
  const auto op = (number_op(space, first) - number_op(space, 1 - first)) *
                  electronic_op(space, Level::a, Level::b);
  PulseShape eff = shape;
  eff.peak = g_peak;
  PulsedHamiltonian h;
  h.space = space;
  h.terms.push_back({op, squared_pulse(eff, cplx(0.0, 1.0)), true});
  return h;
}

SidebandJCM build_sideband_jcm(const SpaceSpec& space, Level leg, Axis axis,
                               int kappa, double eta, double g_tilde_peak,
                               const PulseShape& shape, int order) {
  if (kappa < 1) throw std::invalid_argument("sideband order must be >= 1");
  if (space.electronic_levels < 3)
    throw std::invalid_argument("three electronic levels required");
  const int mode = int(axis);
  if (space.mode_cutoffs[mode] < kappa)
    throw std::invalid_argument("cutoff too small for sideband order");

  const double dw = std::exp(-eta * eta / 2.0);
  const auto dip = electronic_op(space, leg, Level::c);
  PulseShape drive = shape;
  drive.peak = g_tilde_peak;
  auto linear_pulse = [](const PulseShape& s, cplx scale) {
    return Envelope([s, scale](double t) {
      return scale * s.peak * s.envelope(t) * std::exp(cplx(0.0, s.phase));
    });
  };

  SidebandJCM result;
  result.g_eff = g_tilde_peak * dw * ipow_neg(kappa) * std::pow(eta, kappa) /
                 factorial(kappa);

  result.full.space = space;
  for (int n = 0; 2 * n + kappa <= order + kappa; ++n) {
    const cplx coeff = -dw * ipow_neg(2 * n + kappa) *
                       std::pow(eta, 2 * n + kappa) /
                       (factorial(n) * factorial(n + kappa));
    LinearOperator op = mode_monomial(space, mode, n + kappa, n) * dip * coeff;
    result.full.terms.push_back({std::move(op), linear_pulse(drive, 1.0),
                                 true});
  }

  result.leading.space = space;
  LinearOperator lead = mode_monomial(space, mode, kappa, 0) * dip *
                        (-dw * ipow_neg(kappa) * std::pow(eta, kappa) /
                         factorial(kappa));
  result.leading.terms.push_back({std::move(lead), linear_pulse(drive, 1.0),
                                  true});
  return result;
}

PulsedHamiltonian build_lambda_add(const SpaceSpec& space, Axis axis,
                                   const PulseShape& pump,
                                   const PulseShape& stokes) {
  if (space.electronic_levels < 3)
    throw std::invalid_argument("three electronic levels required");
  PulsedHamiltonian h;
  h.space = space;
  LinearOperator pump_op = electronic_op(space, Level::a, Level::c) *
                           cplx(-1.0);
  LinearOperator stokes_op = mode_monomial(space, int(axis), 1, 0) *
                             electronic_op(space, Level::b, Level::c) *
                             cplx(-1.0);
  h.terms.push_back({std::move(pump_op),
                     [pump](double t) { return pump.value(t); }, true});
  h.terms.push_back({std::move(stokes_op),
                     [stokes](double t) { return stokes.value(t); }, true});
  return h;
}

PulsedHamiltonian build_lambda_combine(const SpaceSpec& space, Axis from,
                                       const PulseShape& pump,
                                       const PulseShape& stokes) {
  if (space.electronic_levels < 3)
    throw std::invalid_argument("three electronic levels required");
  const int to = 1 - int(from);
  PulsedHamiltonian h;
  h.space = space;
  LinearOperator pump_op = mode_monomial(space, int(from), 4, 0) *
                           electronic_op(space, Level::a, Level::c) *
                           cplx(-1.0);
  LinearOperator stokes_op = mode_monomial(space, to, 4, 0) *
                             electronic_op(space, Level::b, Level::c) *
                             cplx(-1.0);
  h.terms.push_back({std::move(pump_op),
                     [pump](double t) { return pump.value(t); }, true});
  h.terms.push_back({std::move(stokes_op),
                     [stokes](double t) { return stokes.value(t); }, true});
  return h;
}

double stark_shift_peak(double g_i_peak, double delta) {
  return 2.0 * g_i_peak * g_i_peak / delta;
}

std::vector<TimescaleRow> timescale_report(const PhysicalPreset& p) {
  const double two_pi = 2.0 * kPi;
  std::vector<TimescaleRow> rows;
  auto add = [&rows](std::string name, double computed, double quoted,
                     std::string unit) {
    rows.push_back({std::move(name), computed, quoted,
                    std::abs(computed - quoted) / std::abs(quoted),
                    std::move(unit)});
  };

  const double g = p.eta * p.eta * std::exp(-p.eta * p.eta / 2.0) * p.g1;
  add("number_sensitive_coupling_over_2pi", g / two_pi, 20e3, "Hz");

  const double t_syndrome = 4.0 * kPi / (3.0 * g);
  add("syndrome_pulse_duration", t_syndrome, 33e-6, "s");

  const double g_cav = p.g_C * p.g_L / p.delta;
  const double threshold = 4.0 * p.kappa / (3.0 * g_cav * g_cav);
  add("readout_threshold_duration", threshold, 16e-6, "s");

  const double t100 = 100e-6;
  const double p_photon =
      1.0 - std::exp(-2.0 * g_cav * g_cav * (3.0 * t100 / 8.0) / p.kappa);
  add("photon_probability_100us", p_photon, 0.998, "1");

  const double g_ab = p.g_tilde * std::exp(-p.eta * p.eta / 2.0) *
                      std::pow(p.eta, 4) / 24.0;
  add("fourth_sideband_coupling_over_2pi", g_ab / two_pi, 1e3, "Hz");

  add("adiabatic_bound_duration", 2.0 / g_ab, 320e-6, "s");

  add("rwa_ratio", p.eta * p.g1 / p.nu, 1e-2, "1");
  return rows;
}

}  // namespace mqec
