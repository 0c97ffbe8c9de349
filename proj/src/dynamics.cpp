#include "mqec/dynamics.hpp"

#include <cmath>

namespace mqec {

namespace {

using Rhs = std::function<void(double, const Vec&, Vec&)>;

void rk4_step(const Rhs& f, double t, double dt, Vec& x, Vec& k1, Vec& k2,
              Vec& k3, Vec& k4, Vec& tmp) {
  f(t, x, k1);
  tmp = x + (0.5 * dt) * k1;
  f(t + 0.5 * dt, tmp, k2);
  tmp = x + (0.5 * dt) * k2;
  f(t + 0.5 * dt, tmp, k3);
  tmp = x + dt * k3;
  f(t + dt, tmp, k4);
  x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vec integrate(const Rhs& f, Vec x, double t0, double t1, double dt) {
  const double span = t1 - t0;
  if (span <= 0.0) return x;
  int steps = std::max(1, int(std::ceil(span / dt)));
  const double h = span / steps;
  Vec k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
  for (int s = 0; s < steps; ++s)
    rk4_step(f, t0 + s * h, h, x, k1, k2, k3, k4, tmp);
  return x;
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t index) {
  // full-state initialization keeps streams with nearby (seed, index) pairs
  // statistically independent
  std::seed_seq seq{std::uint32_t(master_seed), std::uint32_t(master_seed >> 32),
                    std::uint32_t(index), std::uint32_t(index >> 32)};
  return std::mt19937_64(seq);
}

Mat PulsedHamiltonian::at(double t) const {
  Mat h = constant_part ? constant_part->mat
                        : Mat::Zero(space.dim(), space.dim());
  for (const auto& term : terms) {
    const cplx e = term.envelope(t);
    h += e * term.op.mat;
    if (term.add_adjoint) h += std::conj(e) * term.op.mat.adjoint();
  }
  return h;
}

void PulsedHamiltonian::apply_rhs(double t, const Vec& x, Vec& y) const {
  y.setZero();
  const bool sparse = sparse_ops.size() == terms.size();
  if (constant_part) {
    if (sparse_constant)
      y.noalias() += *sparse_constant * x;
    else
      y.noalias() += constant_part->mat * x;
  }
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& term = terms[i];
    const cplx e = term.envelope(t);
    if (e != cplx(0.0)) {
      if (sparse)
        y.noalias() += e * (sparse_ops[i] * x);
      else
        y.noalias() += e * (term.op.mat * x);
    }
    if (term.add_adjoint) {
      const cplx ec = std::conj(e);
      if (ec != cplx(0.0)) {
        if (sparse)
          y.noalias() += ec * (sparse_adjoints[i] * x);
        else
          y.noalias() += ec * (term.op.mat.adjoint() * x);
      }
    }
  }
  y *= cplx(0.0, -1.0);
}

void PulsedHamiltonian::prepare_sparse() {
  sparse_ops.clear();
  sparse_adjoints.clear();
  for (const auto& term : terms) {
    sparse_ops.emplace_back(term.op.mat.sparseView());
    sparse_adjoints.emplace_back(
        Mat(term.op.mat.adjoint()).sparseView());
  }
  if (constant_part) sparse_constant = constant_part->mat.sparseView();
}

double PulsedHamiltonian::frequency_scale(double t0, double t1) const {
  double nu = 0.0;
  for (int s = 0; s <= 16; ++s) {
    const double t = t0 + (t1 - t0) * s / 16.0;
    nu = std::max(nu, at(t).cwiseAbs().rowwise().sum().maxCoeff());
  }
  return nu;
}

const SpaceSpec& LindbladModel::space() const {
  if (hamiltonian) return hamiltonian->space;
  if (!jumps.empty()) return jumps.front().op.space;
  throw std::invalid_argument("empty Lindblad model");
}

namespace {

double model_frequency(const LindbladModel& model, double t0, double t1) {
  double nu = 0.0;
  if (model.hamiltonian) nu += model.hamiltonian->frequency_scale(t0, t1);
  for (const auto& ch : model.jumps)
    nu += ch.rate * (ch.op.mat.adjoint() * ch.op.mat)
                        .cwiseAbs()
                        .rowwise()
                        .sum()
                        .maxCoeff();
  return nu;
}

double choose_dt(double requested, double nu, double span) {
  if (requested > 0.0) return requested;
  double dt = span / 16.0;
  if (nu > 0.0) dt = std::min(dt, 0.05 / nu);
  return dt;
}

// -(1/2) sum rate * L^dag L : the anti-Hermitian decay part of -i H_eff
Mat decay_part(const LindbladModel& model) {
  const int d = model.space().dim();
  Mat g = Mat::Zero(d, d);
  for (const auto& ch : model.jumps)
    g -= (0.5 * ch.rate) * (ch.op.mat.adjoint() * ch.op.mat);
  return g;
}

}  // namespace

StateVector evolve_schrodinger(const PulsedHamiltonian& h,
                               const StateVector& psi, double t0, double t1,
                               double dt) {
  return evolve_schrodinger_observed(h, psi, t0, t1, dt, nullptr);
}

StateVector evolve_schrodinger_observed(
    const PulsedHamiltonian& h, const StateVector& psi, double t0, double t1,
    double dt, const std::function<void(double, const Vec&)>& observer) {
  if (!(h.space == psi.space))
    throw std::invalid_argument("Hamiltonian/state space mismatch");
  dt = choose_dt(dt, h.frequency_scale(t0, t1), t1 - t0);
  Rhs f = [&h](double t, const Vec& x, Vec& y) { h.apply_rhs(t, x, y); };

  const double span = t1 - t0;
  Vec x = psi.amps;
  if (span > 0.0) {
    int steps = std::max(1, int(std::ceil(span / dt)));
    const double hstep = span / steps;
    Vec k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
    if (observer) observer(t0, x);
    for (int s = 0; s < steps; ++s) {
      rk4_step(f, t0 + s * hstep, hstep, x, k1, k2, k3, k4, tmp);
      if (observer) observer(t0 + (s + 1) * hstep, x);
    }
  }
  const double drift = std::abs(x.norm() - psi.amps.norm());
  if (drift > 1e-6)
    throw std::runtime_error("norm drift beyond 1e-6; step size too large");
  return {psi.space, std::move(x)};
}

StateVector evolve_effective(const LindbladModel& model, const StateVector& psi,
                             double t0, double t1, double dt) {
  if (!(model.space() == psi.space))
    throw std::invalid_argument("model/state space mismatch");
  const Mat g = decay_part(model);
  dt = choose_dt(dt, model_frequency(model, t0, t1), t1 - t0);
  Rhs f = [&](double t, const Vec& x, Vec& y) {
    if (model.hamiltonian) {
      model.hamiltonian->apply_rhs(t, x, y);
      y.noalias() += g * x;
    } else {
      y.noalias() = g * x;
    }
  };
  Vec out = integrate(f, psi.amps, t0, t1, dt);
  return {psi.space, std::move(out)};
}

Mat evolve_lindblad(const LindbladModel& model, const Mat& rho, double t0,
                    double t1, double dt) {
  const int d = model.space().dim();
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("density operator dimension mismatch");
  const double tr0 = std::abs(rho.trace());

  std::vector<Mat> ls, ldls;
  for (const auto& ch : model.jumps) {
    ls.push_back(std::sqrt(ch.rate) * ch.op.mat);
    ldls.push_back(ls.back().adjoint() * ls.back());
  }
  dt = choose_dt(dt, model_frequency(model, t0, t1), t1 - t0);

  // integrate the vectorized density operator
  auto rhs = [&](double t, const Mat& r) -> Mat {
    Mat dr = Mat::Zero(d, d);
    if (model.hamiltonian) {
      const Mat h = model.hamiltonian->at(t);
      dr += cplx(0.0, -1.0) * (h * r - r * h);
    }
    for (size_t m = 0; m < ls.size(); ++m)
      dr += ls[m] * r * ls[m].adjoint() -
            0.5 * (ldls[m] * r + r * ldls[m]);
    return dr;
  };

  const double span = t1 - t0;
  int steps = std::max(1, int(std::ceil(span / dt)));
  const double h = span / steps;
  Mat r = rho;
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    Mat k1 = rhs(t, r);
    Mat k2 = rhs(t + 0.5 * h, r + (0.5 * h) * k1);
    Mat k3 = rhs(t + 0.5 * h, r + (0.5 * h) * k2);
    Mat k4 = rhs(t + h, r + h * k3);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (std::abs(std::abs(r.trace()) - tr0) > 1e-8)
    throw std::runtime_error("master-equation trace drift beyond tolerance");
  return r;
}

TrajectoryRecord run_trajectory(const LindbladModel& model,
                                const StateVector& psi, double t0, double t1,
                                std::uint64_t master_seed,
                                std::uint64_t traj_index,
                                const TrajectoryOptions& opts) {
  if (!(model.space() == psi.space))
    throw std::invalid_argument("model/state space mismatch");
  auto rng = make_stream(master_seed, traj_index);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const Mat g = decay_part(model);
  Rhs f = [&](double t, const Vec& x, Vec& y) {
    if (model.hamiltonian) {
      model.hamiltonian->apply_rhs(t, x, y);
      y.noalias() += g * x;
    } else {
      y.noalias() = g * x;
    }
  };

  const double span = t1 - t0;
  double dt = choose_dt(opts.dt, model_frequency(model, t0, t1), span);
  const double time_tol =
      opts.jump_time_tol > 0.0 ? opts.jump_time_tol : dt * 1e-3;

  TrajectoryRecord rec;
  rec.seed = master_seed;
  Vec x = psi.amps;
  Vec k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
  double t = t0;
  double threshold = unif(rng);

  const int hist = opts.norm_samples;
  double next_sample = hist > 0 ? t0 : t1 + span;

  auto record_norm = [&](double now, double n2) {
    while (hist > 0 && now >= next_sample - 1e-15 && next_sample <= t1) {
      rec.norm_history.push_back(std::sqrt(n2));
      next_sample += span / hist;
    }
  };
  record_norm(t, x.squaredNorm());

  while (t < t1 - 1e-15 * span) {
    const double step = std::min(dt, t1 - t);
    Vec before = x;
    rk4_step(f, t, step, x, k1, k2, k3, k4, tmp);
    if (x.squaredNorm() >= threshold) {
      t += step;
      record_norm(t, x.squaredNorm());
      continue;
    }

    // bisect the jump time against the pre-drawn threshold
    double lo = 0.0, hi = step;
    Vec at_hi = x;
    while (hi - lo > time_tol) {
      const double mid = 0.5 * (lo + hi);
      Vec probe = before;
      rk4_step(f, t, mid, probe, k1, k2, k3, k4, tmp);
      if (probe.squaredNorm() >= threshold) {
        lo = mid;
      } else {
        hi = mid;
        at_hi = probe;
      }
    }
    const double t_jump = t + hi;

    // select the jump channel with probability ~ rate * |L psi|^2
    std::vector<double> weights(model.jumps.size());
    double total = 0.0;
    for (size_t m = 0; m < model.jumps.size(); ++m) {
      weights[m] = model.jumps[m].rate *
                   (model.jumps[m].op.mat * at_hi).squaredNorm();
      total += weights[m];
    }
    if (total <= 0.0) {
      // state annihilated by all channels: record and continue without jump
      x = at_hi;
      t = t_jump;
      threshold = unif(rng) * x.squaredNorm();
      continue;
    }
    double pick = unif(rng) * total;
    size_t channel = 0;
    for (; channel + 1 < weights.size(); ++channel) {
      if (pick < weights[channel]) break;
      pick -= weights[channel];
    }
    x = model.jumps[channel].op.mat * at_hi;
    x /= x.norm();
    rec.jump_events.emplace_back(t_jump, int(channel));
    t = t_jump;
    threshold = unif(rng);
    record_norm(t, x.squaredNorm());
  }

  rec.final_state = StateVector{psi.space, std::move(x)};
  return rec;
}

EnsembleResult ensemble(const LindbladModel& model, const StateVector& psi,
                        double t0, double t1, std::uint64_t master_seed,
                        int n_trajectories, const TrajectoryOptions& opts) {
  EnsembleResult out;
  const int d = psi.space.dim();
  out.average_density = Mat::Zero(d, d);
  out.records.reserve(n_trajectories);
  for (int i = 0; i < n_trajectories; ++i) {
    auto rec = run_trajectory(model, psi, t0, t1, master_seed, i, opts);
    Vec v = rec.final_state.amps.normalized();
    out.average_density.noalias() += v * v.adjoint();
    out.records.push_back(std::move(rec));
  }
  out.average_density /= double(n_trajectories);
  return out;
}

double trace_distance(const Mat& rho1, const Mat& rho2) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho1 - rho2,
                                        Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Mat density_of(const StateVector& psi) {
  return psi.amps * psi.amps.adjoint();
}

LindbladModel thermal_two_mode_model(const SpaceSpec& space, double gamma,
                                     double n_bar) {
  LindbladModel model;
  for (int m = 0; m < space.num_modes(); ++m) {
    model.jumps.push_back(
        {ladder(space, m, LadderKind::Lower), gamma * (n_bar + 1.0)});
    if (n_bar > 0.0)
      model.jumps.push_back(
          {ladder(space, m, LadderKind::Raise), gamma * n_bar});
  }
  return model;
}

}  // namespace mqec
