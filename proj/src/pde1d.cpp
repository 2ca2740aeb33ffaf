#include "swarmgrad/pde1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swarmgrad/numerics.hpp"

namespace swarmgrad {

GridDensity uniform_density(int n, double L) {
  GridDensity d;
  d.n = n;
  d.L = L;
  d.t = 0.0;
  d.rho.assign(n, 1.0);
  return d;
}

Pde1dSolver::Pde1dSolver(PotentialSpec spec, Landscape landscape, int n)
    : spec_(std::move(spec)), landscape_(std::move(landscape)), n_(n) {
  if (n_ < 16) throw std::invalid_argument("pde1d: n must be >= 16");
  if (landscape_.dim != 1) throw std::invalid_argument("pde1d: d = 1 only");
  dx_ = landscape_.period / n_;
  const auto xs = grid_centers(n_, landscape_.period);
  u_.resize(n_);
  for (int i = 0; i < n_; ++i) u_[i] = landscape_.u1(xs[i]);
  du_face_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    du_face_[i] = u_[(i + 1) % n_] - u_[i];
    max_abs_du_ = std::max(max_abs_du_, std::abs(du_face_[i]));
  }
  g_.resize(n_);
  phi2_.resize(n_);
  w_tot_.resize(n_);
  face_rho_.resize(n_);
  flux_.resize(n_);
  lower_.resize(n_);
  diag_.resize(n_);
  upper_.resize(n_);
  rhs_.resize(n_);
}

void Pde1dSolver::compute_fluxes(const GridDensity& state, double beta) {
  const auto& rho = state.rho;
  for (int i = 0; i < n_; ++i) {
    g_[i] = spec_.phi_prime(rho[i]);
    phi2_[i] = spec_.phi_second(rho[i]);
  }
  for (int i = 0; i < n_; ++i) {
    const int ip = (i + 1) % n_;
    const double w = -(beta * du_face_[i] + (g_[ip] - g_[i])) / dx_;
    w_tot_[i] = w;
    face_rho_[i] = w > 0.0 ? rho[i] : rho[ip];
    flux_[i] = face_rho_[i] * w;
  }
}

void Pde1dSolver::step(GridDensity& state, double beta, double dt,
                       StepMethod method, double floor_eps,
                       PdeRunStats* stats) {
  if (state.n != n_) throw std::invalid_argument("pde1d: grid mismatch");
  if (!(dt > 0.0)) throw std::invalid_argument("pde1d: dt must be > 0");
  auto& rho = state.rho;

  compute_fluxes(state, beta);

  if (method == StepMethod::explicit_euler) {
    const double r = dt / dx_;
    for (int i = 0; i < n_; ++i)
      rhs_[i] = rho[i] - r * (flux_[i] - flux_[(i + n_ - 1) % n_]);
    std::swap(rho, rhs_);
  } else {
    // One Newton step of backward Euler: (I + dt dDiv) delta = -dt div F.
    // Face Jacobian wrt (rho_i, rho_{i+1}):
    //   dF/drho_i    = [up = i] w + face_rho phi''_i / dx
    //   dF/drho_{i+1}= [up = i+1] w - face_rho phi''_{i+1} / dx
    const double r = dt / dx_;
    for (int i = 0; i < n_; ++i) {
      const int ip = (i + 1) % n_;
      const int im = (i + n_ - 1) % n_;
      const double wR = w_tot_[i], wL = w_tot_[im];
      const double fR = face_rho_[i], fL = face_rho_[im];
      double diag = 1.0;
      double up = 0.0, lo = 0.0;
      // face R enters row i with +dF_R, face L with -dF_L
      diag += r * ((wR > 0.0 ? wR : 0.0) + fR * phi2_[i] / dx_);
      up += r * ((wR > 0.0 ? 0.0 : wR) - fR * phi2_[ip] / dx_);
      diag -= r * ((wL > 0.0 ? 0.0 : wL) - fL * phi2_[i] / dx_);
      lo -= r * ((wL > 0.0 ? wL : 0.0) + fL * phi2_[im] / dx_);
      diag_[i] = diag;
      upper_[i] = up;
      lower_[i] = lo;
      rhs_[i] = -r * (flux_[i] - flux_[im]);
    }
    solve_periodic_tridiagonal(lower_, diag_, upper_, rhs_);
    for (int i = 0; i < n_; ++i) rho[i] += rhs_[i];
  }

  // positivity floor and sanity scan
  long hits = 0;
  double mean = 0.0;
  bool finite = true;
  for (int i = 0; i < n_; ++i) {
    if (!std::isfinite(rho[i])) finite = false;
    if (rho[i] < floor_eps) {
      rho[i] = floor_eps;
      ++hits;
    }
    mean += rho[i];
  }
  mean /= n_;
  if (!finite || !(mean > 0.5 && mean < 2.0))
    throw NumericalAbort("pde1d: state lost positivity or finiteness at t=" +
                         format_double(state.t) +
                         " (reduce dt or refine the grid)");
  if (hits > 0)
    for (int i = 0; i < n_; ++i) rho[i] /= mean;
  if (stats) {
    stats->floor_hits += hits;
    stats->max_mass_drift =
        std::max(stats->max_mass_drift, std::abs(mean - 1.0));
  }
  state.t += dt;
}

double Pde1dSolver::suggest_dt(const GridDensity& state, double beta,
                               double safety) const {
  double v_max = beta * max_abs_du_ / dx_;
  double d_max = 0.0;
  for (int i = 0; i < n_; ++i)
    d_max = std::max(d_max, state.rho[i] * spec_.phi_second(state.rho[i]));
  double dt = std::numeric_limits<double>::infinity();
  if (v_max > 0.0) dt = std::min(dt, dx_ / v_max);
  if (d_max > 0.0) dt = std::min(dt, dx_ * dx_ / (2.0 * d_max));
  return safety * dt;
}

double Pde1dSolver::advective_dt(double beta, double safety) const {
  const double v_max = beta * max_abs_du_ / dx_;
  if (v_max <= 0.0) return safety * dx_;  // pure diffusion: dt is an accuracy
                                          // choice for the implicit method
  return safety * dx_ / v_max;
}

PdeSnapshot Pde1dSolver::snapshot(
    const GridDensity& state, double beta,
    std::optional<StationaryMeasure>& mu_cache) const {
  if (!mu_cache || mu_cache->beta != beta)
    mu_cache = solve_stationary(spec_, landscape_, beta, n_);
  const auto& mu = *mu_cache;
  const auto& rho = state.rho;

  PdeSnapshot s;
  s.t = state.t;
  s.beta = beta;
  double cost_rho = 0.0, cost_mu = 0.0, mean_u = 0.0, l1 = 0.0, prod = 0.0;
  std::vector<double> g(n_);
  for (int i = 0; i < n_; ++i) {
    cost_rho += beta * u_[i] * rho[i] + spec_.phi(rho[i]);
    cost_mu += beta * u_[i] * mu.values[i] + spec_.phi(mu.values[i]);
    mean_u += u_[i] * rho[i];
    l1 += std::abs(rho[i] - mu.values[i]);
    g[i] = spec_.phi_prime(rho[i]) - spec_.phi_prime(mu.values[i]);
  }
  for (int i = 0; i < n_; ++i) {
    const double dg =
        (g[(i + 1) % n_] - g[(i + n_ - 1) % n_]) / (2.0 * dx_);
    prod += rho[i] * dg * dg;
  }
  s.energy = (cost_rho - cost_mu) / n_;
  s.production = prod / n_;
  s.mean_u = mean_u / n_;
  s.l1_to_stationary = l1 / n_;
  return s;
}

std::vector<PdeSnapshot> Pde1dSolver::evolve(GridDensity& state,
                                             const Schedule& schedule,
                                             double t_end,
                                             const EvolveOptions& opts,
                                             PdeRunStats* stats) {
  if (!(t_end > state.t))
    throw std::invalid_argument("pde1d: t_end must exceed the current time");
  const bool fixed_beta = schedule.kind == Schedule::Kind::constant;
  if (opts.track_energy_every_step && !fixed_beta)
    throw std::invalid_argument(
        "pde1d: per-step energy tracking requires a constant schedule");

  std::optional<StationaryMeasure> mu_cache;
  std::vector<PdeSnapshot> out;
  out.push_back(snapshot(state, schedule.beta_at(state.t), mu_cache));

  PdeRunStats local_stats;
  PdeRunStats* st = stats ? stats : &local_stats;

  double cost_mu_fixed = 0.0;
  auto energy_fixed = [&](double beta) {
    double c = 0.0;
    for (int i = 0; i < n_; ++i)
      c += beta * u_[i] * state.rho[i] + spec_.phi(state.rho[i]);
    return c / n_ - cost_mu_fixed;
  };
  double prev_energy = 0.0;
  if (opts.track_energy_every_step) {
    const double beta = schedule.beta_at(state.t);
    if (!mu_cache || mu_cache->beta != beta)
      mu_cache = solve_stationary(spec_, landscape_, beta, n_);
    cost_mu_fixed = 0.0;
    for (int i = 0; i < n_; ++i)
      cost_mu_fixed += beta * u_[i] * mu_cache->values[i] +
                       spec_.phi(mu_cache->values[i]);
    cost_mu_fixed /= n_;
    prev_energy = energy_fixed(beta);
  }

  double next_snapshot =
      opts.snapshot_stride > 0.0 ? state.t + opts.snapshot_stride : t_end;
  while (state.t < t_end) {
    const double beta = schedule.beta_at(state.t);
    double dt;
    switch (opts.dt_policy.kind) {
      case DtPolicy::Kind::explicit_cfl:
        dt = suggest_dt(state, beta, opts.dt_policy.safety);
        break;
      case DtPolicy::Kind::advective_cfl:
        dt = advective_dt(beta, opts.dt_policy.safety);
        break;
      case DtPolicy::Kind::fixed:
        dt = opts.dt_policy.dt;
        break;
      case DtPolicy::Kind::quasi_static:
        dt = std::clamp(opts.dt_policy.growth * std::max(state.t, 1.0),
                        opts.dt_policy.dt_min, opts.dt_policy.dt_max);
        break;
      default:
        dt = opts.dt_policy.dt;
    }
    dt = std::min(dt, t_end - state.t);
    dt = std::min(dt, next_snapshot - state.t + 1e-12 * dt);

    step(state, beta, dt, opts.method, opts.floor_eps, st);
    ++st->steps;

    if (opts.track_energy_every_step) {
      const double e = energy_fixed(beta);
      st->max_energy_increase =
          std::max(st->max_energy_increase, e - prev_energy);
      prev_energy = e;
      st->final_energy = e;
      if (opts.stop_energy > 0.0 && e <= opts.stop_energy) break;
    }

    if (state.t >= next_snapshot - 1e-12) {
      out.push_back(snapshot(state, schedule.beta_at(state.t), mu_cache));
      next_snapshot += opts.snapshot_stride > 0.0 ? opts.snapshot_stride
                                                  : (t_end - state.t + 1.0);
    }
  }
  if (out.back().t < state.t)
    out.push_back(snapshot(state, schedule.beta_at(state.t), mu_cache));
  if (opts.track_energy_every_step && st->final_energy < 0.0)
    st->final_energy = prev_energy;
  return out;
}

}  // namespace swarmgrad
