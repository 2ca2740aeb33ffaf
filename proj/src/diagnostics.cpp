#include "swarmgrad/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "swarmgrad/numerics.hpp"

namespace swarmgrad {

namespace {

void require_matching(const GridDensity& rho, const StationaryMeasure& mu) {
  if (rho.n != mu.grid_n || rho.L != mu.L)
    throw std::invalid_argument("diagnostics: grid mismatch");
}

}  // namespace

double reduced_cost(const GridDensity& rho, const StationaryMeasure& mu,
                    const PotentialSpec& spec) {
  require_matching(rho, mu);
  double acc = 0.0;
  for (int i = 0; i < rho.n; ++i) {
    const double r = rho.rho[i], m = mu.values[i];
    acc += spec.phi(r) - spec.phi(m) - spec.phi_prime(m) * (r - m);
  }
  return acc / rho.n;
}

double entropy_production(const GridDensity& rho, const StationaryMeasure& mu,
                          const PotentialSpec& spec) {
  require_matching(rho, mu);
  const int n = rho.n;
  const double dx = rho.L / n;
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = spec.phi_prime(rho.rho[i]) - spec.phi_prime(mu.values[i]);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dg = (g[(i + 1) % n] - g[(i + n - 1) % n]) / (2.0 * dx);
    acc += rho.rho[i] * dg * dg;
  }
  return acc / n;
}

InequalityCheck check_functional_inequality(const GridDensity& rho,
                                            const StationaryMeasure& mu,
                                            const PotentialSpec& spec,
                                            double osc, double grid_slack) {
  require_matching(rho, mu);
  InequalityCheck out;
  out.energy = reduced_cost(rho, mu, spec);
  out.production = entropy_production(rho, mu, spec);
  out.mu_min_used = mu.mu_min;
  out.c_beta = spec.small_c(std::min(mu.mu_min, 1.0), rho.L);
  out.rhs = out.c_beta * spec.omega_big(out.energy);

  const double mu_min_bound =
      std::min(spec.psi(-mu.beta * osc), 1.0);
  out.rhs_bound =
      spec.small_c(mu_min_bound, rho.L) * spec.omega_big(out.energy);

  const double inf = std::numeric_limits<double>::infinity();
  out.ratio = out.rhs > 0.0 ? out.production / out.rhs : inf;
  out.ratio_bound = out.rhs_bound > 0.0 ? out.production / out.rhs_bound : inf;
  out.pass = out.production >= out.rhs * (1.0 - grid_slack);
  return out;
}

double w2_circle(const GridDensity& rho, const GridDensity& sigma) {
  if (rho.n != sigma.n || rho.L != sigma.L)
    throw std::invalid_argument("w2_circle: grid mismatch");
  const int n = rho.n;
  const double dx = rho.L / n;

  // Cell masses (both sum to ~1).
  std::vector<double> wa(n), wb(n);
  double sa = 0.0, sb = 0.0;
  for (int i = 0; i < n; ++i) {
    wa[i] = rho.rho[i];
    wb[i] = sigma.rho[i];
    sa += wa[i];
    sb += wb[i];
  }
  for (int i = 0; i < n; ++i) {
    wa[i] /= sa;
    wb[i] /= sb;
  }

  // For a fixed cut the two quantile functions are piecewise linear in the
  // cumulative mass q; their difference is linear on every merged segment,
  // so each segment integrates exactly.
  double best = std::numeric_limits<double>::infinity();
  for (int cut = 0; cut < n; ++cut) {
    int ia = cut, ib = cut;  // cell currently being consumed
    int ka = 0, kb = 0;      // unrolled offset of that cell
    double qa = 0.0, qb = 0.0;  // cumulative mass at the start of the cell
    double q = 0.0, cost = 0.0;
    while (ka < n && wa[ia] <= 0.0) {
      ia = (ia + 1) % n;
      ++ka;
    }
    while (kb < n && wb[ib] <= 0.0) {
      ib = (ib + 1) % n;
      ++kb;
    }
    while (q < 1.0 - 1e-12 && ka < n && kb < n) {
      const double ea = qa + wa[ia];
      const double eb = qb + wb[ib];
      const double qn = std::min(std::min(ea, eb), 1.0);
      const double xa0 = (ka + (q - qa) / wa[ia]) * dx;
      const double xa1 = (ka + (qn - qa) / wa[ia]) * dx;
      const double xb0 = (kb + (q - qb) / wb[ib]) * dx;
      const double xb1 = (kb + (qn - qb) / wb[ib]) * dx;
      const double d0 = xa0 - xb0, d1 = xa1 - xb1;
      cost += (qn - q) * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
      q = qn;
      if (ea <= q + 1e-15) {
        qa = ea;
        do {
          ia = (ia + 1) % n;
          ++ka;
        } while (ka < n && wa[ia] <= 0.0);
      }
      if (eb <= q + 1e-15) {
        qb = eb;
        do {
          ib = (ib + 1) % n;
          ++kb;
        } while (kb < n && wb[ib] <= 0.0);
      }
    }
    best = std::min(best, cost);
  }
  return std::sqrt(std::max(best, 0.0));
}

TalagrandCheck check_talagrand(const GridDensity& rho,
                               const StationaryMeasure& mu,
                               const PotentialSpec& spec, double kappa_tal,
                               double grid_slack) {
  require_matching(rho, mu);
  TalagrandCheck out;
  out.energy = reduced_cost(rho, mu, spec);
  GridDensity mu_g;
  mu_g.n = mu.grid_n;
  mu_g.L = mu.L;
  mu_g.rho = mu.values;
  out.w2 = w2_circle(rho, mu_g);
  const double d_beta = kappa_tal * spec.small_c(std::min(mu.mu_min, 1.0), rho.L);
  out.rhs = d_beta * spec.omega_small(out.w2);
  out.ratio = out.rhs > 0.0 ? out.energy / out.rhs
                            : std::numeric_limits<double>::infinity();
  out.pass = out.energy >= out.rhs * (1.0 - grid_slack);
  return out;
}

std::vector<LyapunovPoint> lyapunov_bound(
    double v0, const Schedule& schedule,
    const std::function<double(double)>& c_of_beta,
    const std::function<double(double)>& omega, double delta, double t_end,
    int samples_per_decade) {
  if (v0 < 0.0) throw std::invalid_argument("lyapunov_bound: v0 must be >= 0");
  if (delta < 0.0)
    throw std::invalid_argument("lyapunov_bound: delta must be >= 0");

  auto f = [&](double t, double v) {
    return -c_of_beta(schedule.beta_at(t)) * omega(std::max(v, 0.0)) +
           delta * std::abs(schedule.beta_dot_at(t));
  };
  auto rk4 = [&](double t, double v, double h) {
    const double k1 = f(t, v);
    const double k2 = f(t + 0.5 * h, v + 0.5 * h * k1);
    const double k3 = f(t + 0.5 * h, v + 0.5 * h * k2);
    const double k4 = f(t + h, v + h * k3);
    return v + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  // sample times: geometric grid ending at t_end
  std::vector<double> sample_ts;
  const double t_first = std::max(t_end * 1e-9, 1e-6);
  const int decades = static_cast<int>(
      std::ceil(std::log10(t_end / t_first) * samples_per_decade));
  sample_ts.push_back(0.0);
  for (int j = 0; j <= decades; ++j)
    sample_ts.push_back(
        t_first * std::pow(10.0, static_cast<double>(j) / samples_per_decade));
  sample_ts.back() = t_end;

  std::vector<LyapunovPoint> out;
  double t = 0.0, v = v0;
  out.push_back({t, v, schedule.beta_at(t)});
  double h = t_first / 8.0;
  for (std::size_t si = 1; si < sample_ts.size(); ++si) {
    const double target = sample_ts[si];
    while (t < target) {
      h = std::min(h, target - t);
      const double full = rk4(t, v, h);
      const double half = rk4(t + 0.5 * h, rk4(t, v, 0.5 * h), 0.5 * h);
      const double err = std::abs(full - half);
      const double tol = 1e-10 + 1e-9 * std::abs(half);
      if (err > tol && h > 1e-12 * std::max(t, 1.0)) {
        h *= 0.5;
        continue;
      }
      v = std::max(half, 0.0);
      t += h;
      if (err < 0.1 * tol) h *= 1.9;
    }
    out.push_back({t, v, schedule.beta_at(t)});
  }
  return out;
}

std::function<double(double)> dissipation_rate_map(const PotentialSpec& spec,
                                                   double osc, double L) {
  return [spec, osc, L](double beta) {
    const double mu_min = std::min(spec.psi(-beta * osc), 1.0);
    return spec.small_c(mu_min, L);
  };
}

std::vector<double> random_density_like(const StationaryMeasure& mu,
                                        std::uint64_t seed, double amplitude,
                                        int order) {
  CounterRng rng(seed);
  std::vector<double> ac(order), as(order);
  for (int k = 1; k <= order; ++k) {
    ac[k - 1] = amplitude * rng.normal(0x70, k) / k;
    as[k - 1] = amplitude * rng.normal(0x71, k) / k;
  }
  const auto xs = grid_centers(mu.grid_n, mu.L);
  std::vector<double> rho(mu.grid_n);
  double mean = 0.0;
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (int i = 0; i < mu.grid_n; ++i) {
    double trig = 0.0;
    for (int k = 1; k <= order; ++k) {
      const double w = two_pi * k * xs[i] / mu.L;
      trig += ac[k - 1] * std::cos(w) + as[k - 1] * std::sin(w);
    }
    rho[i] = mu.values[i] * std::exp(trig);
    mean += rho[i];
  }
  mean /= mu.grid_n;
  for (double& r : rho) r /= mean;
  return rho;
}

std::vector<SweepEntry> functional_inequality_sweep(
    const Landscape& l, std::span<const double> betas,
    std::span<const double> ms, int seeds_per_cell, int grid_n,
    std::uint64_t base_seed, double grid_slack) {
  std::vector<SweepEntry> out;
  CounterRng amp_rng(base_seed ^ 0xa3f1);
  for (double m : ms) {
    const PotentialSpec spec = PotentialSpec::power_glued(m);
    for (double beta : betas) {
      const StationaryMeasure mu = solve_stationary(spec, l, beta, grid_n);
      StationaryMeasure mu_fine;  // lazy 2x refinement
      for (int s = 0; s < seeds_per_cell; ++s) {
        const std::uint64_t seed =
            mix64(base_seed ^ (static_cast<std::uint64_t>(s) << 24) ^
                  (static_cast<std::uint64_t>(beta * 8192)) ^
                  (static_cast<std::uint64_t>(m * 65536) << 40));
        // amplitudes span both branches of the rate function
        const double amplitude = 0.05 + 2.45 * amp_rng.uniform(seed);

        GridDensity rho;
        rho.n = grid_n;
        rho.L = mu.L;
        rho.rho = random_density_like(mu, seed, amplitude);
        InequalityCheck chk =
            check_functional_inequality(rho, mu, spec, l.osc, grid_slack);

        SweepEntry e;
        e.seed = seed;
        e.beta = beta;
        e.m = m;
        e.refined = false;
        if (!chk.pass) {
          if (mu_fine.grid_n != 2 * grid_n || mu_fine.beta != beta)
            mu_fine = solve_stationary(spec, l, beta, 2 * grid_n);
          GridDensity rho2;
          rho2.n = 2 * grid_n;
          rho2.L = mu_fine.L;
          rho2.rho = random_density_like(mu_fine, seed, amplitude);
          chk = check_functional_inequality(rho2, mu_fine, spec, l.osc,
                                            grid_slack);
          e.refined = true;
        }
        e.energy = chk.energy;
        e.production = chk.production;
        e.rhs = chk.rhs;
        e.ratio = chk.ratio;
        e.pass = chk.pass;
        out.push_back(e);
      }
    }
  }
  return out;
}

}  // namespace swarmgrad
