#include "swarmgrad/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarmgrad {

std::vector<double> grid_centers(int n, double L) {
  std::vector<double> x(n);
  const double dx = L / n;
  for (int i = 0; i < n; ++i) x[i] = (i + 0.5) * dx;
  return x;
}

StationaryMeasure solve_stationary(const PotentialSpec& spec,
                                   const Landscape& l, double beta, int grid_n,
                                   double tol) {
  if (!(beta > 0.0)) throw std::invalid_argument("solve_stationary: beta > 0");
  if (grid_n < 16) throw std::invalid_argument("solve_stationary: grid_n >= 16");

  const auto xs = grid_centers(grid_n, l.period);
  std::vector<double> u(grid_n);
  double u_lo = std::numeric_limits<double>::infinity(), u_hi = -u_lo;
  for (int i = 0; i < grid_n; ++i) {
    u[i] = l.u1(xs[i]);
    u_lo = std::min(u_lo, u[i]);
    u_hi = std::max(u_hi, u[i]);
  }

  StationaryMeasure mu;
  mu.beta = beta;
  mu.grid_n = grid_n;
  mu.L = l.period;
  mu.values.resize(grid_n);

  double c_star;
  if (spec.is_boltzmann()) {
    // mean exp(c - beta U) = 1 has the closed form c = -log mean exp(-beta U);
    // shift by the max exponent for stability.
    double acc = 0.0;
    for (int i = 0; i < grid_n; ++i) acc += std::exp(-beta * (u[i] - u_lo));
    c_star = beta * u_lo - std::log(acc / grid_n);
  } else {
    // The normalization mean psi(c - beta U) - 1 is strictly increasing in c
    // and changes sign on [beta min U, beta max U].
    auto excess = [&](double c) {
      double acc = 0.0;
      for (int i = 0; i < grid_n; ++i) acc += spec.psi(c - beta * u[i]);
      return acc / grid_n - 1.0;
    };
    double lo = beta * u_lo, hi = beta * u_hi;
    if (lo == hi) {
      c_star = lo;
    } else {
      if (excess(lo) > 1e-12 || excess(hi) < -1e-12)
        throw std::runtime_error(
            "solve_stationary: normalization bracket failed (internal bug)");
      int it = 0;
      const double width_tol = std::max(tol, 1e-16) * std::max(1.0, hi - lo);
      while (hi - lo > width_tol) {
        if (++it > 200)
          throw std::runtime_error(
              "solve_stationary: bisection did not converge in 200 steps");
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
      }
      c_star = 0.5 * (lo + hi);
    }
  }

  mu.c_star = c_star;
  double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
  for (int i = 0; i < grid_n; ++i) {
    const double v = spec.psi(c_star - beta * u[i]);
    mu.values[i] = v;
    v_lo = std::min(v_lo, v);
    v_hi = std::max(v_hi, v);
  }
  mu.mu_min = v_lo;
  mu.mu_max = v_hi;
  return mu;
}

double penalized_cost(const PotentialSpec& spec, const Landscape& l,
                      double beta, std::span<const double> rho) {
  const int n = static_cast<int>(rho.size());
  const auto xs = grid_centers(n, l.period);
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    acc += beta * l.u1(xs[i]) * rho[i] + spec.phi(rho[i]);
  return acc / n;
}

double relaxation_gap(const PotentialSpec& spec, const Landscape& l,
                      double beta, int grid_n) {
  const StationaryMeasure mu = solve_stationary(spec, l, beta, grid_n);
  const auto xs = grid_centers(grid_n, l.period);
  double u_min = std::numeric_limits<double>::infinity();
  for (double x : xs) u_min = std::min(u_min, l.u1(x));
  return penalized_cost(spec, l, beta, mu.values) / beta - u_min;
}

}  // namespace swarmgrad
