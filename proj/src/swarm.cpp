#include "swarmgrad/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmgrad/numerics.hpp"
#include "swarmgrad/pde1d.hpp"
#include "swarmgrad/stationary.hpp"

namespace swarmgrad {

namespace {

constexpr std::uint64_t kTagInit = 0x10;
constexpr std::uint64_t kTagMove = 0x20;
constexpr std::uint64_t kTagGrowth = 0x30;

double bump_raw(double u) {
  const double w = 4.0 * u;
  const double s = 1.0 - w * w;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s);
}

void check_bandwidth(double h) {
  if (!(h > 0.0 && h < 0.5))
    throw std::invalid_argument(
        "kde: bandwidth must lie in (0, 1/2) so the scaled support does not "
        "wrap around the torus");
}

// Sorted view of a 1-d particle cloud for compact-support sums: three
// period-shifted copies of the sorted coordinates make every circular
// window around a center in the middle copy a contiguous range.
struct SortedCloud {
  int n = 0;
  double period = 0.0;
  std::vector<int> order;  // sorted particle index
  std::vector<double> xs;  // size 3n: sorted positions - P, +0, +P shifts

  void build(std::span<const double> positions, double period_) {
    n = static_cast<int>(positions.size());
    period = period_;
    order.resize(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return positions[a] < positions[b]; });
    xs.resize(3 * n);
    for (int i = 0; i < n; ++i) {
      xs[i + n] = positions[order[i]];
      xs[i] = xs[i + n] - period;
      xs[i + 2 * n] = xs[i + n] + period;
    }
  }

  // Calls f(sorted_slot, signed_distance) for every particle within radius
  // of x; lo must start at 0 and queries must come in increasing x order.
  template <typename F>
  void window(double x, double radius, int& lo, F&& f) const {
    while (lo < 3 * n && xs[lo] < x - radius) ++lo;
    for (int j = lo; j < 3 * n && xs[j] <= x + radius; ++j) {
      const int slot = j >= 2 * n ? j - 2 * n : (j >= n ? j - n : j);
      f(slot, xs[j] - x);
    }
  }
};

}  // namespace

Kernel Kernel::bump() {
  Kernel k;
  // unit mass per axis: norm = 1 / integral of the raw profile
  const double mass = integrate([](double u) { return bump_raw(u); }, -0.25,
                                0.25, 1e-14);
  k.norm_ = 1.0 / mass;
  const int table_n = 8192;
  k.table_.resize(table_n + 1);
  for (int i = 0; i <= table_n; ++i)
    k.table_[i] = k.norm_ * bump_raw(0.25 * i / table_n);
  k.inv_du_ = table_n / 0.25;
  return k;
}

double Kernel::eval1d(double u) const { return norm_ * bump_raw(u); }

double Kernel::eval1d_fast(double u) const {
  const double a = std::abs(u);
  if (a >= 0.25) return 0.0;
  const double s = a * inv_du_;
  const int i = static_cast<int>(s);
  const double f = s - i;
  return table_[i] + f * (table_[i + 1] - table_[i]);
}

SwarmState init_uniform_swarm(int N, int dim, double period, double h,
                              std::uint64_t seed) {
  if (N < 2) throw std::invalid_argument("swarm: N must be >= 2");
  if (!(h > 0.0 && h < 1.0))
    throw std::invalid_argument("swarm: bandwidth must lie in (0, 1)");
  SwarmState s;
  s.dim = dim;
  s.period = period;
  s.h = h;
  s.seed = seed;
  s.positions.resize(static_cast<std::size_t>(N) * dim);
  CounterRng rng(seed);
  for (int n = 0; n < N; ++n)
    for (int a = 0; a < dim; ++a)
      s.positions[static_cast<std::size_t>(n) * dim + a] =
          period * rng.uniform(kTagInit, n, a);
  return s;
}

double kde_at(const SwarmState& state, const Kernel& kernel,
              std::span<const double> x) {
  check_bandwidth(state.h);
  if (static_cast<int>(x.size()) != state.dim)
    throw std::invalid_argument("kde_at: dimension mismatch");
  const int N = state.count();
  const double h = state.h;
  double acc = 0.0;
  for (int n = 0; n < N; ++n) {
    double k = 1.0;
    for (int a = 0; a < state.dim; ++a) {
      const double d =
          torus_displacement(x[a],
                             state.positions[static_cast<std::size_t>(n) *
                                                 state.dim +
                                             a],
                             state.period) /
          state.period;
      k *= kernel.eval1d(d / h) / h;
      if (k == 0.0) break;
    }
    acc += k;
  }
  return acc / N;
}

void kde_at_particles(const SwarmState& state, const Kernel& kernel,
                      std::span<double> out, bool fast_kernel) {
  check_bandwidth(state.h);
  const int N = state.count();
  if (static_cast<int>(out.size()) != N)
    throw std::invalid_argument("kde_at_particles: output size mismatch");
  const double h = state.h;

  if (state.dim == 1) {
    const double radius = 0.25 * h * state.period;
    const double inv_hp = 1.0 / (state.period * h);
    static thread_local SortedCloud cloud;
    cloud.build(state.positions, state.period);
    int lo = 0;
    for (int i = 0; i < N; ++i) {
      const double xi = cloud.xs[i + N];
      double acc = 0.0;
      cloud.window(xi, radius, lo, [&](int, double d) {
        acc += fast_kernel ? kernel.eval1d_fast(d * inv_hp)
                           : kernel.eval1d(d * inv_hp);
      });
      out[cloud.order[i]] = acc / (N * h);
    }
    return;
  }

  // d >= 2: direct evaluation (desk scale)
  for (int i = 0; i < N; ++i) {
    double acc = 0.0;
    for (int n = 0; n < N; ++n) {
      double k = 1.0;
      for (int a = 0; a < state.dim; ++a) {
        const double d =
            torus_displacement(
                state.positions[static_cast<std::size_t>(i) * state.dim + a],
                state.positions[static_cast<std::size_t>(n) * state.dim + a],
                state.period) /
            state.period;
        k *= (fast_kernel ? kernel.eval1d_fast(d / h) : kernel.eval1d(d / h)) /
             h;
        if (k == 0.0) break;
      }
      acc += k;
    }
    out[i] = acc / N;
  }
}

std::vector<double> kde_on_grid(const SwarmState& state, const Kernel& kernel,
                                int grid_n) {
  check_bandwidth(state.h);
  if (state.dim != 1)
    throw std::invalid_argument("kde_on_grid: d = 1 only");
  const int N = state.count();
  const double h = state.h;
  const double radius = 0.25 * h * state.period;
  const double inv_hp = 1.0 / (state.period * h);
  SortedCloud cloud;
  cloud.build(state.positions, state.period);
  const auto xs = grid_centers(grid_n, state.period);
  std::vector<double> out(grid_n, 0.0);
  int lo = 0;
  for (int i = 0; i < grid_n; ++i) {
    double acc = 0.0;
    cloud.window(xs[i], radius, lo, [&](int, double d) {
      acc += kernel.eval1d(d * inv_hp);
    });
    out[i] = acc / (N * h);
  }
  return out;
}

void em_step(SwarmState& state, const PotentialSpec& spec, const Landscape& l,
             const Kernel& kernel, double beta, double dt,
             const EmOptions& opts, EmStats* stats,
             std::span<const double> densities) {
  if (!(dt > 0.0)) throw std::invalid_argument("em_step: dt must be > 0");
  if (l.dim != state.dim)
    throw std::invalid_argument("em_step: landscape dimension mismatch");
  const int N = state.count();
  const int d = state.dim;

  static thread_local std::vector<double> dens;
  if (densities.empty()) {
    dens.resize(N);
    kde_at_particles(state, kernel, dens, opts.fast_kernel);
    densities = dens;
  } else if (static_cast<int>(densities.size()) != N) {
    throw std::invalid_argument("em_step: density buffer size mismatch");
  }

  CounterRng rng(state.seed);
  std::vector<double> grad(d);
  const double sqrt_dt = std::sqrt(dt);
  for (int n = 0; n < N; ++n) {
    auto x = std::span<double>(state.positions)
                 .subspan(static_cast<std::size_t>(n) * d, d);
    l.gradient(x, grad);

    double rho_hat = densities[n];
    if (rho_hat < opts.floor_eps) {
      rho_hat = opts.floor_eps;
      if (stats) ++stats->density_floor_hits;
    }
    double a = spec.alpha(rho_hat);
    if (a > opts.alpha_cap) {
      a = opts.alpha_cap;
      if (stats) ++stats->alpha_cap_hits;
    }
    // variance 2 alpha dt per axis, so the generator is alpha lap - beta
    // grad U . grad and the density solves the same equation as the grid
    // solver; the Boltzmann mode (alpha = 1) recovers the classical
    // sqrt(2) dB annealing diffusion.
    const double sigma = opts.noise_scale * std::sqrt(2.0 * a) * sqrt_dt;

    for (int axis = 0; axis < d; ++axis) {
      const double xi =
          sigma != 0.0
              ? rng.normal(kTagMove ^ (state.step_index << 8), n, axis)
              : 0.0;
      x[axis] = wrap_coordinate(x[axis] - beta * grad[axis] * dt + sigma * xi,
                                state.period);
    }
  }

  state.t += dt;
  ++state.step_index;

  const auto& g = opts.growth;
  if (g.enabled && g.max_count > N && g.fraction > 0.0) {
    const double prev = state.t - dt;
    if (std::floor(state.t / g.interval) > std::floor(prev / g.interval)) {
      int add = std::min(g.max_count - N,
                         std::max(1, static_cast<int>(g.fraction * N)));
      for (int j = 0; j < add; ++j) {
        const int src = static_cast<int>(
            rng.uniform(kTagGrowth ^ (state.step_index << 8), j) * N);
        for (int axis = 0; axis < d; ++axis)
          state.positions.push_back(
              state.positions[static_cast<std::size_t>(src) * d + axis]);
      }
    }
  }
}

std::vector<SwarmSnapshot> run_swarm(SwarmState& state,
                                     const PotentialSpec& spec,
                                     const Landscape& l, const Kernel& kernel,
                                     const Schedule& schedule, double t_end,
                                     double dt, const RunSwarmOptions& opts,
                                     EmStats* stats) {
  if (!(t_end > state.t))
    throw std::invalid_argument("run_swarm: t_end must exceed current time");
  EmStats local;
  EmStats* st = stats ? stats : &local;

  StationaryMeasure mu;  // cache for the grid comparison
  auto make_snapshot = [&]() {
    SwarmSnapshot s;
    s.t = state.t;
    s.beta = schedule.beta_at(state.t);
    s.h = state.h;
    s.count = state.count();
    const int N = state.count();
    double mu_acc = 0.0, basin = 0.0;
    for (int n = 0; n < N; ++n) {
      auto x = std::span<const double>(state.positions)
                   .subspan(static_cast<std::size_t>(n) * state.dim,
                            state.dim);
      mu_acc += l.value(x);
      if (!l.global_min.empty()) {
        double dist2 = 0.0;
        for (int a = 0; a < state.dim; ++a) {
          const double dd =
              torus_displacement(x[a], l.global_min[a], state.period);
          dist2 += dd * dd;
        }
        if (dist2 <= opts.basin_radius * opts.basin_radius) basin += 1.0;
      }
    }
    s.mean_u = mu_acc / N;
    s.basin_fraction = basin / N;
    if (opts.kde_grid_n > 0 && state.dim == 1) {
      if (mu.grid_n != opts.kde_grid_n || mu.beta != s.beta)
        mu = solve_stationary(spec, l, s.beta, opts.kde_grid_n);
      const auto kde = kde_on_grid(state, kernel, opts.kde_grid_n);
      double l1 = 0.0;
      for (int i = 0; i < opts.kde_grid_n; ++i)
        l1 += std::abs(kde[i] - mu.values[i]);
      s.kde_l1_to_stationary = l1 / opts.kde_grid_n;
    }
    s.alpha_cap_hits = st->alpha_cap_hits;
    return s;
  };

  std::vector<SwarmSnapshot> out;
  out.push_back(make_snapshot());
  double next_snapshot =
      opts.snapshot_stride > 0.0 ? state.t + opts.snapshot_stride : t_end;

  std::vector<double> dens;
  long k = 0;
  while (state.t < t_end - 1e-12) {
    const double beta = schedule.beta_at(state.t);
    if (opts.h_policy.kind == HPolicy::Kind::power_decay)
      state.h = opts.h_policy.h0 * std::pow(1.0 + state.t, -opts.h_policy.q);

    const double step_dt = std::min(dt, t_end - state.t);
    if (opts.kde_refresh_stride <= 1) {
      em_step(state, spec, l, kernel, beta, step_dt, opts.em, st);
    } else {
      if (k % opts.kde_refresh_stride == 0 ||
          static_cast<int>(dens.size()) != state.count()) {
        dens.resize(state.count());
        kde_at_particles(state, kernel, dens, opts.em.fast_kernel);
      }
      em_step(state, spec, l, kernel, beta, step_dt, opts.em, st, dens);
    }
    ++k;

    if (state.t >= next_snapshot - 1e-12) {
      out.push_back(make_snapshot());
      next_snapshot += opts.snapshot_stride > 0.0 ? opts.snapshot_stride
                                                  : (t_end + 1.0);
    }
  }
  if (out.back().t < state.t) out.push_back(make_snapshot());
  return out;
}

}  // namespace swarmgrad
