#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarmgrad/landscape.hpp"
#include "swarmgrad/potentials.hpp"
#include "swarmgrad/schedule.hpp"

namespace swarmgrad {

// Smooth compactly supported density kernel: the standard C-infinity bump
// profile on [-1/4, 1/4] per axis (product form in d > 1), unit mass per
// axis. Bandwidths are measured in units of the period, so a kernel scaled
// by h has physical support radius h * period / 4 per axis.
class Kernel {
 public:
  static Kernel bump();

  double eval1d(double u) const;       // exact profile
  double eval1d_fast(double u) const;  // tabulated, linear interpolation
  static constexpr double support_radius() { return 0.25; }
  double norm1d() const { return norm_; }

 private:
  Kernel() = default;
  double norm_ = 0.0;
  std::vector<double> table_;  // profile on [0, 1/4], uniform
  double inv_du_ = 0.0;
};

struct SwarmState {
  int dim = 1;
  double period = 1.0;
  double t = 0.0;
  double h = 0.02;  // bandwidth in (0,1), period units
  std::uint64_t seed = 0;
  std::uint64_t step_index = 0;
  std::vector<double> positions;  // N x dim, row-major, wrapped to [0, period)

  int count() const { return static_cast<int>(positions.size()) / dim; }
};

SwarmState init_uniform_swarm(int N, int dim, double period, double h,
                              std::uint64_t seed);

// Empirical kernel density at one point, relative to the normalized measure
// (so a uniform cloud gives values near 1). Exact O(N).
double kde_at(const SwarmState& state, const Kernel& kernel,
              std::span<const double> x);

// Density at every particle position. In d = 1 uses a bucket grid keyed by
// the kernel support, which is exact for the compactly supported kernel.
void kde_at_particles(const SwarmState& state, const Kernel& kernel,
                      std::span<double> out, bool fast_kernel = true);

// Density at the n cell centers of the circle grid (d = 1, exact kernel).
std::vector<double> kde_on_grid(const SwarmState& state, const Kernel& kernel,
                                int grid_n);

struct GrowthPolicy {
  bool enabled = false;
  double interval = 1.0;   // duplicate every `interval` time units
  double fraction = 0.05;  // fraction of the current swarm to duplicate
  int max_count = 0;       // hard cap (0: no growth even if enabled)
};

struct EmOptions {
  double floor_eps = 1e-12;  // density clamp before alpha
  double alpha_cap = 1e3;    // hard cap on the squared diffusion coefficient
  double noise_scale = 1.0;  // 0 disables noise (test hook)
  bool fast_kernel = true;
  GrowthPolicy growth{};
};

struct EmStats {
  long alpha_cap_hits = 0;
  long density_floor_hits = 0;
};

// Synchronous Euler-Maruyama step of
//   dX = -beta grad U(X) dt + sqrt(alpha(rho_{N,h}(X))) dB,
// with all densities frozen at the pre-step configuration and a fixed
// particle-major draw order. `densities`, when supplied, must hold the
// pre-step densities at all particles (used by strided refreshes).
void em_step(SwarmState& state, const PotentialSpec& spec, const Landscape& l,
             const Kernel& kernel, double beta, double dt,
             const EmOptions& opts = {}, EmStats* stats = nullptr,
             std::span<const double> densities = {});

struct HPolicy {
  enum class Kind { constant, power_decay };
  Kind kind = Kind::constant;
  double h0 = 0.02;
  double q = 0.0;  // power_decay: h(t) = h0 (1+t)^{-q}
};

struct SwarmSnapshot {
  double t = 0.0;
  double beta = 0.0;
  double h = 0.0;
  int count = 0;
  double mean_u = 0.0;
  double basin_fraction = 0.0;
  double kde_l1_to_stationary = -1.0;  // -1 when not computed
  long alpha_cap_hits = 0;             // cumulative
};

struct RunSwarmOptions {
  EmOptions em{};
  double snapshot_stride = 0.0;  // 0: snapshots only at start and end
  double basin_radius = 0.25;    // physical distance to the global minimum
  int kde_grid_n = 0;            // 0: skip the stationary comparison
  int kde_refresh_stride = 1;    // re-evaluate densities every k-th step
  HPolicy h_policy{};
};

std::vector<SwarmSnapshot> run_swarm(SwarmState& state,
                                     const PotentialSpec& spec,
                                     const Landscape& l, const Kernel& kernel,
                                     const Schedule& schedule, double t_end,
                                     double dt, const RunSwarmOptions& opts,
                                     EmStats* stats = nullptr);

}  // namespace swarmgrad
