#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "swarmgrad/landscape.hpp"
#include "swarmgrad/potentials.hpp"
#include "swarmgrad/schedule.hpp"
#include "swarmgrad/stationary.hpp"

namespace swarmgrad {

// Thrown when a run loses positivity or produces non-finite values.
struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Probability density on a uniform circle grid, relative to the normalized
// measure: the discrete integral is the arithmetic mean, so mass one means
// mean(rho) == 1.
struct GridDensity {
  int n = 0;
  double L = 1.0;
  double t = 0.0;
  std::vector<double> rho;
};

GridDensity uniform_density(int n, double L);

enum class StepMethod {
  // Forward Euler on the full flux; stable under the diffusive CFL bound
  // returned by suggest_dt. Kept for cross-validation at small grids.
  explicit_euler,
  // Linearized backward Euler (one Newton step on the flux Jacobian, cyclic
  // tridiagonal solve). Removes the diffusive dt restriction; the advective
  // CFL is an accuracy guide, not a stability limit.
  semi_implicit,
};

struct DtPolicy {
  enum class Kind { explicit_cfl, advective_cfl, fixed, quasi_static };
  Kind kind = Kind::advective_cfl;
  double dt = 1e-4;     // fixed kind
  double safety = 0.4;
  double growth = 0.005;  // quasi_static: dt = clamp(growth * t, dt_min, dt_max)
  double dt_min = 1e-5;
  double dt_max = 2.0;
};

struct PdeSnapshot {
  double t = 0.0;
  double beta = 0.0;
  double energy = 0.0;       // reduced cost vs the stationary density at beta
  double production = 0.0;   // entropy production vs the same
  double mean_u = 0.0;
  double l1_to_stationary = 0.0;
};

struct PdeRunStats {
  long steps = 0;
  long floor_hits = 0;
  double max_energy_increase = 0.0;  // worst per-step increase (fixed beta)
  double max_mass_drift = 0.0;       // max |mean(rho) - 1| seen
  double final_energy = -1.0;
};

struct EvolveOptions {
  StepMethod method = StepMethod::semi_implicit;
  DtPolicy dt_policy{};
  double snapshot_stride = 0.0;  // 0: snapshots only at start and end
  bool track_energy_every_step = false;  // fixed-beta schedules only
  double stop_energy = -1.0;  // stop early once energy falls below (if > 0)
  double floor_eps = 1e-14;
};

// Mass-conservative finite-volume integrator for
//   d rho / dt = div(rho (beta grad U + grad phi'(rho)))
// on the circle. The flux is written as rho_face * w with the face velocity
// w = -(beta dU + d phi'(rho))/dx and rho_face upwinded on w, so the grid
// stationary density solved by solve_stationary is an exact fixed point.
class Pde1dSolver {
 public:
  Pde1dSolver(PotentialSpec spec, Landscape landscape, int n);

  const PotentialSpec& spec() const { return spec_; }
  const Landscape& landscape() const { return landscape_; }
  int n() const { return n_; }
  double dx() const { return dx_; }

  void step(GridDensity& state, double beta, double dt,
            StepMethod method = StepMethod::semi_implicit,
            double floor_eps = 1e-14, PdeRunStats* stats = nullptr);

  // Explicit-stability bound: safety * min(dx/|v|max, dx^2/(2 Dmax)) with
  // v the advective face velocity and D = rho phi''(rho).
  double suggest_dt(const GridDensity& state, double beta,
                    double safety = 0.4) const;
  // Advective bound alone, the accuracy guide for the semi-implicit method.
  double advective_dt(double beta, double safety = 0.4) const;

  std::vector<PdeSnapshot> evolve(GridDensity& state, const Schedule& schedule,
                                  double t_end, const EvolveOptions& opts,
                                  PdeRunStats* stats = nullptr);

 private:
  void compute_fluxes(const GridDensity& state, double beta);
  PdeSnapshot snapshot(const GridDensity& state, double beta,
                       std::optional<StationaryMeasure>& mu_cache) const;

  PotentialSpec spec_;
  Landscape landscape_;
  int n_;
  double dx_;
  std::vector<double> u_;        // U at cell centers
  std::vector<double> du_face_;  // U_{i+1} - U_i across face i
  double max_abs_du_ = 0.0;
  // scratch
  std::vector<double> g_, phi2_, w_tot_, face_rho_, flux_, lower_, diag_,
      upper_, rhs_;
};

}  // namespace swarmgrad
