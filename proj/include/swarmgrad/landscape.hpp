#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace swarmgrad {

// Reduce a coordinate to [0, period). Idempotent.
double wrap_coordinate(double x, double period);

// Signed displacement a - b reduced to [-period/2, period/2).
double torus_displacement(double a, double b, double period);

// A periodic objective on a flat torus, supplied analytically so that grid
// and mesh-free consumers sample the same function. Nonnegative by
// construction, C2, with cached oscillation on a dense grid.
struct Landscape {
  int dim = 1;
  double period = 1.0;
  std::string name;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  // max - min on the default dense grid; a lower bound of the true
  // oscillation, consumed by schedule constants and stationary bounds.
  double osc = 0.0;
  // Location of the global minimum (builtins only; used for basin stats).
  std::vector<double> global_min;

  double u1(double x) const {
    const double xs[] = {x};
    return value(xs);
  }
  double du1(double x) const {
    const double xs[] = {x};
    double g[1];
    gradient(xs, g);
    return g[0];
  }
};

struct LandscapeParams {
  double L = 1.0;       // circle perimeter (d = 1)
  double u0 = 3.0;      // constant level
  double a = 1.0;       // primary well scale
  double b = 0.55;      // secondary well scale
  std::uint64_t seed = 1;
  int order = 4;        // trig order of the random landscape
  double amp = 1.0;     // amplitude of the random landscape
};

// name in {constant, single_cos, two_well, three_well_asym, random_trig}.
Landscape builtin_landscape(const std::string& name,
                            const LandscapeParams& params = {});

// max U - min U over the uniform grid_n lattice (d = 1).
double oscillation(const Landscape& l, int grid_n);

}  // namespace swarmgrad
