#pragma once

#include <span>
#include <vector>

#include "swarmgrad/landscape.hpp"
#include "swarmgrad/potentials.hpp"

namespace swarmgrad {

// The unique stationary density mu = psi(c* - beta U) on a uniform circle
// grid. Values are densities with respect to the normalized measure (the
// discrete integral is the arithmetic mean), so mean(values) == 1.
struct StationaryMeasure {
  double beta = 0.0;
  double c_star = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  int grid_n = 0;
  double L = 1.0;
  std::vector<double> values;
};

// Cell-center abscissas x_i = (i + 1/2) L / n.
std::vector<double> grid_centers(int n, double L);

// Finds c* by bisection of the monotone normalization map on the bracket
// [beta min U, beta max U]; Boltzmann mode is solved in closed form via a
// stable log-sum-exp.
StationaryMeasure solve_stationary(const PotentialSpec& spec,
                                   const Landscape& l, double beta, int grid_n,
                                   double tol = 1e-13);

// Penalized cost of a density sampled on the same grid:
// beta * mean(U rho) + mean(phi(rho)).
double penalized_cost(const PotentialSpec& spec, const Landscape& l,
                      double beta, std::span<const double> rho);

// (1/beta) * penalized cost of the stationary density - min U (grid min).
double relaxation_gap(const PotentialSpec& spec, const Landscape& l,
                      double beta, int grid_n);

}  // namespace swarmgrad
