#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace swarmgrad {

// All fractional powers of positive reals go through this helper so that
// every call site rounds identically.
double pow_rt(double base, double expo);

// Adaptive Gauss-Kronrod 7-15 quadrature, absolute tolerance.
// The integrand must be finite at every interior node (endpoints are never
// evaluated, so integrable endpoint singularities are allowed).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

// Same, but the interval is pre-split at the given breakpoints (kinks are
// placed on panel boundaries).
double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::span<const double> breaks,
                             double abs_tol = 1e-10);

// Solves the cyclic tridiagonal system with lower/main/upper diagonals
// (lower[i] multiplies x[i-1], upper[i] multiplies x[i+1], indices wrap).
// Overwrites rhs with the solution. n >= 3.
void solve_periodic_tridiagonal(std::span<const double> lower,
                                std::span<const double> diag,
                                std::span<const double> upper,
                                std::span<double> rhs);

// Counter-based RNG: a keyed splitmix64 chain. Streams are addressed by
// (seed, a, b, c); equal keys give equal draws regardless of evaluation
// order, which is what makes multi-threaded sweeps reproducible.
std::uint64_t mix64(std::uint64_t z);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0) const;
  // Uniform on (0,1), never exactly 0 or 1.
  double uniform(std::uint64_t a, std::uint64_t b = 0,
                 std::uint64_t c = 0) const;
  // Standard normal via Box-Muller on two decorrelated substreams.
  double normal(std::uint64_t a, std::uint64_t b = 0,
                std::uint64_t c = 0) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);

}  // namespace swarmgrad
