#pragma once

#include <string>

namespace swarmgrad {

// Constants entering the one-dimensional convergence machinery. For a circle
// of perimeter L the dissipation constant is c(beta) = c_factor / L.
struct LowerBoundConstants {
  double c0;
  double c1;
  double c2;
  double c_factor;  // 2 * c2^{-3/2}
};

// Entropy density family: either the glued power potential with exponent
// m in (0, 1/2) (power branch on (0,1], quadratic branch beyond), or the
// Boltzmann entropy r log r - (r - 1) kept as a reference mode in which the
// particle dynamics degenerates to classical annealing.
class PotentialSpec {
 public:
  static PotentialSpec power_glued(double m);
  static PotentialSpec boltzmann();

  bool is_boltzmann() const { return boltzmann_; }
  double m() const { return m_; }
  // eta = (1-2m)/(2(1-m)), the large-argument rate exponent.
  double eta() const;
  // gamma = 3(2-m)/(1-2m), the schedule exponent.
  double gamma() const;

  double phi(double r) const;
  double phi_prime(double r) const;
  double phi_second(double r) const;

  // psi = inverse of phi'; defined on all of R.
  double psi(double tau) const;
  double psi_prime(double tau) const;

  // alpha(r) = (1/r) * integral_0^r s phi''(s) ds, the squared diffusion
  // coefficient of the interacting particle system.
  double alpha(double r) const;

  // theta(r) = integral_0^r sqrt(psi(s + phi'(mu_min))) ds, by adaptive
  // quadrature with the psi kink placed on a panel boundary.
  double theta(double r, double mu_min) const;

  LowerBoundConstants lower_bound_constants(double mu_min) const;
  double small_c(double mu_min, double L) const;

  // Rate function of the functional inequality: r^{3/2} below 1, r^eta above.
  double omega_big(double r) const;
  // Rate function of the transport-distance inequality.
  double omega_small(double r) const;

  std::string name() const;

 private:
  PotentialSpec(double m, bool boltzmann);

  double m_ = 0.0;
  bool boltzmann_ = false;
};

}  // namespace swarmgrad
