#include "swarmgrad/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmgrad/numerics.hpp"

namespace swarmgrad {

PotentialSpec::PotentialSpec(double m, bool boltzmann)
    : m_(m), boltzmann_(boltzmann) {}

PotentialSpec PotentialSpec::power_glued(double m) {
  if (!(m > 0.0 && m < 0.5))
    throw std::invalid_argument("potential exponent m must lie in (0, 1/2)");
  return PotentialSpec(m, false);
}

PotentialSpec PotentialSpec::boltzmann() { return PotentialSpec(1.0, true); }

double PotentialSpec::eta() const {
  if (boltzmann_) throw std::domain_error("eta is undefined in Boltzmann mode");
  return (1.0 - 2.0 * m_) / (2.0 * (1.0 - m_));
}

double PotentialSpec::gamma() const {
  if (boltzmann_)
    throw std::domain_error("gamma is undefined in Boltzmann mode");
  return 3.0 * (2.0 - m_) / (1.0 - 2.0 * m_);
}

double PotentialSpec::phi(double r) const {
  if (r < 0.0) throw std::invalid_argument("phi: negative argument");
  if (boltzmann_) {
    if (r == 0.0) return 1.0;
    return r * std::log(r) - (r - 1.0);
  }
  if (r <= 1.0)
    return (pow_rt(r, m_) - 1.0 - m_ * (r - 1.0)) / (m_ * (m_ - 1.0));
  const double d = r - 1.0;
  return 0.5 * d * d;
}

double PotentialSpec::phi_prime(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("phi_prime: argument must be > 0");
  if (boltzmann_) return std::log(r);
  if (r <= 1.0) return (pow_rt(r, m_ - 1.0) - 1.0) / (m_ - 1.0);
  return r - 1.0;
}

double PotentialSpec::phi_second(double r) const {
  if (!(r > 0.0))
    throw std::invalid_argument("phi_second: argument must be > 0");
  if (boltzmann_) return 1.0 / r;
  if (r <= 1.0) return pow_rt(r, m_ - 2.0);
  return 1.0;
}

double PotentialSpec::psi(double tau) const {
  if (boltzmann_) return std::exp(tau);
  if (tau <= 0.0) return pow_rt(1.0 + (m_ - 1.0) * tau, 1.0 / (m_ - 1.0));
  return 1.0 + tau;
}

double PotentialSpec::psi_prime(double tau) const {
  if (boltzmann_) return std::exp(tau);
  if (tau < 0.0)
    return pow_rt(1.0 + (m_ - 1.0) * tau, (2.0 - m_) / (m_ - 1.0));
  return 1.0;
}

double PotentialSpec::alpha(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("alpha: argument must be > 0");
  if (boltzmann_) return 1.0;
  if (r <= 1.0) return pow_rt(r, m_ - 1.0) / m_;
  return (1.0 / m_ + 0.5 * (r * r - 1.0)) / r;
}

double PotentialSpec::theta(double r, double mu_min) const {
  if (boltzmann_)
    throw std::domain_error("theta is not defined in Boltzmann mode");
  if (!(mu_min > 0.0)) throw std::invalid_argument("theta: mu_min must be > 0");
  if (r == 0.0) return 0.0;
  const double shift = phi_prime(mu_min);
  const double kink = -shift;  // psi switches branch where s + shift = 0
  const auto integrand = [this, shift](double s) {
    return std::sqrt(psi(s + shift));
  };
  const double breaks[] = {kink};
  return integrate_with_breaks(integrand, 0.0, r, breaks, 1e-10);
}

LowerBoundConstants PotentialSpec::lower_bound_constants(double mu_min) const {
  if (boltzmann_)
    throw std::domain_error(
        "lower_bound_constants are not defined in Boltzmann mode");
  if (!(mu_min > 0.0 && mu_min <= 1.0))
    throw std::invalid_argument(
        "lower_bound_constants: mu_min must lie in (0, 1]");
  const double fp = phi_prime(mu_min);
  const double c0 = 1.0 - (1.0 - m_) * fp;
  const double expo = (2.0 - m_) / (2.0 * (1.0 - m_));
  const double a = pow_rt(1.0 + (1.0 - m_) * (1.0 - fp), expo);
  const double b = std::sqrt(phi_second(mu_min));
  const double c1 = 1.5 * std::max(a, b);
  const double c2 = pow_rt(c1, 2.0 / eta());
  const double c_factor = 2.0 * pow_rt(c2, -1.5);
  return {c0, c1, c2, c_factor};
}

double PotentialSpec::small_c(double mu_min, double L) const {
  if (!(L > 0.0)) throw std::invalid_argument("small_c: L must be > 0");
  return lower_bound_constants(mu_min).c_factor / L;
}

double PotentialSpec::omega_big(double r) const {
  if (boltzmann_)
    throw std::domain_error("omega_big is not defined in Boltzmann mode");
  if (r < 0.0) throw std::invalid_argument("omega_big: negative argument");
  if (r < 1.0) return pow_rt(r, 1.5);
  return pow_rt(r, eta());
}

double PotentialSpec::omega_small(double r) const {
  if (boltzmann_)
    throw std::domain_error("omega_small is not defined in Boltzmann mode");
  if (r < 0.0) throw std::invalid_argument("omega_small: negative argument");
  if (r < 1.0) return 1.6 * pow_rt(r, 0.625);
  const double expo = (3.0 - 2.0 * m_) / (4.0 * (1.0 - m_));
  return (4.0 * (1.0 - m_) / (3.0 - 2.0 * m_)) * pow_rt(r, expo);
}

std::string PotentialSpec::name() const {
  if (boltzmann_) return "boltzmann";
  return "power_glued(m=" + format_double(m_) + ")";
}

}  // namespace swarmgrad
