#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "swarmgrad/numerics.hpp"
#include "swarmgrad/potentials.hpp"

using namespace swarmgrad;

namespace {

// Quadrature oracle for alpha: integral_0^r s phi''(s) ds with the endpoint
// singularity removed by the substitution s = u^p.
double alpha_by_quadrature(const PotentialSpec& spec, double r) {
  const int p = static_cast<int>(std::ceil(2.0 / spec.m()));
  auto integrand = [&](double u) {
    const double s = std::pow(u, p);
    return s * spec.phi_second(s) * p * std::pow(u, p - 1);
  };
  const double u_end = std::pow(r, 1.0 / p);
  const double breaks[] = {1.0};  // phi'' kink at s = 1
  return integrate_with_breaks(integrand, 0.0, u_end, breaks, 1e-12) / r;
}

}  // namespace

TEST_CASE("construction validates the exponent") {
  CHECK_THROWS(PotentialSpec::power_glued(0.0));
  CHECK_THROWS(PotentialSpec::power_glued(0.5));
  CHECK_THROWS(PotentialSpec::power_glued(-0.1));
  CHECK_THROWS(PotentialSpec::power_glued(1.2));
  const auto s = PotentialSpec::power_glued(0.25);
  CHECK(s.eta() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(s.gamma() == doctest::Approx(10.5).epsilon(1e-14));
  for (double m : {0.01, 0.1, 0.25, 0.4, 0.49}) {
    const auto sp = PotentialSpec::power_glued(m);
    CHECK(sp.eta() > 0.0);
    CHECK(sp.eta() < 0.5);
    CHECK(sp.gamma() >= 6.0);
  }
}

TEST_CASE("phi gluing and frozen values") {
  const auto s = PotentialSpec::power_glued(0.25);
  CHECK(s.phi(1.0) == 0.0);
  CHECK(s.phi(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.phi(0.5) == doctest::Approx(0.18188578531352244).epsilon(1e-14));
  CHECK(s.phi(0.0) == doctest::Approx(1.0 / 0.25).epsilon(1e-14));
  CHECK_THROWS(s.phi(-0.1));
  // positive except at 1
  for (double r : {0.01, 0.3, 0.9, 1.1, 4.0}) CHECK(s.phi(r) > 0.0);
}

TEST_CASE("phi derivatives: gluing, frozen values, domain") {
  const auto s = PotentialSpec::power_glued(0.25);
  CHECK(s.phi_prime(1.0) == 0.0);
  CHECK(s.phi_second(1.0) == 1.0);
  CHECK(s.phi_prime(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.phi_second(3.0) == 1.0);
  CHECK(s.phi_prime(0.5) ==
        doctest::Approx(-0.9090571073432388).epsilon(1e-14));
  CHECK(s.phi_second(0.5) ==
        doctest::Approx(3.3635856610148582).epsilon(1e-14));
  CHECK_THROWS(s.phi_prime(0.0));
  CHECK_THROWS(s.phi_second(-1.0));
}

TEST_CASE("psi inverse: frozen values and branches") {
  const auto s = PotentialSpec::power_glued(0.25);
  CHECK(s.psi(0.0) == 1.0);
  CHECK(s.psi(2.5) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(s.psi_prime(2.5) == 1.0);
  CHECK(s.psi(-2.0) == doctest::Approx(0.29472251989123093).epsilon(1e-14));
  CHECK(std::abs(s.phi_prime(s.psi(-2.0)) + 2.0) <= 1e-12);
}

TEST_CASE("round trip psi(phi'(r)) = r on 1e4 samples") {
  CounterRng rng(42);
  for (double m : {0.1, 0.25, 0.4}) {
    const auto s = PotentialSpec::power_glued(m);
    for (int i = 0; i < 10000; ++i) {
      // log-uniform on (1e-6, 1e3)
      const double r = std::pow(10.0, -6.0 + 9.0 * rng.uniform(1, i));
      const double rt = s.psi(s.phi_prime(r));
      CHECK(std::abs(rt - r) <= 1e-9 * std::max(1.0, r));
    }
  }
}

TEST_CASE("finite differences match analytic derivatives at O(h^2)") {
  for (double m : {0.1, 0.25, 0.4}) {
    const auto s = PotentialSpec::power_glued(m);
    for (double r : {0.3, 0.6, 2.5, 7.0}) {
      // absolute floors cover the h ~ 1e-4 cancellation roundoff
      const double floor = 1e-10 * std::max(1.0, r);
      double err_prev = 0.0;
      for (double h : {1e-3, 1e-4}) {
        const double fd = (s.phi(r + h) - s.phi(r - h)) / (2.0 * h);
        const double err = std::abs(fd - s.phi_prime(r));
        if (h == 1e-3)
          err_prev = err;
        else
          CHECK(err <= std::max(err_prev / 25.0, floor));
      }
      err_prev = 0.0;
      for (double h : {1e-3, 1e-4}) {
        const double fd = (s.phi_prime(r + h) - s.phi_prime(r - h)) / (2.0 * h);
        const double err = std::abs(fd - s.phi_second(r));
        if (h == 1e-3)
          err_prev = err;
        else
          CHECK(err <= std::max(err_prev / 25.0, floor));
      }
    }
    for (double tau : {-3.0, -0.7, 0.8, 2.0}) {
      double err_prev = 0.0;
      for (double h : {1e-3, 1e-4}) {
        const double fd = (s.psi(tau + h) - s.psi(tau - h)) / (2.0 * h);
        const double err = std::abs(fd - s.psi_prime(tau));
        if (h == 1e-3)
          err_prev = err;
        else
          CHECK(err <= std::max(err_prev / 25.0, 1e-11));
      }
    }
  }
}

TEST_CASE("phi' is concave, phi'' positive") {
  const double h = 1e-4;
  for (double m : {0.1, 0.25, 0.4}) {
    const auto s = PotentialSpec::power_glued(m);
    for (double r : {0.2, 0.5, 0.9, 1.0, 1.5, 4.0}) {
      CHECK(s.phi_second(r) > 0.0);
      const double curv =
          (s.phi_prime(r + h) + s.phi_prime(r - h) - 2.0 * s.phi_prime(r)) /
          (h * h);
      CHECK(curv <= 1e-6);
    }
  }
}

TEST_CASE("alpha closed form: frozen values and quadrature agreement") {
  const auto s = PotentialSpec::power_glued(0.25);
  CHECK(s.alpha(1.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s.alpha(2.0) == doctest::Approx(2.75).epsilon(1e-14));
  CHECK_THROWS(s.alpha(0.0));
  for (double m : {0.1, 0.25, 0.4}) {
    const auto sp = PotentialSpec::power_glued(m);
    for (double r : {0.1, 1.0, 2.0, 10.0}) {
      const double closed = sp.alpha(r);
      const double quad = alpha_by_quadrature(sp, r);
      CHECK(std::abs(closed - quad) <= 1e-8 * std::abs(closed));
    }
  }
  // Boltzmann reference mode degenerates to unit diffusion
  const auto b = PotentialSpec::boltzmann();
  for (double r : {0.01, 1.0, 17.0}) CHECK(b.alpha(r) == 1.0);
}

TEST_CASE("theta: quadrature values and sign") {
  const auto s = PotentialSpec::power_glued(0.25);
  CHECK(s.theta(0.0, 1.0) == 0.0);
  CHECK(s.theta(1.0, 1.0) ==
        doctest::Approx(1.2189514164974601).epsilon(1e-10));
  CHECK(s.theta(0.5, 0.3) > 0.0);
  CHECK(s.theta(-0.5, 0.3) < 0.0);
  CHECK_THROWS(s.theta(1.0, 0.0));
}

TEST_CASE("theta lower bound via C1") {
  CounterRng rng(7);
  for (double m : {0.1, 0.25, 0.4}) {
    const auto s = PotentialSpec::power_glued(m);
    const double eta = s.eta();
    for (double mu_min : {0.05, 0.3, 1.0}) {
      const double c1 = s.lower_bound_constants(mu_min).c1;
      for (int i = 0; i < 1000; ++i) {
        const double r = -50.0 + 100.0 * rng.uniform(3, i);
        if (std::abs(r) < 1e-12) continue;
        const double lhs = c1 * std::abs(s.theta(r, mu_min));
        const double rhs =
            std::min(std::pow(std::abs(r), 1.5), std::pow(std::abs(r), eta));
        CHECK(lhs >= rhs * (1.0 - 1e-9));
      }
    }
  }
}

TEST_CASE("lower bound constants: frozen values and monotonicity") {
  const auto s = PotentialSpec::power_glued(0.25);
  const auto lb = s.lower_bound_constants(1.0);
  CHECK(lb.c0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lb.c1 == doctest::Approx(2.8816129631755237).epsilon(1e-13));
  CHECK(lb.c2 == doctest::Approx(std::pow(lb.c1, 6.0)).epsilon(1e-12));
  CHECK_THROWS(s.lower_bound_constants(1.5));
  CHECK_THROWS(s.lower_bound_constants(0.0));

  // C1 > 1 always, decreasing in mu_min
  const double c1a = s.lower_bound_constants(0.1).c1;
  const double c1b = s.lower_bound_constants(0.5).c1;
  const double c1c = s.lower_bound_constants(1.0).c1;
  CHECK(c1a == doctest::Approx(13.017433005885074).epsilon(1e-13));
  CHECK(c1b == doctest::Approx(4.2299859845234919).epsilon(1e-13));
  CHECK(c1a > c1b);
  CHECK(c1b > c1c);
  CHECK(c1c > 1.0);
  for (double m : {0.1, 0.4}) {
    const auto sp = PotentialSpec::power_glued(m);
    for (double mu : {0.01, 0.2, 0.8, 1.0})
      CHECK(sp.lower_bound_constants(mu).c1 > 1.0);
  }

  // c(beta) = c_factor / L
  CHECK(s.small_c(1.0, 2.0) ==
        doctest::Approx(lb.c_factor / 2.0).epsilon(1e-14));
}

TEST_CASE("rate functions") {
  const auto s = PotentialSpec::power_glued(0.25);
  CHECK(s.omega_big(1.0) == 1.0);
  CHECK(s.omega_big(0.25) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(s.omega_big(8.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.omega_big(0.0) == 0.0);
  CHECK_THROWS(s.omega_big(-1.0));

  // increasing
  double prev = -1.0;
  for (double r : {0.0, 0.2, 0.7, 1.0, 2.0, 50.0}) {
    CHECK(s.omega_big(r) >= prev);
    prev = s.omega_big(r);
  }

  // multiplicativity bound Omega(xy) <= x^{3/2} Omega(y)
  CounterRng rng(5);
  for (int i = 0; i < 500; ++i) {
    const double x = 1.0 + 49.0 * rng.uniform(11, i);
    const double y = 1e-3 + 50.0 * rng.uniform(12, i);
    CHECK(s.omega_big(x * y) <=
          std::pow(x, 1.5) * s.omega_big(y) * (1.0 + 1e-12));
  }

  // transport rate function branches
  CHECK(s.omega_small(0.5) ==
        doctest::Approx(1.6 * std::pow(0.5, 0.625)).epsilon(1e-13));
  const double right = 4.0 * (1.0 - 0.25) / (3.0 - 0.5);
  CHECK(s.omega_small(1.0) == doctest::Approx(right).epsilon(1e-13));
  MESSAGE("omega_small branch values at 1: left limit 1.6, right ", right);
}

TEST_CASE("Boltzmann reference mode") {
  const auto b = PotentialSpec::boltzmann();
  CHECK(b.is_boltzmann());
  CHECK(b.phi(1.0) == 0.0);
  CHECK(b.phi(0.0) == 1.0);
  CHECK(b.psi(0.0) == 1.0);
  CHECK(std::abs(b.psi(b.phi_prime(2.7)) - 2.7) <= 1e-12);
  CHECK_THROWS(b.theta(1.0, 0.5));
  CHECK_THROWS(b.lower_bound_constants(0.5));
  CHECK_THROWS(b.omega_big(1.0));
  CHECK_THROWS(b.eta());
}
