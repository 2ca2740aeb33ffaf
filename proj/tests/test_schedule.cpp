#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "swarmgrad/numerics.hpp"
#include "swarmgrad/schedule.hpp"

using namespace swarmgrad;

namespace {

// c(beta) = kappa beta^{-g}
std::function<double(double)> power_rate(double kappa, double g) {
  return [kappa, g](double beta) { return kappa * pow_rt(beta, -g); };
}

}  // namespace

TEST_CASE("constant schedule") {
  const auto s = Schedule::constant(7.0);
  CHECK(s.beta_at(0.0) == 7.0);
  CHECK(s.beta_at(123.0) == 7.0);
  CHECK(s.beta_dot_at(5.0) == 0.0);
  CHECK_THROWS(Schedule::constant(0.0));
}

TEST_CASE("power schedule: frozen value and clamping") {
  const auto s = Schedule::power(1.0, 10.5, 1.0);
  CHECK(s.beta_at(1024.0) ==
        doctest::Approx(1.9350635570477833).epsilon(1e-13));
  CHECK(s.beta_at(0.5) == s.beta_at(1.0));  // clamped below t0
  CHECK(s.beta_dot_at(0.5) == 0.0);
  CHECK(s.beta_at(2.0) > s.beta_at(1.5));
  const auto se = Schedule::power_exponent(1.0, 1.0 / 10.5, 1.0);
  CHECK(se.beta_at(1024.0) == doctest::Approx(s.beta_at(1024.0)).epsilon(1e-14));
}

TEST_CASE("power schedule derivative matches finite differences") {
  const auto s = Schedule::power(2.0, 8.0, 1.0);
  for (double t : {2.0, 10.0, 1e4}) {
    double err_prev = 0.0;
    for (double h : {1e-3 * t, 1e-4 * t}) {
      const double fd = (s.beta_at(t + h) - s.beta_at(t - h)) / (2.0 * h);
      const double err = std::abs(fd - s.beta_dot_at(t));
      if (h == 1e-3 * t)
        err_prev = err;
      else
        CHECK(err <= std::max(err_prev / 25.0, 1e-13));
    }
  }
}

TEST_CASE("validate: slow power schedule passes") {
  const double g = 10.5;  // dissipation decay exponent
  const double alpha = 0.9 / (1.0 + g);
  const auto s = Schedule::power_exponent(1.0, alpha, 1.0);
  const auto rep = validate_schedule(s, power_rate(1.0, g), 1e9);
  CHECK(rep.ratio_vanishes);
  CHECK(rep.integral_diverges);
  CHECK(rep.pass);
  CHECK_FALSE(rep.no_cooling);
  // the sampled ratio decreases toward zero
  CHECK(rep.ratios.back().ratio < rep.ratios[rep.ratios.size() / 2].ratio);
  // partial integrals keep growing
  const auto& ps = rep.partials;
  CHECK(ps.back().integral > ps[ps.size() / 2].integral * 1.5);
}

TEST_CASE("validate: too-fast power schedule fails the ratio condition") {
  const double g = 10.5;
  const double alpha = 2.0 / (1.0 + g);
  const auto s = Schedule::power_exponent(1.0, alpha, 1.0);
  const auto rep = validate_schedule(s, power_rate(1.0, g), 1e9);
  CHECK_FALSE(rep.ratio_vanishes);
  CHECK_FALSE(rep.pass);
  // ratio grows like t^{alpha (1+g) - 1} = t
  CHECK(rep.ratios.back().ratio > rep.ratios[rep.ratios.size() / 2].ratio);
}

TEST_CASE("validate: constant schedule passes with the no-cooling flag") {
  const auto s = Schedule::constant(5.0);
  const auto rep = validate_schedule(s, power_rate(1.0, 10.5), 1e9);
  CHECK(rep.pass);
  CHECK(rep.no_cooling);
  CHECK(rep.message.find("no cooling") != std::string::npos);
}

TEST_CASE("exponent 1/gamma sits outside the admissible range") {
  // With c(beta) ~ beta^{-gamma}, beta(t) = k t^{1/gamma} gives
  // beta_dot/c ~ t^{1/gamma}: condition (1) fails even though the
  // dissipation integral still diverges logarithmically.
  const double g = 10.5;
  const auto s = Schedule::power(1.0, g, 1.0);
  const auto rep = validate_schedule(s, power_rate(1.0, g), 1e9);
  CHECK(rep.integral_diverges);
  CHECK_FALSE(rep.ratio_vanishes);
  CHECK_FALSE(rep.pass);
  const double r1 = rep.ratios[rep.ratios.size() / 2].ratio;
  const double r2 = rep.ratios.back().ratio;
  const double t1 = rep.ratios[rep.ratios.size() / 2].t;
  const double t2 = rep.ratios.back().t;
  // measured growth exponent ~ 1/gamma
  const double slope = std::log(r2 / r1) / std::log(t2 / t1);
  CHECK(slope == doctest::Approx(1.0 / g).epsilon(0.05));
}

TEST_CASE("validation rejects short horizons") {
  const auto s = Schedule::power(1.0, 10.5, 1.0);
  CHECK_THROWS(validate_schedule(s, power_rate(1.0, 10.5), 2.0));
}
