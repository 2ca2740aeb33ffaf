#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "swarmgrad/landscape.hpp"
#include "swarmgrad/numerics.hpp"

using namespace swarmgrad;

namespace {

int count_local_minima(const Landscape& l, int n) {
  int minima = 0;
  for (int i = 0; i < n; ++i) {
    const double um = l.u1(((i + n - 1) % n) * l.period / n);
    const double u0 = l.u1(i * l.period / n);
    const double up = l.u1(((i + 1) % n) * l.period / n);
    if (u0 < um && u0 < up) ++minima;
  }
  return minima;
}

}  // namespace

TEST_CASE("wrap and displacement") {
  CHECK(wrap_coordinate(0.3, 1.0) == 0.3);
  CHECK(wrap_coordinate(1.3, 1.0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(wrap_coordinate(-0.2, 1.0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(wrap_coordinate(wrap_coordinate(-5.7, 1.0), 1.0) ==
        wrap_coordinate(-5.7, 1.0));
  CHECK(wrap_coordinate(1.0, 1.0) == 0.0);
  CHECK(torus_displacement(0.9, 0.1, 1.0) == doctest::Approx(-0.2));
  CHECK(torus_displacement(0.1, 0.9, 1.0) == doctest::Approx(0.2));
  CHECK(torus_displacement(0.5, 0.25, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("constant landscape") {
  const auto l = builtin_landscape("constant", {.u0 = 3.0});
  CHECK(l.osc == 0.0);
  CHECK(l.u1(0.37) == 3.0);
  CHECK(l.du1(0.37) == 0.0);
  CHECK(oscillation(l, 256) == 0.0);
  CHECK_THROWS(builtin_landscape("constant", {.u0 = -1.0}));
  CHECK_THROWS(builtin_landscape("no_such_landscape"));
}

TEST_CASE("single_cos: analytic extremes") {
  const auto l = builtin_landscape("single_cos");
  CHECK(std::abs(oscillation(l, 4096) - 2.0) <= 1e-6);
  CHECK(l.u1(0.0) == 0.0);
  CHECK(l.global_min[0] == 0.0);
  CHECK(count_local_minima(l, 4096) == 1);
}

TEST_CASE("two_well: exactly two minima, one global") {
  const auto l = builtin_landscape("two_well", {.a = 1.0, .b = 0.55});
  CHECK(count_local_minima(l, 4096) == 2);
  CHECK(l.u1(0.0) == 0.0);
  CHECK(l.u1(0.5) == doctest::Approx(2.0).epsilon(1e-12));
  // oscillation: refined-scan oracle; exact max is 2.1 - c - 1.1 c^2 at
  // cos(2 pi x) = c = -1/2.2
  const double exact = 2.1 + 1.0 / 2.2 - 1.1 / (2.2 * 2.2);
  CHECK(std::abs(oscillation(l, 1 << 20) - exact) <= 1e-9);
  // monotone nondecreasing under refinement
  CHECK(oscillation(l, 512) <= oscillation(l, 2048));
  CHECK(oscillation(l, 2048) <= oscillation(l, 1 << 20));
}

TEST_CASE("three_well_asym: three asymmetric minima") {
  const auto l = builtin_landscape("three_well_asym");
  CHECK(count_local_minima(l, 4096) == 3);
  CHECK(l.u1(l.global_min[0]) <= 1e-12);
  CHECK(l.osc > 0.5);
}

TEST_CASE("random_trig: nonnegative, seeded, deterministic") {
  const auto a = builtin_landscape("random_trig", {.seed = 7});
  const auto b = builtin_landscape("random_trig", {.seed = 7});
  const auto c = builtin_landscape("random_trig", {.seed = 8});
  double min_a = 1e300;
  for (int i = 0; i < 65536; ++i) {
    const double x = i / 65536.0;
    min_a = std::min(min_a, a.u1(x));
    CHECK(a.u1(x) == b.u1(x));
  }
  CHECK(min_a >= -1e-9);
  CHECK(std::abs(min_a) <= 1e-9);
  CHECK(a.u1(0.123) != c.u1(0.123));
  CHECK(a.osc > 0.0);
}

TEST_CASE("gradients match central differences") {
  CounterRng rng(11);
  const double h = 1e-5;
  int k = 0;
  for (const char* name :
       {"single_cos", "two_well", "three_well_asym", "random_trig"}) {
    const auto l = builtin_landscape(name);
    for (int i = 0; i < 100; ++i) {
      const double x = l.period * rng.uniform(1, ++k);
      const double fd = (l.u1(x + h) - l.u1(x - h)) / (2.0 * h);
      CHECK(std::abs(fd - l.du1(x)) <=
            1e-6 * std::max(1.0, std::abs(l.du1(x))));
    }
  }
}

TEST_CASE("periodicity") {
  CounterRng rng(13);
  for (const char* name : {"single_cos", "two_well", "random_trig"}) {
    const auto l = builtin_landscape(name);
    for (int i = 0; i < 50; ++i) {
      const double x = l.period * rng.uniform(2, i);
      CHECK(std::abs(l.u1(x) - l.u1(x + l.period)) <= 1e-12);
    }
  }
}

TEST_CASE("nonunit perimeter") {
  const auto l = builtin_landscape("two_well", {.L = 2.5});
  CHECK(l.period == 2.5);
  CHECK(std::abs(l.u1(0.3) - l.u1(0.3 + 2.5)) <= 1e-12);
  CHECK(l.u1(1.25) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(oscillation(l, 8192) -
                 oscillation(builtin_landscape("two_well"), 8192)) <= 1e-9);
}
