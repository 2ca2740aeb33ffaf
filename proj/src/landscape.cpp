#include "swarmgrad/landscape.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "swarmgrad/numerics.hpp"

namespace swarmgrad {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kOscGrid = 1 << 16;

struct TrigCoeffs {
  std::vector<double> cos_c;  // index k-1 holds the coefficient of cos(2pi k x)
  std::vector<double> sin_c;
  double shift = 0.0;  // subtracted so that min U = 0
  double L = 1.0;

  double eval_raw(double x) const {
    const double w = kTwoPi * x / L;
    double s = 0.0;
    for (std::size_t k = 0; k < cos_c.size(); ++k) {
      const double kk = static_cast<double>(k + 1);
      s += cos_c[k] * std::cos(kk * w) + sin_c[k] * std::sin(kk * w);
    }
    return s;
  }
  double eval(double x) const { return eval_raw(x) - shift; }
  double deriv(double x) const {
    const double w = kTwoPi * x / L;
    double s = 0.0;
    for (std::size_t k = 0; k < cos_c.size(); ++k) {
      const double kk = static_cast<double>(k + 1);
      s += kk * (-cos_c[k] * std::sin(kk * w) + sin_c[k] * std::cos(kk * w));
    }
    return s * kTwoPi / L;
  }
};

// Golden-section refinement of a local minimum bracketed by [lo, hi].
double golden_minimize(const std::function<double(double)>& f, double lo,
                       double hi) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Finds the global minimum of a smooth periodic function: dense scan, then
// golden-section polish around every sampled local minimum.
std::pair<double, double> global_minimum_1d(
    const std::function<double(double)>& f, double L) {
  const int n = 1 << 17;
  const double dx = L / n;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = f(i * dx);
  double best_x = 0.0, best_v = v[0];
  for (int i = 0; i < n; ++i) {
    const double vm = v[(i + n - 1) % n], vp = v[(i + 1) % n];
    if (v[i] <= vm && v[i] <= vp) {
      const double x = golden_minimize(f, (i - 1) * dx, (i + 1) * dx);
      const double fx = f(x);
      if (fx < best_v) {
        best_v = fx;
        best_x = x;
      }
    }
  }
  return {wrap_coordinate(best_x, L), best_v};
}

Landscape from_trig(TrigCoeffs c, const std::string& name) {
  auto raw = [c](double x) { return c.eval_raw(x); };
  auto [argmin, minval] = global_minimum_1d(raw, c.L);
  c.shift = minval;

  Landscape l;
  l.dim = 1;
  l.period = c.L;
  l.name = name;
  l.value = [c](std::span<const double> x) { return c.eval(x[0]); };
  l.gradient = [c](std::span<const double> x, std::span<double> g) {
    g[0] = c.deriv(x[0]);
  };
  l.global_min = {argmin};
  l.osc = oscillation(l, kOscGrid);
  return l;
}

}  // namespace

double wrap_coordinate(double x, double period) {
  double y = x - period * std::floor(x / period);
  if (y >= period) y -= period;  // guards the x = -eps rounding case
  if (y < 0.0) y = 0.0;
  return y;
}

double torus_displacement(double a, double b, double period) {
  double d = a - b;
  d -= period * std::round(d / period);
  if (d < -0.5 * period) d += period;
  if (d >= 0.5 * period) d -= period;
  return d;
}

Landscape builtin_landscape(const std::string& name,
                            const LandscapeParams& p) {
  if (!(p.L > 0.0)) throw std::invalid_argument("landscape: period must be > 0");
  const double L = p.L;

  if (name == "constant") {
    if (p.u0 < 0.0)
      throw std::invalid_argument("landscape: constant level must be >= 0");
    Landscape l;
    l.dim = 1;
    l.period = L;
    l.name = name;
    const double u0 = p.u0;
    l.value = [u0](std::span<const double>) { return u0; };
    l.gradient = [](std::span<const double>, std::span<double> g) {
      g[0] = 0.0;
    };
    l.osc = 0.0;
    l.global_min = {0.0};
    return l;
  }

  if (name == "single_cos") {
    Landscape l;
    l.dim = 1;
    l.period = L;
    l.name = name;
    l.value = [L](std::span<const double> x) {
      return 1.0 - std::cos(kTwoPi * x[0] / L);
    };
    l.gradient = [L](std::span<const double> x, std::span<double> g) {
      g[0] = (kTwoPi / L) * std::sin(kTwoPi * x[0] / L);
    };
    l.global_min = {0.0};
    l.osc = oscillation(l, kOscGrid);
    return l;
  }

  if (name == "two_well") {
    const double a = p.a, b = p.b;
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("landscape: two_well needs a, b > 0");
    Landscape l;
    l.dim = 1;
    l.period = L;
    l.name = name;
    l.value = [L, a, b](std::span<const double> x) {
      const double w = kTwoPi * x[0] / L;
      return a * (1.0 - std::cos(w)) + b * (1.0 - std::cos(2.0 * w));
    };
    l.gradient = [L, a, b](std::span<const double> x, std::span<double> g) {
      const double w = kTwoPi * x[0] / L;
      g[0] = (kTwoPi / L) * (a * std::sin(w) + 2.0 * b * std::sin(2.0 * w));
    };
    l.global_min = {0.0};
    l.osc = oscillation(l, kOscGrid);
    return l;
  }

  if (name == "three_well_asym") {
    // Third-harmonic wells near 0, 1/3 and 2/3, tilted so the three depths
    // differ; the constant offset is absorbed by the min shift.
    TrigCoeffs c;
    c.L = L;
    c.cos_c = {-0.5, 0.0, -0.4};
    c.sin_c = {0.25, 0.0, 0.0};
    return from_trig(std::move(c), name);
  }

  if (name == "random_trig") {
    TrigCoeffs c;
    c.L = L;
    CounterRng rng(p.seed);
    for (int k = 1; k <= p.order; ++k) {
      const double scale = p.amp / (k * k);
      c.cos_c.push_back(scale * rng.normal(0x4c, k));
      c.sin_c.push_back(scale * rng.normal(0x53, k));
    }
    return from_trig(std::move(c), name);
  }

  throw std::invalid_argument("unknown landscape: " + name);
}

double oscillation(const Landscape& l, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("oscillation: grid_n must be >= 2");
  const double dx = l.period / grid_n;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < grid_n; ++i) {
    const double u = l.u1(i * dx);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  return hi - lo;
}

}  // namespace swarmgrad
