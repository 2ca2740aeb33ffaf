#include "swarmgrad/numerics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarmgrad {

double pow_rt(double base, double expo) {
  if (base == 0.0) {
    if (expo > 0.0) return 0.0;
    if (expo == 0.0) return 1.0;
    return std::numeric_limits<double>::infinity();
  }
  if (base == 1.0 || expo == 0.0) return 1.0;
  if (expo == 1.0) return base;
  return std::exp(expo * std::log(base));
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1,1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = hw * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  resk *= hw;
  resg *= hw;
  return {resk, std::abs(resk - resg)};
}

double integrate_panel(const std::function<double(double)>& f, double a,
                       double b, double abs_tol) {
  struct Segment {
    double a, b, tol;
    int depth;
  };
  std::vector<Segment> stack;
  stack.push_back({a, b, abs_tol, 0});
  double total = 0.0;
  while (!stack.empty()) {
    Segment s = stack.back();
    stack.pop_back();
    PanelResult r = gk15(f, s.a, s.b);
    if (r.err <= s.tol || s.depth >= 52) {
      total += r.kronrod;
    } else {
      const double mid = 0.5 * (s.a + s.b);
      stack.push_back({s.a, mid, 0.5 * s.tol, s.depth + 1});
      stack.push_back({mid, s.b, 0.5 * s.tol, s.depth + 1});
    }
  }
  return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, abs_tol);
  return integrate_panel(f, a, b, abs_tol);
}

double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::span<const double> breaks,
                             double abs_tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_with_breaks(f, b, a, breaks, abs_tol);
  std::vector<double> pts;
  pts.push_back(a);
  for (double p : breaks)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  const double per_panel = abs_tol / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate_panel(f, pts[i], pts[i + 1], per_panel);
  return total;
}

void solve_periodic_tridiagonal(std::span<const double> lower,
                                std::span<const double> diag,
                                std::span<const double> upper,
                                std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (n < 3) throw std::invalid_argument("periodic tridiagonal needs n >= 3");

  // Sherman-Morrison: strip the wrap entries lower[0] and upper[n-1] into a
  // rank-one correction, then two Thomas solves.
  static thread_local std::vector<double> b1, u, cp, dp;
  b1.assign(diag.begin(), diag.end());
  u.assign(n, 0.0);
  const double gamma = -diag[0];
  b1[0] -= gamma;
  b1[n - 1] -= lower[0] * upper[n - 1] / gamma;
  u[0] = gamma;
  u[n - 1] = upper[n - 1];

  cp.resize(n);
  dp.resize(n);
  auto thomas = [&](std::span<double> x) {
    cp[0] = upper[0] / b1[0];
    x[0] /= b1[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double m = b1[i] - lower[i] * cp[i - 1];
      cp[i] = upper[i] / m;
      x[i] = (x[i] - lower[i] * x[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
  };

  thomas(rhs);
  std::vector<double>& z = dp;
  z.assign(u.begin(), u.end());
  thomas(z);

  const double vy = rhs[0] + lower[0] / gamma * rhs[n - 1];
  const double vz = z[0] + lower[0] / gamma * z[n - 1];
  const double factor = vy / (1.0 + vz);
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= factor * z[i];
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) const {
  std::uint64_t h = mix64(seed_ ^ 0x8f1bbcdcbfa53e0bULL);
  h = mix64(h ^ (a * 0xff51afd7ed558ccdULL));
  h = mix64(h ^ (b * 0xc4ceb9fe1a85ec53ULL));
  h = mix64(h ^ (c * 0x2545f4914f6cdd1dULL));
  return h;
}

double CounterRng::uniform(std::uint64_t a, std::uint64_t b,
                           std::uint64_t c) const {
  const std::uint64_t x = bits(a, b, c);
  return static_cast<double>(x >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double CounterRng::normal(std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) const {
  const double u1 = uniform(a, b, 2 * c);
  const double u2 = uniform(a, b, 2 * c + 1);
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

}  // namespace swarmgrad
