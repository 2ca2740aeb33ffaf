#include "swarmgrad/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "swarmgrad/numerics.hpp"

namespace swarmgrad {

Schedule Schedule::constant(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("schedule: beta must be > 0");
  Schedule s;
  s.kind = Kind::constant;
  s.beta0 = beta;
  return s;
}

Schedule Schedule::power(double k, double gamma, double t0) {
  if (!(k > 0.0) || !(gamma > 0.0) || !(t0 > 0.0))
    throw std::invalid_argument("schedule: k, gamma, t0 must be > 0");
  Schedule s;
  s.kind = Kind::power;
  s.k = k;
  s.gamma = gamma;
  s.t0 = t0;
  return s;
}

Schedule Schedule::power_exponent(double k, double alpha, double t0) {
  if (!(alpha > 0.0)) throw std::invalid_argument("schedule: alpha must be > 0");
  return power(k, 1.0 / alpha, t0);
}

double Schedule::beta_at(double t) const {
  if (kind == Kind::constant) return beta0;
  const double tt = std::max(t, t0);
  return k * pow_rt(tt, 1.0 / gamma);
}

double Schedule::beta_dot_at(double t) const {
  if (kind == Kind::constant || t < t0) return 0.0;
  return (k / gamma) * pow_rt(t, 1.0 / gamma - 1.0);
}

std::string Schedule::describe() const {
  if (kind == Kind::constant) return "constant(beta=" + format_double(beta0) + ")";
  return "power(k=" + format_double(k) + ", gamma=" + format_double(gamma) +
         ", t0=" + format_double(t0) + ")";
}

ScheduleReport validate_schedule(const Schedule& s,
                                 const std::function<double(double)>& c_of_beta,
                                 double horizon) {
  if (!(horizon > s.t0 * 4.0))
    throw std::invalid_argument("validate_schedule: horizon too short");

  ScheduleReport rep;
  const int samples = 48;
  const double q = std::pow(horizon / s.t0, 1.0 / (samples - 1));

  double t = s.t0;
  double integral = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double ratio = s.beta_dot_at(t) / c_of_beta(s.beta_at(t));
    rep.ratios.push_back({t, ratio});
    const double t_next = t * q;
    if (j + 1 < samples) {
      integral += integrate(
          [&](double tau) { return c_of_beta(s.beta_at(tau)); }, t, t_next,
          1e-12 * (t_next - t));
      rep.partials.push_back({t_next, integral});
    }
    t = t_next;
  }

  if (s.kind == Schedule::Kind::constant) {
    rep.no_cooling = true;
    rep.ratio_vanishes = true;  // beta_dot == 0
  } else {
    // Fit the log-log slope of the ratio over the tail; a passing schedule
    // has ratio ~ t^p with p < 0.
    const int tail = samples / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int j = tail; j < samples; ++j) {
      const double r = rep.ratios[j].ratio;
      if (r <= 0.0) continue;
      const double lx = std::log(rep.ratios[j].t);
      const double ly = std::log(r);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++cnt;
    }
    if (cnt < 4) {
      rep.ratio_vanishes = true;  // ratio identically ~0 on the tail
    } else {
      const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      const double r_first = rep.ratios[tail].ratio;
      const double r_last = rep.ratios[samples - 1].ratio;
      rep.ratio_vanishes = slope < -1e-3 && r_last < r_first;
    }
  }

  // The integral diverges when the per-doubling increments do not decay
  // geometrically. Fit the log2 slope of increments between partials.
  {
    const auto& ps = rep.partials;
    const int half = static_cast<int>(ps.size()) / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int j = half; j + 1 < static_cast<int>(ps.size()); ++j) {
      const double inc = ps[j + 1].integral - ps[j].integral;
      if (inc <= 0.0) continue;
      const double lx = static_cast<double>(j);
      const double ly = std::log(inc);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++cnt;
    }
    if (cnt < 4) {
      rep.integral_diverges = false;
    } else {
      const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      // increments ~ e^{slope j}; log-like divergence has slope ~ 0
      rep.integral_diverges = slope > -0.05;
    }
  }

  rep.pass = rep.ratio_vanishes && rep.integral_diverges;
  if (rep.no_cooling) {
    rep.message =
        "no cooling: converges only to the fixed-beta stationary density, "
        "not to min U";
  } else if (rep.pass) {
    rep.message = "schedule satisfies both convergence conditions";
  } else if (!rep.ratio_vanishes) {
    rep.message = "cooling too fast: beta_dot/c(beta) does not vanish";
  } else {
    rep.message = "dissipation integral saturates";
  }
  return rep;
}

}  // namespace swarmgrad
