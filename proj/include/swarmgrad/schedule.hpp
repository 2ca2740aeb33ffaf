#pragma once

#include <functional>
#include <string>
#include <vector>

namespace swarmgrad {

// Penalty (inverse-temperature) schedule. The power kind is
// beta(t) = k t^{1/gamma} for t >= t0, clamped at beta(t0) below t0.
struct Schedule {
  enum class Kind { constant, power };

  Kind kind = Kind::constant;
  double beta0 = 1.0;  // constant kind
  double k = 1.0;      // power kind scale
  double gamma = 10.5; // power kind: exponent is 1/gamma
  double t0 = 1.0;

  static Schedule constant(double beta);
  static Schedule power(double k, double gamma, double t0 = 1.0);
  // Power schedule given the exponent alpha = 1/gamma directly.
  static Schedule power_exponent(double k, double alpha, double t0 = 1.0);

  double beta_at(double t) const;
  double beta_dot_at(double t) const;
  std::string describe() const;
};

// Numerical check of the two convergence conditions on a schedule, for a
// given positive decreasing dissipation-rate map beta -> c(beta):
//   (1) beta_dot(t) / c(beta(t)) -> 0,
//   (2) integral of c(beta(t)) dt diverges.
struct ScheduleReport {
  struct RatioSample {
    double t;
    double ratio;
  };
  struct IntegralSample {
    double T;
    double integral;
  };
  std::vector<RatioSample> ratios;      // at geometric times
  std::vector<IntegralSample> partials; // cumulative integral from t0
  bool ratio_vanishes = false;
  bool integral_diverges = false;
  bool no_cooling = false;  // constant schedule: valid, but converges only
                            // to the fixed-beta stationary density
  bool pass = false;
  std::string message;
};

ScheduleReport validate_schedule(const Schedule& s,
                                 const std::function<double(double)>& c_of_beta,
                                 double horizon);

}  // namespace swarmgrad
