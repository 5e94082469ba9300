#pragma once

#include <cmath>
#include <algorithm>
#include <stdexcept>
#include <string>

namespace qsearch {

/// Raised when a fixed-step integration cannot be trusted or cannot run.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default fraction of the fastest period used as the step.
inline constexpr double kDefaultStepDivisor = 1000.0;
/// Number of recorded samples a default policy aims for.
inline constexpr long kDefaultSampleTarget = 4000;
inline constexpr long kDefaultMaxSteps = 400'000'000;

struct StepPolicy {
  double step = 0.0;
  long stride = 1;
  long max_steps = kDefaultMaxSteps;

  /**
   * h = min(2 pi / omega_max, pi / gamma) / divisor with omega_max clamped
   * below at 1, and a stride giving roughly `samples` records over `span`.
   */
  static StepPolicy resolving(double omega_max, double gamma, double span,
                              double divisor = kDefaultStepDivisor,
                              long samples = kDefaultSampleTarget) {
    constexpr double pi = 3.14159265358979323846;
    const double w = std::max(omega_max, 1.0);
    double shortest = 2.0 * pi / w;
    if (gamma > 0.0) shortest = std::min(shortest, pi / gamma);
    StepPolicy p;
    p.step = shortest / divisor;
    const double steps = std::ceil(span / p.step);
    p.stride = std::max(1L, static_cast<long>(std::ceil(steps / static_cast<double>(samples))));
    return p;
  }
};

/// Uniform grid t0 + k*h covering [t0, t_end] exactly; records every stride-th node and the last.
class TimeGrid {
 public:
  TimeGrid(double t0, double t_end, const StepPolicy& policy) : t0_(t0), stride_(policy.stride) {
    if (!(t_end > t0)) throw IntegrationError("t_end must exceed the start time");
    if (!(policy.step > 0.0)) throw IntegrationError("step must be positive");
    if (policy.stride < 1) throw IntegrationError("stride must be at least 1");
    const double raw = std::ceil((t_end - t0) / policy.step - 1e-9);
    if (raw > static_cast<double>(policy.max_steps)) {
      throw IntegrationError("step cap exceeded: " + std::to_string(static_cast<long>(raw)) +
                             " steps requested, cap " + std::to_string(policy.max_steps));
    }
    steps_ = std::max(1L, static_cast<long>(raw));
    step_ = (t_end - t0) / static_cast<double>(steps_);
    t_end_ = t_end;
  }

  long steps() const { return steps_; }
  double step() const { return step_; }
  long stride() const { return stride_; }
  double time(long k) const { return k == steps_ ? t_end_ : t0_ + step_ * static_cast<double>(k); }
  bool records(long k) const { return k % stride_ == 0 || k == steps_; }
  long sample_count() const { return steps_ / stride_ + 1 + (steps_ % stride_ != 0 ? 1 : 0); }

 private:
  double t0_;
  double t_end_ = 0.0;
  double step_ = 0.0;
  long steps_ = 0;
  long stride_;
};

/**
 * Classical fourth-order Runge-Kutta stepper with preallocated stages.
 * `State` is any Eigen vector type; `rhs(t, y, dy)` writes dy = f(t, y).
 */
template <typename State>
class Rk4Stepper {
 public:
  template <typename Rhs>
  void step(Rhs&& rhs, double t, double h, State& y) {
    const double half = 0.5 * h;
    rhs(t, y, k1_);
    tmp_ = y + half * k1_;
    rhs(t + half, tmp_, k2_);
    tmp_ = y + half * k2_;
    rhs(t + half, tmp_, k3_);
    tmp_ = y + h * k3_;
    rhs(t + h, tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  State k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace qsearch
