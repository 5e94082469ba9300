#include "qsearch/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qsearch {

namespace {

constexpr Complex kI{0.0, 1.0};

template <int M, typename Rhs>
ReducedSeries<M> integrate_reduced(Rhs&& rhs, const Eigen::Matrix<double, M, 1>& weights,
                                   double t_end, const StepPolicy& policy) {
  const TimeGrid grid(0.0, t_end, policy);
  ReducedSeries<M> out;
  out.times.resize(grid.sample_count());
  out.amplitudes.resize(M, grid.sample_count());

  ReducedState<M> b = ReducedState<M>::Zero();
  b(1) = 1.0;
  Rk4Stepper<ReducedState<M>> stepper;
  Index sample = 0;
  out.times(sample) = 0.0;
  out.amplitudes.col(sample++) = b;
  double drift = 0.0;

  for (long k = 1; k <= grid.steps(); ++k) {
    stepper.step(rhs, grid.time(k - 1), grid.step(), b);
    drift = std::max(drift, std::abs(weights.dot(b.cwiseAbs2()) - 1.0));
    if (!(drift <= kNormRejectThreshold)) {
      throw IntegrationError("reduced norm drift " + std::to_string(drift) +
                             " exceeds tolerance; reduce the step");
    }
    if (grid.records(k)) {
      out.times(sample) = grid.time(k);
      out.amplitudes.col(sample++) = b;
    }
  }
  out.max_norm_drift = drift;
  return out;
}

}  // namespace

RabiParams::RabiParams(double gamma_, double detuning_) : gamma(gamma_), detuning(detuning_) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ModelError("Rabi gamma must be positive");
  if (!std::isfinite(detuning)) throw ModelError("Rabi detuning must be finite");
}

double RabiParams::omega() const { return std::sqrt(gamma * gamma + 0.25 * detuning * detuning); }

double rabi_population(const RabiParams& p, double t) {
  const double w = p.omega();
  const double s = std::sin(w * t);
  return (p.gamma * p.gamma) / (w * w) * s * s;
}

ResonanceParams::ResonanceParams(Index dimension_, double gamma_, double omega_r_)
    : dimension(dimension_), gamma(gamma_), omega_r(omega_r_) {
  if (dimension < 2) throw ModelError("resonance setup needs N >= 2");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ModelError("gamma must be positive");
  if (!(omega_r > 0.0) || !std::isfinite(omega_r)) throw ModelError("omega_R must be positive");
}

double ResonanceParams::load() const {
  return static_cast<double>(dimension) * gamma * gamma / (omega_r * omega_r);
}

StepPolicy reduced_policy(const ResonanceParams& p, double span) {
  const double arms = static_cast<double>(std::max<Index>(p.dimension - 1, 1));
  return StepPolicy::resolving(p.omega_r, p.gamma * std::sqrt(arms), span);
}

ReducedSeries<3> evolve_reduced_trial(const ResonanceParams& p, double t_end,
                                      const StepPolicy& policy) {
  const double g = p.gamma;
  const double w = p.omega_r;
  const double spectators = static_cast<double>(p.dimension - 2);
  auto rhs = [=](double t, const ReducedTrialState& b, ReducedTrialState& db) {
    const Complex up = std::polar(1.0, w * t);
    db(0) = -kI * g * b(1);
    db(1) = -kI * g * (b(0) + spectators * std::conj(up) * b(2));
    db(2) = -kI * g * up * b(1);
  };
  const Eigen::Vector3d weights(1.0, 1.0, spectators);
  return integrate_reduced<3>(rhs, weights, t_end, policy);
}

ReducedSeries<3> evolve_reduced_trial(const ResonanceParams& p, double t_end) {
  return evolve_reduced_trial(p, t_end, reduced_policy(p, t_end));
}

ReducedSeries<4> evolve_reduced_opt(const ResonanceParams& p, double t_end,
                                    const StepPolicy& policy) {
  const double g = p.gamma;
  const double w = p.omega_r;
  const double half = 0.5 * static_cast<double>(p.dimension - 2);
  auto rhs = [=](double t, const ReducedOptState& b, ReducedOptState& db) {
    const Complex up = std::polar(1.0, w * t);
    const Complex down = std::conj(up);
    db(0) = -kI * g * b(1);
    db(1) = -kI * g * (b(0) + half * (down * b(2) + up * b(3)));
    db(2) = -kI * g * up * b(1);
    db(3) = -kI * g * down * b(1);
  };
  const Eigen::Vector4d weights(1.0, 1.0, half, half);
  return integrate_reduced<4>(rhs, weights, t_end, policy);
}

ReducedSeries<4> evolve_reduced_opt(const ResonanceParams& p, double t_end) {
  return evolve_reduced_opt(p, t_end, reduced_policy(p, t_end));
}

Complex approx_b1(const ResonanceParams& p, double t) {
  const double s = std::sqrt(static_cast<double>(p.dimension) * p.gamma * p.gamma +
                             p.omega_r * p.omega_r);
  return -kI * (p.omega_r / s) * std::sin(p.gamma * p.omega_r * t / s);
}

double peak_probability(const ResonanceParams& p) { return 1.0 / (1.0 + p.load()); }

double oscillation_period(const ResonanceParams& p) {
  return std::numbers::pi * std::sqrt(1.0 + p.load()) / p.gamma;
}

double corrected_peak_time(const ResonanceParams& p) { return 0.5 * oscillation_period(p); }

ComplexityReport complexity_report(const ResonanceParams& p) {
  ComplexityReport r;
  r.predicted_pr = peak_probability(p);
  r.period = oscillation_period(p);
  r.total_time = r.period / r.predicted_pr;
  r.energy = p.omega_r + p.gamma * std::sqrt(static_cast<double>(p.dimension - 1));
  r.time_energy = r.total_time * r.energy;
  const double n = static_cast<double>(p.dimension);
  r.realized_c = (1.0 / r.predicted_pr - 1.0) * r.energy * r.energy * r.total_time *
                 r.total_time / n;
  return r;
}

}  // namespace qsearch
