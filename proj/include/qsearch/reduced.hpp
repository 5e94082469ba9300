#pragma once

#include "qsearch/dynamics.hpp"
#include "qsearch/model.hpp"
#include "qsearch/rk4.hpp"

namespace qsearch {

/// Two-level drive parameters: coupling gamma and detuning w - w21.
struct RabiParams {
  double gamma = 0.0;
  double detuning = 0.0;

  RabiParams(double gamma, double detuning);
  /// Generalised Rabi frequency sqrt(gamma^2 + detuning^2 / 4).
  double omega() const;
};

/// Rabi's formula for |c_1(t)|^2 starting from the upper level.
double rabi_population(const RabiParams& p, double t);

/// Resonant search setup: N states, coupling gamma, resonance frequency w_R = E.
struct ResonanceParams {
  Index dimension = 2;
  double gamma = 0.0;
  double omega_r = 0.0;

  ResonanceParams(Index dimension, double gamma, double omega_r);

  /// N gamma^2 / w_R^2, the quantity every large-N formula depends on.
  double load() const;
};

template <int Amplitudes>
using ReducedState = Eigen::Matrix<Complex, Amplitudes, 1>;
using ReducedTrialState = ReducedState<3>;
using ReducedOptState = ReducedState<4>;

/// Sampled rotating-frame amplitudes of a symmetry-reduced system.
template <int Amplitudes>
struct ReducedSeries {
  RealVector times;
  Eigen::Matrix<Complex, Amplitudes, Eigen::Dynamic> amplitudes;
  double max_norm_drift = 0.0;

  Index sample_count() const { return times.size(); }
  ReducedState<Amplitudes> state(Index sample) const { return amplitudes.col(sample); }

  /// |b_k|^2 for 1-based k.
  Series population(Index k) const {
    return {times, amplitudes.row(k - 1).cwiseAbs2().transpose()};
  }
};

/// Step policy for the reduced systems: resolves w_R (at least 1) and gamma sqrt(N-1).
StepPolicy reduced_policy(const ResonanceParams& p, double span);

/**
 * Three-amplitude system for the trial potential (ground |1>, start |2>):
 *   i b1' = g b2
 *   i b2' = g b1 + (N-2) g e^{-i wR t} b3
 *   i b3' = g e^{i wR t} b2
 * conserving |b1|^2 + |b2|^2 + (N-2)|b3|^2.
 */
ReducedSeries<3> evolve_reduced_trial(const ResonanceParams& p, double t_end,
                                      const StepPolicy& policy);
ReducedSeries<3> evolve_reduced_trial(const ResonanceParams& p, double t_end);

/**
 * Four-amplitude system for the odd-phase potential, odd and even
 * spectators each with multiplicity (N-2)/2:
 *   i b2' = g b1 + (N-2)/2 g (e^{-i wR t} b3 + e^{i wR t} b4)
 *   i b3' = g e^{i wR t} b2,   i b4' = g e^{-i wR t} b2
 */
ReducedSeries<4> evolve_reduced_opt(const ResonanceParams& p, double t_end,
                                    const StepPolicy& policy);
ReducedSeries<4> evolve_reduced_opt(const ResonanceParams& p, double t_end);

/// Large-N closed form -i wR / S sin(g wR t / S), S = sqrt(N g^2 + wR^2).
Complex approx_b1(const ResonanceParams& p, double t);

/// 1 / (1 + N g^2 / wR^2)
double peak_probability(const ResonanceParams& p);

/// pi sqrt(1 + N g^2 / wR^2) / g
double oscillation_period(const ResonanceParams& p);

/// First maximum of the large-N closed form, (pi / 2g) sqrt(1 + N g^2 / wR^2).
double corrected_peak_time(const ResonanceParams& p);

/// Time and energy accounting for the optimized search at one parameter point.
struct ComplexityReport {
  double predicted_pr = 0.0;
  double period = 0.0;
  /// tau / Pr
  double total_time = 0.0;
  /// wR + g sqrt(N-1)
  double energy = 0.0;
  double time_energy = 0.0;
  /// c in Pr = 1 / (1 + c N E^-2 T^-2) realised by this point.
  double realized_c = 0.0;
};

ComplexityReport complexity_report(const ResonanceParams& p);

}  // namespace qsearch
