#pragma once

#include <functional>
#include <optional>

#include "qsearch/model.hpp"
#include "qsearch/rk4.hpp"

namespace qsearch {

/// Norm drift beyond which an integration is rejected outright.
inline constexpr double kNormRejectThreshold = 1e-6;

/// Sampled solution of i dpsi/dt = (H + V(t)) psi. Column k of `amplitudes` is the state at times(k).
struct Trajectory {
  RealVector times;
  Eigen::MatrixXcd amplitudes;
  HamiltonianSpec hamiltonian;
  /// max over every integration node of | ||psi||^2 - 1 |.
  double max_norm_drift = 0.0;
  /// True when amplitudes hold rotating-frame b_k = e^{iE_k t} c_k.
  bool rotating = false;

  Index sample_count() const { return times.size(); }
  Index dimension() const { return amplitudes.rows(); }
  StateVector state(Index sample) const { return {amplitudes.col(sample), times(sample)}; }
  StateVector final_state() const { return state(sample_count() - 1); }
};

/// out = V(t) psi. Used to plug arbitrary star drives into the integrator.
using PotentialAction = std::function<void(double, const ComplexVector&, ComplexVector&)>;

/// Step policy resolving the fastest of {w, max E_j, 1} and the star norm gamma sqrt(N-1).
StepPolicy default_policy(const HamiltonianSpec& h, const PerturbationSpec& v, double span);

Trajectory evolve(const HamiltonianSpec& h, const PerturbationSpec& v, const StateVector& initial,
                  double t_end, const StepPolicy& policy);
Trajectory evolve(const HamiltonianSpec& h, const PerturbationSpec& v, const StateVector& initial,
                  double t_end);

/// Same integrator with a caller-supplied potential action.
Trajectory evolve_with(const HamiltonianSpec& h, const PotentialAction& potential,
                       const StateVector& initial, double t_end, const StepPolicy& policy);

/// b_k(t) = e^{i E_k t} c_k(t).
Trajectory rotating_frame(const Trajectory& traj);

/// A real-valued time series.
struct Series {
  RealVector t;
  RealVector values;

  Index size() const { return t.size(); }
};

/// |c_k(t)|^2 for 1-based label k.
Series population(const Trajectory& traj, Index label);

struct Peak {
  double t = 0.0;
  double value = 0.0;
  Index sample = 0;
};

/**
 * Global maximum over samples, first occurrence on ties. With `refine`, a
 * parabola through the bracketing samples locates the vertex.
 */
Peak peak_scan(const Series& series, bool refine = true);

/**
 * Maximum of the earliest interior lobe reaching `fraction` of the global
 * maximum. A lobe ends where the series falls below half that level.
 */
Peak first_peak(const Series& series, double fraction = 0.9, bool refine = true);

/// One peak per interior lobe at or above `fraction` of the global maximum.
std::vector<Peak> major_peaks(const Series& series, double fraction = 0.9, bool refine = true);

/// Mean spacing of consecutive major peaks; empty with fewer than two.
std::optional<double> peak_spacing(const Series& series, double fraction = 0.9);

}  // namespace qsearch
