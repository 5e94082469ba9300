#include "qsearch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsearch {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

Peak refine_vertex(const Series& s, Index i) {
  Peak p{s.t(i), s.values(i), i};
  if (i == 0 || i + 1 >= s.size()) return p;
  // Parabola in coordinates centred on sample i.
  const double x0 = s.t(i - 1) - s.t(i);
  const double x2 = s.t(i + 1) - s.t(i);
  const double y0 = s.values(i - 1);
  const double y1 = s.values(i);
  const double y2 = s.values(i + 1);
  const double d0 = (y0 - y1) / x0;
  const double d2 = (y2 - y1) / x2;
  const double a = (d2 - d0) / (x2 - x0);
  if (!(a < 0.0)) return p;
  const double b = d0 - a * x0;
  const double xv = std::clamp(-b / (2.0 * a), x0, x2);
  p.t = s.t(i) + xv;
  p.value = y1 + b * xv + a * xv * xv;
  return p;
}

// Argmax of each maximal run of samples at or above `threshold`, skipping
// runs whose maximum sits on the first or last sample.
// A lobe opens at `enter` and closes only below `exit`, so fast ripple does not split it.
std::vector<Index> lobe_maxima(const Series& s, double enter, double exit) {
  std::vector<Index> out;
  const Index n = s.size();
  Index i = 0;
  while (i < n) {
    if (s.values(i) < enter) {
      ++i;
      continue;
    }
    Index best = i;
    for (; i < n && s.values(i) >= exit; ++i) {
      if (s.values(i) > s.values(best)) best = i;
    }
    if (best > 0 && best + 1 < n) out.push_back(best);
  }
  return out;
}

}  // namespace

StepPolicy default_policy(const HamiltonianSpec& h, const PerturbationSpec& v, double span) {
  const double wmax = std::max({v.max_frequency(), h.energies().cwiseAbs().maxCoeff(), 1.0});
  const double arms = static_cast<double>(std::max<Index>(h.dimension() - 1, 1));
  return StepPolicy::resolving(wmax, v.amplitude() * std::sqrt(arms), span);
}

Trajectory evolve_with(const HamiltonianSpec& h, const PotentialAction& potential,
                       const StateVector& initial, double t_end, const StepPolicy& policy) {
  const Index n = h.dimension();
  if (initial.dimension() != n) {
    throw ModelError("initial state dimension " + std::to_string(initial.dimension()) +
                     " does not match Hamiltonian dimension " + std::to_string(n));
  }
  if (!initial.is_normalized(1e-9)) throw ModelError("initial state is not normalized");

  const TimeGrid grid(initial.time, t_end, policy);
  Trajectory traj{RealVector(grid.sample_count()), Eigen::MatrixXcd(n, grid.sample_count()), h,
                  0.0, false};

  const RealVector& energies = h.energies();
  ComplexVector scratch(n);
  auto rhs = [&](double t, const ComplexVector& y, ComplexVector& dy) {
    potential(t, y, scratch);
    dy = kMinusI * (energies.cwiseProduct(y) + scratch);
  };

  ComplexVector y = initial.amplitudes;
  Rk4Stepper<ComplexVector> stepper;
  Index sample = 0;
  double drift = std::abs(y.squaredNorm() - 1.0);
  traj.times(sample) = grid.time(0);
  traj.amplitudes.col(sample++) = y;

  for (long k = 1; k <= grid.steps(); ++k) {
    stepper.step(rhs, grid.time(k - 1), grid.step(), y);
    drift = std::max(drift, std::abs(y.squaredNorm() - 1.0));
    if (!(drift <= kNormRejectThreshold)) {
      throw IntegrationError("norm drift " + std::to_string(drift) + " at t=" +
                             std::to_string(grid.time(k)) + " exceeds tolerance; reduce the step");
    }
    if (grid.records(k)) {
      traj.times(sample) = grid.time(k);
      traj.amplitudes.col(sample++) = y;
    }
  }
  traj.max_norm_drift = drift;
  return traj;
}

Trajectory evolve(const HamiltonianSpec& h, const PerturbationSpec& v, const StateVector& initial,
                  double t_end, const StepPolicy& policy) {
  if (v.center() > h.dimension()) throw ModelError("potential center outside Hamiltonian");
  const PotentialAction action = [&v](double t, const ComplexVector& y, ComplexVector& out) {
    apply_potential(v, y, t, out);
  };
  return evolve_with(h, action, initial, t_end, policy);
}

Trajectory evolve(const HamiltonianSpec& h, const PerturbationSpec& v, const StateVector& initial,
                  double t_end) {
  return evolve(h, v, initial, t_end, default_policy(h, v, t_end - initial.time));
}

Trajectory rotating_frame(const Trajectory& traj) {
  Trajectory out = traj;
  if (traj.rotating) return out;
  const RealVector& e = traj.hamiltonian.energies();
  for (Index s = 0; s < traj.sample_count(); ++s) {
    const double t = traj.times(s);
    for (Index k = 0; k < traj.dimension(); ++k) {
      out.amplitudes(k, s) = std::polar(1.0, e(k) * t) * traj.amplitudes(k, s);
    }
  }
  out.rotating = true;
  return out;
}

Series population(const Trajectory& traj, Index label) {
  if (label < 1 || label > traj.dimension()) {
    throw ModelError("population label " + std::to_string(label) + " out of range");
  }
  return {traj.times, traj.amplitudes.row(label - 1).cwiseAbs2().transpose()};
}

Peak peak_scan(const Series& series, bool refine) {
  if (series.size() == 0) throw std::invalid_argument("peak_scan on an empty series");
  Index best = 0;
  for (Index i = 1; i < series.size(); ++i) {
    if (series.values(i) > series.values(best)) best = i;
  }
  if (!refine) return {series.t(best), series.values(best), best};
  return refine_vertex(series, best);
}

std::vector<Peak> major_peaks(const Series& series, double fraction, bool refine) {
  std::vector<Peak> out;
  if (series.size() < 3) return out;
  const double threshold = fraction * series.values.maxCoeff();
  for (Index i : lobe_maxima(series, threshold, 0.5 * threshold)) {
    out.push_back(refine ? refine_vertex(series, i) : Peak{series.t(i), series.values(i), i});
  }
  return out;
}

Peak first_peak(const Series& series, double fraction, bool refine) {
  const auto peaks = major_peaks(series, fraction, refine);
  if (peaks.empty()) return peak_scan(series, refine);
  return peaks.front();
}

std::optional<double> peak_spacing(const Series& series, double fraction) {
  const auto peaks = major_peaks(series, fraction, true);
  if (peaks.size() < 2) return std::nullopt;
  return (peaks.back().t - peaks.front().t) / static_cast<double>(peaks.size() - 1);
}

}  // namespace qsearch
