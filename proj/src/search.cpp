#include "qsearch/search.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "qsearch/parallel.hpp"

namespace qsearch {

namespace {

double drive_frequency(const HamiltonianSpec& h, const SearchConfig& cfg) {
  if (cfg.drive_frequency) return *cfg.drive_frequency;
  if (!h.gap()) throw ModelError("non-canonical spectrum needs an explicit drive frequency");
  return *h.gap();
}

ResonanceParams resonance(const HamiltonianSpec& h, const SearchConfig& cfg) {
  return {h.dimension(), cfg.gamma, drive_frequency(h, cfg)};
}

bool is_zero_energy(double e) { return std::abs(e) <= kZeroEnergyGuard; }

bool is_ground(const HamiltonianSpec& h, Index label) {
  return std::abs(h.energy(label) - h.energies().minCoeff()) <= kZeroEnergyGuard;
}

/// Evolves |center> under `v` for `duration` and measures.
Index perturb_and_measure(const HamiltonianSpec& h, const PerturbationSpec& v, double duration,
                          const SearchConfig& cfg, Rng& rng, SearchOutcome& out) {
  StepPolicy policy = cfg.policy ? *cfg.policy : default_policy(h, v, duration);
  policy.stride = std::numeric_limits<long>::max() / 2;
  const Trajectory traj = evolve(h, v, StateVector::basis(h.dimension(), v.center()), duration,
                                 policy);
  out.max_norm_drift = std::max(out.max_norm_drift, traj.max_norm_drift);
  return measure(traj.final_state(), rng);
}

SearchOutcome begin(const HamiltonianSpec& h, const SearchConfig& cfg, Rng& rng) {
  if (!(cfg.gamma > 0.0)) throw ModelError("gamma must be positive");
  const StateVector pre = cfg.start_index ? StateVector::basis(h.dimension(), *cfg.start_index)
                                          : StateVector::uniform(h.dimension());
  const Index g1 = measure(pre, rng);
  SearchOutcome out;
  out.records.push_back({MeasurementStep::Init, 0.0, g1, h.energy(g1)});
  out.returned = g1;
  return out;
}

SearchOutcome& finish(const HamiltonianSpec& h, SearchOutcome& out) {
  out.success = is_ground(h, out.returned);
  return out;
}

}  // namespace

Index measure(const StateVector& state, Rng& rng) {
  const double norm = state.norm_squared();
  if (std::abs(norm - 1.0) > 1e-6) throw ModelError("cannot measure an unnormalized state");
  // 53 random mantissa bits, uniform on [0, norm).
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * norm;
  double acc = 0.0;
  Index last_nonzero = 1;
  for (Index k = 0; k < state.dimension(); ++k) {
    const double p = std::norm(state.amplitudes(k));
    if (p > 0.0) last_nonzero = k + 1;
    acc += p;
    if (u < acc) return k + 1;
  }
  return last_nonzero;
}

Rng trial_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x71u};
  return Rng(seq);
}

double measurement_time(Algorithm algorithm, const HamiltonianSpec& h, const SearchConfig& cfg) {
  if (cfg.measurement_time) return *cfg.measurement_time;
  const double literal = std::numbers::pi / (2.0 * cfg.gamma);
  if (cfg.timing == Timing::PaperLiteral) return literal;
  const ResonanceParams p = resonance(h, cfg);
  if (algorithm == Algorithm::Optimized) return corrected_peak_time(p);
  const auto series = evolve_reduced_trial(p, 2.0 * literal).population(1);
  return first_peak(series).t;
}

SearchOutcome run_algorithm1(const HamiltonianSpec& h, const SearchConfig& cfg, Rng& rng) {
  SearchOutcome out = begin(h, cfg, rng);
  const Index g1 = out.returned;
  const double w = drive_frequency(h, cfg);
  out.energy_figure = energy_complexity(h, PerturbationSpec::trial(g1, cfg.gamma, w)).value;
  if (is_zero_energy(h.energy(g1))) return finish(h, out);

  const double t = measurement_time(Algorithm::Naive, h, cfg);
  const Index g2 = perturb_and_measure(h, PerturbationSpec::trial(g1, cfg.gamma, w), t, cfg, rng, out);
  out.total_time = t;
  out.records.push_back({MeasurementStep::AfterTrial, out.total_time, g2, h.energy(g2)});
  out.returned = g2;
  return finish(h, out);
}

SearchOutcome run_algorithm2(const HamiltonianSpec& h, const SearchConfig& cfg, Rng& rng) {
  SearchOutcome out = begin(h, cfg, rng);
  const Index g1 = out.returned;
  const double w = drive_frequency(h, cfg);
  out.energy_figure = energy_complexity(h, PerturbationSpec::odd_phase(g1, cfg.gamma, w)).value;
  if (is_zero_energy(h.energy(g1))) return finish(h, out);

  const double t = measurement_time(Algorithm::Optimized, h, cfg);
  const Index g2 =
      perturb_and_measure(h, PerturbationSpec::odd_phase(g1, cfg.gamma, w), t, cfg, rng, out);
  out.total_time += t;
  out.records.push_back({MeasurementStep::AfterOdd, out.total_time, g2, h.energy(g2)});
  out.returned = g2;
  if (is_zero_energy(h.energy(g2))) return finish(h, out);

  const Index g3 =
      perturb_and_measure(h, PerturbationSpec::even_phase(g2, cfg.gamma, w), t, cfg, rng, out);
  out.total_time += t;
  out.records.push_back({MeasurementStep::AfterEven, out.total_time, g3, h.energy(g3)});
  out.returned = g3;
  return finish(h, out);
}

SearchOutcome run_algorithm(Algorithm algorithm, const HamiltonianSpec& h, const SearchConfig& cfg,
                            Rng& rng) {
  return algorithm == Algorithm::Naive ? run_algorithm1(h, cfg, rng) : run_algorithm2(h, cfg, rng);
}

std::pair<double, double> binomial_interval(long successes, long trials, double confidence) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("binomial interval needs 0 <= k <= n, n >= 1");
  }
  const double alpha = 1.0 - confidence;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  const double lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2.0);
  const double hi =
      successes == trials ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2.0);
  return {lo, hi};
}

SuccessEstimate estimate_success(Algorithm algorithm, const HamiltonianSpec& h,
                                 const SearchConfig& cfg, long trials, std::uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  SearchConfig fixed = cfg;
  fixed.measurement_time = measurement_time(algorithm, h, cfg);

  SuccessEstimate est;
  est.trials = trials;
  est.measurement_time = *fixed.measurement_time;
  est.outcomes.resize(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](long i) {
    Rng rng = trial_stream(master_seed, static_cast<std::uint64_t>(i));
    est.outcomes[static_cast<std::size_t>(i)] = run_algorithm(algorithm, h, fixed, rng);
  });
  for (const auto& o : est.outcomes) {
    est.successes += o.success ? 1 : 0;
    est.max_norm_drift = std::max(est.max_norm_drift, o.max_norm_drift);
  }
  est.frequency = static_cast<double>(est.successes) / static_cast<double>(trials);
  std::tie(est.ci_low, est.ci_high) = binomial_interval(est.successes, trials);

  const ResonanceParams p = resonance(h, cfg);
  const double t = est.measurement_time;
  if (algorithm == Algorithm::Optimized) {
    est.predicted_pr = peak_probability(p);
    est.predicted_per_run = evolve_reduced_opt(p, t).population(1).values.tail(1)(0);
  } else {
    const double window = std::numbers::pi / cfg.gamma;
    est.predicted_pr = peak_scan(evolve_reduced_trial(p, window).population(1)).value;
    est.predicted_per_run = evolve_reduced_trial(p, t).population(1).values.tail(1)(0);
  }
  return est;
}

}  // namespace qsearch
