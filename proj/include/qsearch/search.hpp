#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qsearch/dynamics.hpp"
#include "qsearch/model.hpp"
#include "qsearch/reduced.hpp"

namespace qsearch {

using Rng = std::mt19937_64;

enum class Algorithm { Naive = 1, Optimized = 2 };

/// PaperLiteral measures at pi/(2 gamma); Corrected at the actual first peak.
enum class Timing { PaperLiteral, Corrected };

enum class MeasurementStep { Init, AfterTrial, AfterOdd, AfterEven };

struct MeasurementRecord {
  MeasurementStep step = MeasurementStep::Init;
  /// Cumulative evolution time at which the measurement happened.
  double time = 0.0;
  Index observed = 0;
  double energy = 0.0;
};

struct SearchOutcome {
  Index returned = 0;
  bool success = false;
  std::vector<MeasurementRecord> records;
  double total_time = 0.0;
  double energy_figure = 0.0;
  long repetitions = 1;
  /// Largest norm drift over the perturbation phases.
  double max_norm_drift = 0.0;
};

struct SearchConfig {
  double gamma = 0.0;
  Timing timing = Timing::PaperLiteral;
  /// Drive frequency; defaults to the spectrum's gap.
  std::optional<double> drive_frequency;
  /// Fixed pre-measurement basis state; default is the uniform superposition.
  std::optional<Index> start_index;
  /// Precomputed measurement time; computed from `timing` when empty.
  std::optional<double> measurement_time;
  /// Integrator policy override for the perturbation phases.
  std::optional<StepPolicy> policy;
};

/// Energies within this of zero count as "found the ground state".
inline constexpr double kZeroEnergyGuard = 1e-12;

/// Samples a 1-based label with probability |c_k|^2.
Index measure(const StateVector& state, Rng& rng);

/// Independent generator for trial `index` of a run seeded with `master_seed`.
Rng trial_stream(std::uint64_t master_seed, std::uint64_t index);

/// Measurement time for one perturbation phase under cfg.timing.
double measurement_time(Algorithm algorithm, const HamiltonianSpec& h, const SearchConfig& cfg);

/// Measure; stop on zero energy; trial perturbation at g1; measure; return.
SearchOutcome run_algorithm1(const HamiltonianSpec& h, const SearchConfig& cfg, Rng& rng);

/// Measure; odd-phase at g1; measure; even-phase at g2; measure; return.
SearchOutcome run_algorithm2(const HamiltonianSpec& h, const SearchConfig& cfg, Rng& rng);

SearchOutcome run_algorithm(Algorithm algorithm, const HamiltonianSpec& h, const SearchConfig& cfg,
                            Rng& rng);

struct SuccessEstimate {
  long trials = 0;
  long successes = 0;
  double frequency = 0.0;
  /// Exact (Clopper-Pearson) 95% interval.
  double ci_low = 0.0;
  double ci_high = 1.0;
  /// Closed-form peak (optimized) or scanned reduced peak (naive).
  double predicted_pr = 0.0;
  /// Reduced-ODE |b1|^2 at the measurement time actually used.
  double predicted_per_run = 0.0;
  double measurement_time = 0.0;
  /// Largest norm drift over every trial.
  double max_norm_drift = 0.0;
  std::vector<SearchOutcome> outcomes;
};

/// Runs `trials` independent seeded searches, in parallel, with deterministic results.
SuccessEstimate estimate_success(Algorithm algorithm, const HamiltonianSpec& h,
                                 const SearchConfig& cfg, long trials, std::uint64_t master_seed);

/// Clopper-Pearson interval for k successes out of n.
std::pair<double, double> binomial_interval(long successes, long trials, double confidence = 0.95);

}  // namespace qsearch
