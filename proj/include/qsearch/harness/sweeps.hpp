#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qsearch/harness/config.hpp"
#include "qsearch/harness/csv.hpp"
#include "qsearch/order_gap.hpp"

namespace qsearch::harness {

/// Process exit statuses.
enum ExitStatus : int { kOk = 0, kConfigError = 2, kPropertyViolation = 3, kIoError = 4 };

struct SweepResult {
  std::vector<SweepRecord> records;
  /// Human-readable lines for standard output.
  std::vector<std::string> summary;
  int status = kOk;
};

/// N = 2 full integration against Rabi's formula.
SweepResult run_rabi(const ExperimentConfig& cfg);

/// Full-N integration of |c_1|^2 for the configured potential kind.
SweepResult run_evolve(const ExperimentConfig& cfg);

/// |b1(t)|^2 of the trial system per N, plus peak value and first-peak time.
SweepResult run_fig2_sweep(const ExperimentConfig& cfg);

/// max_t |b1|^2 of the trial system over the (N, w_R) grid.
SweepResult run_fig3_sweep(const ExperimentConfig& cfg);

/// Measured vs predicted peak and period of the optimized system, with time-energy products.
SweepResult run_peak_law_sweep(const ExperimentConfig& cfg);

/// Seeded Monte-Carlo runs of Algorithm 1 or 2.
SweepResult run_algorithm_cmd(const ExperimentConfig& cfg);

struct TheoremCheckResult {
  TheoremSearchResult search;
  OrderGapReport lambda1;
  OrderGapReport lambda2;
  std::vector<std::string> summary;
  int status = kOk;
};

TheoremCheckResult run_theorem_check(const ExperimentConfig& cfg);

/// CSV of every term list: label,m,d,exponents,flags,witness,terms.
void write_theorem_csv(std::ostream& os, const TheoremCheckResult& result);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Dispatches on cfg.command; writes CSV to cfg.out (or `fallback`) and summary to `log`.
int run_command(const ExperimentConfig& cfg, std::ostream& fallback, std::ostream& log);

}  // namespace qsearch::harness
