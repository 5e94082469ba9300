#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsearch/search.hpp"

namespace qsearch::harness {

/// Invalid or inconsistent run configuration (exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Rabi, Evolve, Fig2, Fig3, PeakLaw, Algorithm, TheoremCheck };

/// How w_R follows N on a grid: fixed, k*N, or k*sqrt(N) (the constant-Pr family).
enum class OmegaRule { Fixed, Proportional, Sqrt };

struct ExperimentConfig {
  Command command = Command::Fig2;
  std::vector<Index> n_list;
  double gamma = 0.01;
  std::vector<double> gamma_list;
  double omega_r = 10.0;
  std::vector<double> omega_r_list;
  OmegaRule omega_r_rule = OmegaRule::Fixed;
  double omega_r_coefficient = 1.0;
  std::optional<double> t_end;
  std::optional<double> dt;
  long trials = 100;
  std::uint64_t seed = 1;
  Timing timing = Timing::PaperLiteral;
  /// Output CSV path; empty writes to standard output.
  std::string out;

  int algorithm = 2;
  Index ground = 1;
  std::optional<Index> start;
  PotentialKind kind = PotentialKind::Trial;
  double detuning = 0.0;
  long samples = 10000;
  int m_cap = 6;
  std::vector<std::string> exponent_menu;
};

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// Builds and validates a config from a JSON document.
ExperimentConfig config_from_json(const nlohmann::json& doc);

/// Throws ConfigError with an actionable message on the first invalid field.
void validate(const ExperimentConfig& cfg);

/// One (N, gamma, w_R) grid point.
struct GridPoint {
  Index n = 2;
  double gamma = 0.0;
  double omega_r = 0.0;

  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

/// Sorted, de-duplicated grid from n_list x gamma(s) x w_R (list or rule).
std::vector<GridPoint> grid(const ExperimentConfig& cfg);

/// Step policy for a span, honouring the dt override.
StepPolicy step_policy(const ExperimentConfig& cfg, const StepPolicy& fallback);

}  // namespace qsearch::harness
