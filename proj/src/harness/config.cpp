#include "qsearch/harness/config.hpp"

#include <algorithm>
#include <cmath>

namespace qsearch::harness {

namespace {

using nlohmann::json;

template <typename T>
T get(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> get_optional(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return get<T>(doc, key, T{});
}

/// Accepts a JSON array or a single scalar.
template <typename T>
std::vector<T> get_list(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return {};
  const json& v = doc.at(key);
  if (v.is_array()) return get<std::vector<T>>(doc, key, {});
  return {get<T>(doc, key, T{})};
}

OmegaRule parse_rule(const std::string& s) {
  if (s == "fixed") return OmegaRule::Fixed;
  if (s == "proportional") return OmegaRule::Proportional;
  if (s == "sqrt") return OmegaRule::Sqrt;
  throw ConfigError("omega_r_rule must be \"fixed\", \"proportional\" or \"sqrt\", got \"" + s +
                    "\"");
}

Timing parse_timing(const std::string& s) {
  if (s == "paper" || s == "paper-literal" || s == "literal") return Timing::PaperLiteral;
  if (s == "corrected") return Timing::Corrected;
  throw ConfigError("timing must be \"paper-literal\" or \"corrected\", got \"" + s + "\"");
}

PotentialKind parse_kind(const std::string& s) {
  if (s == "trial") return PotentialKind::Trial;
  if (s == "odd") return PotentialKind::OddPhase;
  if (s == "even") return PotentialKind::EvenPhase;
  throw ConfigError("kind must be \"trial\", \"odd\" or \"even\", got \"" + s + "\"");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "rabi") return Command::Rabi;
  if (name == "evolve") return Command::Evolve;
  if (name == "fig2") return Command::Fig2;
  if (name == "fig3") return Command::Fig3;
  if (name == "peak-law") return Command::PeakLaw;
  if (name == "algorithm") return Command::Algorithm;
  if (name == "theorem-check") return Command::TheoremCheck;
  throw ConfigError("unknown command \"" + name + "\"");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Rabi: return "rabi";
    case Command::Evolve: return "evolve";
    case Command::Fig2: return "fig2";
    case Command::Fig3: return "fig3";
    case Command::PeakLaw: return "peak-law";
    case Command::Algorithm: return "algorithm";
    case Command::TheoremCheck: return "theorem-check";
  }
  return "?";
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  if (auto c = get_optional<std::string>(doc, "command")) cfg.command = parse_command(*c);
  cfg.n_list = get_list<Index>(doc, "n_list");
  cfg.gamma = get(doc, "gamma", cfg.gamma);
  cfg.gamma_list = get_list<double>(doc, "gamma_list");
  cfg.omega_r = get(doc, "omega_r", cfg.omega_r);
  cfg.omega_r_list = get_list<double>(doc, "omega_r_list");
  if (doc.contains("omega_r_rule")) {
    const json& rule = doc.at("omega_r_rule");
    if (rule.is_string()) {
      cfg.omega_r_rule = parse_rule(rule.get<std::string>());
    } else if (rule.is_object()) {
      cfg.omega_r_rule = parse_rule(get<std::string>(rule, "rule", "fixed"));
      cfg.omega_r_coefficient = get(rule, "coefficient", cfg.omega_r_coefficient);
    } else {
      throw ConfigError("omega_r_rule must be a string or {\"rule\", \"coefficient\"} object");
    }
  }
  cfg.omega_r_coefficient = get(doc, "omega_r_coefficient", cfg.omega_r_coefficient);
  cfg.t_end = get_optional<double>(doc, "t_end");
  cfg.dt = get_optional<double>(doc, "dt");
  cfg.trials = get(doc, "trials", cfg.trials);
  cfg.seed = get(doc, "seed", cfg.seed);
  if (auto t = get_optional<std::string>(doc, "timing")) cfg.timing = parse_timing(*t);
  cfg.out = get(doc, "out", cfg.out);
  cfg.algorithm = get(doc, "algorithm", cfg.algorithm);
  cfg.ground = get(doc, "ground", cfg.ground);
  cfg.start = get_optional<Index>(doc, "start");
  if (auto k = get_optional<std::string>(doc, "kind")) cfg.kind = parse_kind(*k);
  cfg.detuning = get(doc, "detuning", cfg.detuning);
  cfg.samples = get(doc, "samples", cfg.samples);
  cfg.m_cap = get(doc, "m_cap", cfg.m_cap);
  cfg.exponent_menu = get_list<std::string>(doc, "exponent_menu");
  validate(cfg);
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  require_positive(cfg.gamma, "gamma");
  for (double g : cfg.gamma_list) require_positive(g, "every gamma_list entry");
  require_positive(cfg.omega_r, "omega_r");
  for (double w : cfg.omega_r_list) require_positive(w, "every omega_r_list entry");
  require_positive(cfg.omega_r_coefficient, "omega_r coefficient");
  if (cfg.t_end) require_positive(*cfg.t_end, "t_end");
  if (cfg.dt) require_positive(*cfg.dt, "dt");
  for (Index n : cfg.n_list) {
    if (n < 2) throw ConfigError("every N in n_list must be at least 2, got " + std::to_string(n));
  }
  const bool needs_grid = cfg.command != Command::TheoremCheck && cfg.command != Command::Rabi;
  if (needs_grid && cfg.n_list.empty()) {
    throw ConfigError("n_list is empty; pass --n-list or set \"n_list\" in the config");
  }
  if (cfg.command == Command::Algorithm) {
    if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
    if (cfg.algorithm != 1 && cfg.algorithm != 2) throw ConfigError("algorithm must be 1 or 2");
    for (Index n : cfg.n_list) {
      if (cfg.ground < 1 || cfg.ground > n) throw ConfigError("ground index outside [1, N]");
      if (cfg.start && (*cfg.start < 1 || *cfg.start > n)) {
        throw ConfigError("start index outside [1, N]");
      }
    }
  }
  if (cfg.command == Command::TheoremCheck) {
    if (cfg.samples < 0) throw ConfigError("samples must be non-negative");
    if (cfg.m_cap < 1) throw ConfigError("m_cap must be at least 1");
  }
  if (cfg.omega_r_rule != OmegaRule::Fixed && !cfg.omega_r_list.empty()) {
    throw ConfigError("omega_r_list conflicts with a non-fixed omega_r_rule; use one or the other");
  }
}

std::vector<GridPoint> grid(const ExperimentConfig& cfg) {
  const std::vector<double> gammas = cfg.gamma_list.empty() ? std::vector{cfg.gamma}
                                                            : cfg.gamma_list;
  std::vector<GridPoint> out;
  for (Index n : cfg.n_list) {
    for (double g : gammas) {
      const double nd = static_cast<double>(n);
      switch (cfg.omega_r_rule) {
        case OmegaRule::Fixed:
          if (cfg.omega_r_list.empty()) {
            out.push_back({n, g, cfg.omega_r});
          } else {
            for (double w : cfg.omega_r_list) out.push_back({n, g, w});
          }
          break;
        case OmegaRule::Proportional:
          out.push_back({n, g, cfg.omega_r_coefficient * nd});
          break;
        case OmegaRule::Sqrt:
          out.push_back({n, g, cfg.omega_r_coefficient * std::sqrt(nd)});
          break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StepPolicy step_policy(const ExperimentConfig& cfg, const StepPolicy& fallback) {
  if (!cfg.dt) return fallback;
  StepPolicy p = fallback;
  const double scale = fallback.step / *cfg.dt;
  p.step = *cfg.dt;
  p.stride = std::max(1L, static_cast<long>(std::llround(static_cast<double>(fallback.stride) * scale)));
  return p;
}

}  // namespace qsearch::harness
