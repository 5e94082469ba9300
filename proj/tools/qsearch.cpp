// Command-line front end for the sweep harness.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "qsearch/dynamics.hpp"
#include "qsearch/harness/config.hpp"
#include "qsearch/harness/sweeps.hpp"

namespace {

using nlohmann::json;
using namespace qsearch::harness;

enum class Kind { Int, IntList, Real, RealList, Text, TextList };

struct Flag {
  const char* name;
  const char* key;
  Kind kind;
  const char* help;
};

const std::vector<Flag> kFlags = {
    {"--n-list", "n_list", Kind::IntList, "Dimensions N (space or comma separated)"},
    {"--gamma", "gamma", Kind::Real, "Perturbation strength"},
    {"--gamma-list", "gamma_list", Kind::RealList, "Several perturbation strengths"},
    {"--omega-r", "omega_r", Kind::Real, "Gap / drive frequency"},
    {"--omega-r-list", "omega_r_list", Kind::RealList, "Several drive frequencies"},
    {"--omega-r-rule", "omega_r_rule", Kind::Text, "fixed | proportional | sqrt"},
    {"--omega-r-coefficient", "omega_r_coefficient", Kind::Real, "k in k*N or k*sqrt(N)"},
    {"--t-end", "t_end", Kind::Real, "Final time"},
    {"--dt", "dt", Kind::Real, "Integrator step override"},
    {"--trials", "trials", Kind::Int, "Monte-Carlo trials"},
    {"--seed", "seed", Kind::Int, "Master seed"},
    {"--timing", "timing", Kind::Text, "paper-literal | corrected"},
    {"--out", "out", Kind::Text, "Output CSV path (default: stdout)"},
    {"--algorithm", "algorithm", Kind::Int, "1 (trial potential) or 2 (odd/even phases)"},
    {"--ground", "ground", Kind::Int, "1-based label of the ground state"},
    {"--start", "start", Kind::Int, "Fixed 1-based start label instead of a uniform draw"},
    {"--kind", "kind", Kind::Text, "trial | odd | even"},
    {"--detuning", "detuning", Kind::Real, "Drive detuning for rabi"},
    {"--samples", "samples", Kind::Int, "Random term lists for theorem-check"},
    {"--m-cap", "m_cap", Kind::Int, "Largest term count for theorem-check"},
    {"--exponent-menu", "exponent_menu", Kind::TextList, "Exponents such as 1 1/2 -1"},
};

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const auto comma = item.find(',', start);
      const auto piece = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!piece.empty()) out.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

json scalar(Kind kind, const std::string& text, const char* name) {
  try {
    std::size_t used = 0;
    switch (kind) {
      case Kind::Int:
      case Kind::IntList: {
        const long long v = std::stoll(text, &used);
        if (used != text.size()) break;
        return v;
      }
      case Kind::Real:
      case Kind::RealList: {
        const double v = std::stod(text, &used);
        if (used != text.size()) break;
        return v;
      }
      default: return text;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string(name) + ": cannot parse '" + text + "'");
}

json flag_value(const Flag& f, const std::vector<std::string>& raw) {
  switch (f.kind) {
    case Kind::IntList:
    case Kind::RealList:
    case Kind::TextList: {
      json arr = json::array();
      for (const auto& item : split_list(raw)) arr.push_back(scalar(f.kind, item, f.name));
      return arr;
    }
    default: return scalar(f.kind, raw.back(), f.name);
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state search by harmonic perturbation: simulations and checks"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"rabi", "N = 2 integration against Rabi's formula"},
      {"evolve", "Full-N integration of the ground-state population"},
      {"fig2", "Trial-potential ground population versus time per N"},
      {"fig3", "Peak ground population over an (N, omega_R) grid"},
      {"peak-law", "Optimized-potential peak and period against the closed forms"},
      {"algorithm", "Monte-Carlo success rate of Algorithm 1 or 2"},
      {"theorem-check", "Order-gap analysis and random counterexample search"},
  };

  std::string config_path;
  std::map<std::string, std::vector<std::string>> values;
  std::map<std::string, CLI::Option*> options;
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config; flags override its keys");
    for (const auto& f : kFlags) {
      const std::string key = name + f.key;
      auto* opt = sub->add_option(f.name, values[key], f.help);
      if (f.kind != Kind::IntList && f.kind != Kind::RealList && f.kind != Kind::TextList) {
        opt->expected(1);
      }
      options[key] = opt;
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    std::string name;
    for (auto* sub : subs) {
      if (sub->parsed()) name = sub->get_name();
    }
    json doc = config_path.empty() ? json::object() : load_config(config_path);
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
    doc["command"] = name;
    for (const auto& f : kFlags) {
      const std::string key = name + f.key;
      if (options[key]->count() > 0) doc[f.key] = flag_value(f, values[key]);
    }
    const ExperimentConfig cfg = config_from_json(doc);
    // CSV on stdout pushes the human summary to stderr.
    return run_command(cfg, std::cout, cfg.out.empty() ? std::cerr : std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const qsearch::ModelError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const qsearch::IntegrationError& e) {
    std::cerr << "property violation: " << e.what() << '\n';
    return kPropertyViolation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
