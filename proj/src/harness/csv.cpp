#include "qsearch/harness/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qsearch::harness {

namespace {

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw std::runtime_error("malformed number '" + s + "'");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& known_observables() {
  static const std::vector<std::string> names = {
      "pop_b1",         "pop_rabi",       "peak_pop",      "peak_time",  "period",
      "success_freq",   "predicted_pr",   "d_gap",         "predicted_period",
      "rel_err_peak",   "rel_err_period", "time_energy",   "norm_drift", "trial_success",
      "ci_low",         "ci_high",        "predicted_per_run"};
  return names;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  const auto& known = known_observables();
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    if (std::find(known.begin(), known.end(), r.observable) == known.end()) {
      throw std::invalid_argument("unknown observable '" + r.observable + "'");
    }
    if (!std::isfinite(r.value) || (r.t && !std::isfinite(*r.t))) {
      throw std::invalid_argument("non-finite value for observable '" + r.observable + "'");
    }
    os << r.n << ',' << format_double(r.gamma) << ',' << format_double(r.omega_r) << ','
       << (r.t ? format_double(*r.t) : std::string()) << ',' << r.observable << ','
       << format_double(r.value) << '\n';
  }
}

std::vector<SweepRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw std::runtime_error("missing or unexpected CSV header");
  }
  std::vector<SweepRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 6) throw std::runtime_error("expected 6 fields in '" + line + "'");
    SweepRecord r;
    r.n = std::stoll(fields[0]);
    r.gamma = parse_double(fields[1]);
    r.omega_r = parse_double(fields[2]);
    if (!fields[3].empty()) r.t = parse_double(fields[3]);
    r.observable = fields[4];
    r.value = parse_double(fields[5]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qsearch::harness
