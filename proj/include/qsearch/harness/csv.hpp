#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsearch/model.hpp"

namespace qsearch::harness {

/// One row of `N,gamma,omega_R,t,observable,value`.
struct SweepRecord {
  Index n = 0;
  double gamma = 0.0;
  double omega_r = 0.0;
  std::optional<double> t;
  std::string observable;
  double value = 0.0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

inline constexpr const char* kCsvHeader = "N,gamma,omega_R,t,observable,value";

/// Observable names a SweepRecord may carry.
const std::vector<std::string>& known_observables();

/// 17 significant digits, round-trips through parse.
std::string format_double(double v);

/// Writes header plus rows with LF endings. Throws on non-finite values or unknown observables.
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);

/// Parses a file produced by write_csv.
std::vector<SweepRecord> read_csv(std::istream& is);

}  // namespace qsearch::harness
