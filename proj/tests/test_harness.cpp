#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <sstream>

#include "qsearch/harness/config.hpp"
#include "qsearch/harness/csv.hpp"
#include "qsearch/harness/sweeps.hpp"

using namespace qsearch;
using namespace qsearch::harness;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

double value(const std::vector<SweepRecord>& rs, Index n, double w, const std::string& obs) {
  for (const auto& r : rs) {
    if (r.n == n && r.omega_r == w && r.observable == obs) return r.value;
  }
  FAIL("missing " << obs << " for N=" << n);
  return 0;
}

ExperimentConfig parse(const std::string& text) { return config_from_json(json::parse(text)); }

}  // namespace

TEST_CASE("config from JSON") {
  const auto cfg = parse(R"({
    "command": "algorithm", "n_list": [256, 16], "gamma": 0.5, "omega_r": 2,
    "t_end": 10, "dt": 0.01, "trials": 7, "seed": 99, "timing": "corrected",
    "out": "x.csv", "algorithm": 1, "ground": 3, "start": 2, "kind": "odd"
  })");
  CHECK(cfg.command == Command::Algorithm);
  CHECK(cfg.n_list == std::vector<Index>{256, 16});
  CHECK(cfg.gamma == 0.5);
  CHECK(cfg.t_end == 10.0);
  CHECK(cfg.dt == 0.01);
  CHECK(cfg.trials == 7);
  CHECK(cfg.seed == 99);
  CHECK(cfg.timing == Timing::Corrected);
  CHECK(cfg.out == "x.csv");
  CHECK(cfg.algorithm == 1);
  CHECK(cfg.ground == 3);
  CHECK(cfg.start == 2);
  CHECK(cfg.kind == PotentialKind::OddPhase);

  const auto ruled = parse(R"({"n_list": 4, "omega_r_rule": {"rule": "proportional", "coefficient": 0.01}})");
  CHECK(ruled.omega_r_rule == OmegaRule::Proportional);
  CHECK(ruled.omega_r_coefficient == 0.01);
  CHECK(ruled.n_list == std::vector<Index>{4});
  CHECK(parse(R"({"n_list": [4], "omega_r_rule": "sqrt"})").omega_r_rule == OmegaRule::Sqrt);
  CHECK(parse(R"({"command": "theorem-check", "exponent_menu": ["1", "1/2"]})").exponent_menu.size() == 2);
}

TEST_CASE("config validation rejects bad input with a message") {
  const char* bad[] = {
      R"({"n_list": [4], "gamma": 0})",
      R"({"n_list": [4], "gamma": -1})",
      R"({"n_list": [4], "omega_r": 0})",
      R"({"n_list": [1]})",
      R"({"n_list": []})",
      R"({"command": "fig3"})",
      R"({"command": "algorithm", "n_list": [4], "trials": 0})",
      R"({"command": "algorithm", "n_list": [4], "algorithm": 3})",
      R"({"command": "algorithm", "n_list": [4], "ground": 5})",
      R"({"n_list": [4], "omega_r_rule": "cubic"})",
      R"({"n_list": [4], "timing": "sometimes"})",
      R"({"n_list": [4], "kind": "sideways"})",
      R"({"n_list": [4], "dt": -0.1})",
      R"({"n_list": [4], "gamma": "big"})",
      R"({"command": "dance", "n_list": [4]})",
      R"({"n_list": [4], "omega_r_rule": "sqrt", "omega_r_list": [1, 2]})",
      R"([1, 2])",
  };
  for (const char* text : bad) {
    INFO(text);
    try {
      parse(text);
      FAIL("accepted");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).size() > 10);
    }
  }
  CHECK_NOTHROW(parse(R"({"command": "rabi"})"));
  CHECK_NOTHROW(parse(R"({"command": "theorem-check"})"));
}

TEST_CASE("grids are sorted and unique") {
  auto cfg = parse(R"({"n_list": [1000, 100, 1000], "omega_r_list": [10, 1]})");
  auto g = grid(cfg);
  REQUIRE(g.size() == 4);
  CHECK(g[0].n == 100);
  CHECK(g[0].omega_r == 1);
  CHECK(g[3].n == 1000);
  CHECK(g[3].omega_r == 10);

  cfg = parse(R"({"n_list": [2000, 1000], "omega_r_rule": {"rule": "proportional", "coefficient": 0.01}})");
  g = grid(cfg);
  CHECK(g[0].omega_r == doctest::Approx(10));
  CHECK(g[1].omega_r == doctest::Approx(20));

  cfg = parse(R"({"n_list": [10000], "omega_r_rule": "sqrt", "omega_r_coefficient": 0.1})");
  CHECK(grid(cfg)[0].omega_r == doctest::Approx(10));
}

TEST_CASE("step policy override") {
  StepPolicy fallback;
  fallback.step = 0.01;
  fallback.stride = 10;
  auto cfg = parse(R"({"n_list": [4]})");
  CHECK(step_policy(cfg, fallback).step == 0.01);
  cfg = parse(R"({"n_list": [4], "dt": 0.005})");
  CHECK(step_policy(cfg, fallback).step == 0.005);
  CHECK(step_policy(cfg, fallback).stride == 20);
}

TEST_CASE("CSV schema and round trip") {
  const std::vector<SweepRecord> rows = {
      {100, 0.01, 10.0, 0.1, "pop_b1", 1.0 / 3.0},
      {100, 0.01, 10.0, std::nullopt, "peak_pop", 0.99750735},
      {2, 1e-300, 1e300, 5e-324, "peak_time", -0.0},
  };
  std::ostringstream os;
  write_csv(os, rows);
  const std::string text = os.str();
  CHECK(text.rfind("N,gamma,omega_R,t,observable,value\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.find("100,0.01,10,0.10000000000000001,pop_b1,0.33333333333333331\n") != std::string::npos);
  CHECK(text.find("100,0.01,10,,peak_pop,") != std::string::npos);
  std::istringstream is(text);
  CHECK(read_csv(is) == rows);

  std::ostringstream sink;
  CHECK_THROWS(write_csv(sink, {{4, 1, 1, std::nullopt, "mystery", 1}}));
  CHECK_THROWS(write_csv(sink, {{4, 1, 1, std::nullopt, "pop_b1", NAN}}));
  CHECK_THROWS(write_csv(sink, {{4, 1, 1, INFINITY, "pop_b1", 0}}));
  std::istringstream broken("N,gamma\n");
  CHECK_THROWS(read_csv(broken));
  std::istringstream short_row("N,gamma,omega_R,t,observable,value\n1,2,3\n");
  CHECK_THROWS(read_csv(short_row));
}

TEST_CASE("every sweep output round-trips") {
  for (const char* text : {R"({"command": "fig2", "n_list": [2, 64], "t_end": 50})",
                           R"({"command": "peak-law", "n_list": [64], "omega_r": 1})",
                           R"({"command": "rabi", "gamma": 0.5, "omega_r": 2, "t_end": 3})"}) {
    const auto cfg = parse(text);
    std::ostringstream csv, log;
    CHECK(run_command(cfg, csv, log) == kOk);
    std::istringstream is(csv.str());
    const auto back = read_csv(is);
    std::ostringstream again;
    write_csv(again, back);
    CHECK(again.str() == csv.str());
  }
}

TEST_CASE("figure 2 sweep") {
  const auto res = run_fig2_sweep(parse(R"({"command": "fig2", "n_list": [10000, 100, 1000, 2]})"));
  const double p2 = value(res.records, 2, 10, "peak_pop");
  const double p100 = value(res.records, 100, 10, "peak_pop");
  const double p1000 = value(res.records, 1000, 10, "peak_pop");
  const double p10000 = value(res.records, 10000, 10, "peak_pop");
  CHECK(p100 > p1000);
  CHECK(p1000 > p10000);
  const double t100 = value(res.records, 100, 10, "peak_time");
  const double t1000 = value(res.records, 1000, 10, "peak_time");
  const double t10000 = value(res.records, 10000, 10, "peak_time");
  CHECK(t100 > t1000);
  CHECK(t1000 > t10000);
  CHECK(p2 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(value(res.records, 2, 10, "peak_time") == doctest::Approx(kPi / 0.02).epsilon(1e-6));
  CHECK(res.records.front().n == 2);
}

TEST_CASE("figure 3 sweep") {
  const auto rays = run_fig3_sweep(parse(
      R"({"command": "fig3", "n_list": [1000, 2000, 4000], "omega_r_rule": {"rule": "proportional", "coefficient": 0.01}})"));
  std::vector<double> peaks;
  for (Index n : {1000, 2000, 4000}) peaks.push_back(value(rays.records, n, 0.01 * n, "peak_pop"));
  const double mean = (peaks[0] + peaks[1] + peaks[2]) / 3;
  for (double p : peaks) CHECK(std::abs(p - mean) <= 0.1 * mean);

  const auto fixed = run_fig3_sweep(
      parse(R"({"command": "fig3", "n_list": [2, 100, 1000, 10000], "omega_r_list": [1, 10]})"));
  for (double w : {1.0, 10.0}) {
    CHECK(value(fixed.records, 2, w, "peak_pop") == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(value(fixed.records, 100, w, "peak_pop") > value(fixed.records, 1000, w, "peak_pop"));
    CHECK(value(fixed.records, 1000, w, "peak_pop") > value(fixed.records, 10000, w, "peak_pop"));
  }
}

TEST_CASE("peak-law sweep") {
  const auto res = run_peak_law_sweep(parse(R"({"command": "peak-law", "n_list": [2, 1000], "omega_r": 10})"));
  CHECK(value(res.records, 1000, 10, "rel_err_peak") < 0.02);
  CHECK(value(res.records, 1000, 10, "rel_err_period") < 0.02);
  for (const auto& r : res.records) {
    if (r.n == 2) {
      CHECK(r.observable != "rel_err_peak");
      CHECK(r.observable != "rel_err_period");
    }
  }
  CHECK(loglog_slope({1, 10, 100}, {3, 3 * std::sqrt(10.0), 30}) == doctest::Approx(0.5));
  CHECK_THROWS(loglog_slope({1}, {1}));
}

TEST_CASE("algorithm command and determinism") {
  const auto cfg = parse(R"({"command": "algorithm", "n_list": [8], "omega_r": 2, "gamma": 0.1,
                             "trials": 30, "seed": 4, "timing": "corrected"})");
  std::ostringstream a, b, log;
  setenv("QSEARCH_THREADS", "2", 1);
  CHECK(run_command(cfg, a, log) == kOk);
  unsetenv("QSEARCH_THREADS");
  CHECK(run_command(cfg, b, log) == kOk);
  CHECK(a.str() == b.str());
  std::istringstream is(a.str());
  const auto rows = read_csv(is);
  std::map<std::string, int> counts;
  for (const auto& r : rows) ++counts[r.observable];
  CHECK(counts["trial_success"] == 30);
  CHECK(counts["success_freq"] == 1);
  CHECK(counts["ci_low"] == 1);
  CHECK(counts["predicted_pr"] == 1);
}

TEST_CASE("grid sweeps are deterministic under parallel execution") {
  const auto cfg = parse(R"({"command": "fig3", "n_list": [4, 64, 16, 256], "omega_r_list": [3, 1]})");
  std::ostringstream serial, parallel, log;
  setenv("QSEARCH_THREADS", "1", 1);
  run_command(cfg, serial, log);
  setenv("QSEARCH_THREADS", "4", 1);
  run_command(cfg, parallel, log);
  unsetenv("QSEARCH_THREADS");
  CHECK(serial.str() == parallel.str());
}

TEST_CASE("theorem check") {
  const auto cfg = parse(R"({"command": "theorem-check", "samples": 300, "seed": 8})");
  const auto res = run_theorem_check(cfg);
  CHECK(res.status == kOk);
  CHECK(res.lambda1.d == 1);
  CHECK(res.lambda2.d == 2);
  std::ostringstream os;
  write_theorem_csv(os, res);
  std::istringstream is(os.str());
  std::string line;
  int lines = 0;
  std::getline(is, line);
  CHECK(line.rfind("label,m,d,", 0) == 0);
  std::getline(is, line);
  CHECK(line.rfind("lambda1,1,1,1,0,", 0) == 0);
  std::getline(is, line);
  CHECK(line.rfind("lambda2,2,2,2,0,1,0,", 0) == 0);
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 300);

  const auto bad_menu = parse(R"({"command": "theorem-check", "exponent_menu": ["x"]})");
  CHECK_THROWS_AS(run_theorem_check(bad_menu), ConfigError);
}

TEST_CASE("rabi and evolve commands") {
  const auto rabi = run_rabi(parse(R"({"command": "rabi", "gamma": 0.01, "omega_r": 10})"));
  CHECK(rabi.status == kOk);
  double err = 0;
  for (std::size_t i = 0; i + 1 < rabi.records.size(); i += 2) {
    if (rabi.records[i].observable != "pop_b1") continue;
    err = std::max(err, std::abs(rabi.records[i].value - rabi.records[i + 1].value));
  }
  CHECK(err < 1e-8);

  const auto ev = run_evolve(parse(R"({"command": "evolve", "n_list": [16], "kind": "odd", "t_end": 100})"));
  CHECK(ev.status == kOk);
  REQUIRE(ev.summary.size() == 1);
  CHECK(ev.summary[0].find("reduced") != std::string::npos);
}

TEST_CASE("unwritable output is an I/O error") {
  auto cfg = parse(R"({"command": "rabi", "t_end": 1, "out": "/nonexistent-dir/out.csv"})");
  std::ostringstream os, log;
  CHECK(run_command(cfg, os, log) == kIoError);
}
