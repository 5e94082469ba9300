#include "qsearch/harness/sweeps.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qsearch/dynamics.hpp"
#include "qsearch/parallel.hpp"
#include "qsearch/reduced.hpp"

namespace qsearch::harness {

namespace {

constexpr double kPi = std::numbers::pi;
/// Largest acceptable norm drift in any emitted run.
constexpr double kNormDriftLimit = 1e-9;

SweepRecord row(const GridPoint& p, std::optional<double> t, const char* observable,
                double value) {
  return {p.n, p.gamma, p.omega_r, t, observable, value};
}

void append_series(std::vector<SweepRecord>& out, const GridPoint& p, const Series& s,
                   const char* observable) {
  for (Index i = 0; i < s.size(); ++i) out.push_back(row(p, s.t(i), observable, s.values(i)));
}

/// Evaluates fn on every grid point in parallel and concatenates in grid order.
template <typename Fn>
std::vector<SweepRecord> per_point(const std::vector<GridPoint>& points, Fn&& fn) {
  std::vector<std::vector<SweepRecord>> parts(points.size());
  parallel_for(static_cast<long>(points.size()),
               [&](long i) { parts[static_cast<std::size_t>(i)] = fn(points[static_cast<std::size_t>(i)]); });
  std::vector<SweepRecord> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

PerturbationSpec potential(PotentialKind kind, Index center, double gamma, double omega) {
  switch (kind) {
    case PotentialKind::OddPhase: return PerturbationSpec::odd_phase(center, gamma, omega);
    case PotentialKind::EvenPhase: return PerturbationSpec::even_phase(center, gamma, omega);
    default: return PerturbationSpec::trial(center, gamma, omega);
  }
}

const SweepRecord* find(const std::vector<SweepRecord>& rs, const GridPoint& p,
                        const std::string& observable) {
  for (const auto& r : rs) {
    if (r.n == p.n && r.gamma == p.gamma && r.omega_r == p.omega_r && r.observable == observable) {
      return &r;
    }
  }
  return nullptr;
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs at least two paired points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepResult run_rabi(const ExperimentConfig& cfg) {
  const GridPoint p{2, cfg.gamma, cfg.omega_r};
  const double t_end = cfg.t_end.value_or(2.0 * kPi / cfg.gamma);
  const HamiltonianSpec h = build_grover_hamiltonian(2, 1, cfg.omega_r);
  const PerturbationSpec v = PerturbationSpec::trial(2, cfg.gamma, cfg.omega_r + cfg.detuning);
  const Trajectory traj = evolve(h, v, StateVector::basis(2, 2), t_end,
                                 step_policy(cfg, default_policy(h, v, t_end)));
  const Series c1 = population(traj, 1);
  const RabiParams rabi(cfg.gamma, cfg.detuning);

  SweepResult res;
  double max_err = 0.0;
  for (Index i = 0; i < c1.size(); ++i) {
    const double exact = rabi_population(rabi, c1.t(i));
    max_err = std::max(max_err, std::abs(exact - c1.values(i)));
    res.records.push_back(row(p, c1.t(i), "pop_b1", c1.values(i)));
    res.records.push_back(row(p, c1.t(i), "pop_rabi", exact));
  }
  res.records.push_back(row(p, std::nullopt, "norm_drift", traj.max_norm_drift));
  res.summary.push_back("rabi: gamma=" + fmt(cfg.gamma) + " detuning=" + fmt(cfg.detuning) +
                        " max|c1^2 - rabi|=" + fmt(max_err, 3) +
                        " norm_drift=" + fmt(traj.max_norm_drift, 3));
  if (traj.max_norm_drift >= kNormDriftLimit) res.status = kPropertyViolation;
  return res;
}

SweepResult run_evolve(const ExperimentConfig& cfg) {
  const auto points = grid(cfg);
  std::vector<std::string> notes(points.size());
  std::vector<char> drifted(points.size(), 0);
  SweepResult res;
  res.records = per_point(points, [&](const GridPoint& p) {
    const double t_end = cfg.t_end.value_or(kPi / p.gamma);
    const HamiltonianSpec h = build_grover_hamiltonian(p.n, 1, p.omega_r);
    const PerturbationSpec v = potential(cfg.kind, 2, p.gamma, p.omega_r);
    const StepPolicy policy = step_policy(cfg, default_policy(h, v, t_end));
    const Trajectory traj = evolve(h, v, StateVector::basis(p.n, 2), t_end, policy);
    const Series c1 = population(traj, 1);

    std::vector<SweepRecord> rows;
    append_series(rows, p, c1, "pop_b1");
    rows.push_back(row(p, std::nullopt, "norm_drift", traj.max_norm_drift));

    const auto idx = static_cast<std::size_t>(&p - points.data());
    std::string note = "evolve N=" + std::to_string(p.n) + " norm_drift=" + fmt(traj.max_norm_drift, 3);
    const ResonanceParams rp(p.n, p.gamma, p.omega_r);
    if (cfg.kind == PotentialKind::Trial || (cfg.kind == PotentialKind::OddPhase && p.n % 2 == 0)) {
      const Series reduced = cfg.kind == PotentialKind::Trial
                                 ? evolve_reduced_trial(rp, t_end, policy).population(1)
                                 : evolve_reduced_opt(rp, t_end, policy).population(1);
      note += " max|full - reduced|=" + fmt((reduced.values - c1.values).cwiseAbs().maxCoeff(), 3);
    }
    notes[idx] = note;
    drifted[idx] = traj.max_norm_drift >= kNormDriftLimit;
    return rows;
  });
  res.summary = notes;
  for (char d : drifted) {
    if (d) res.status = kPropertyViolation;
  }
  return res;
}

SweepResult run_fig2_sweep(const ExperimentConfig& cfg) {
  const auto points = grid(cfg);
  SweepResult res;
  res.records = per_point(points, [&](const GridPoint& p) {
    const ResonanceParams rp(p.n, p.gamma, p.omega_r);
    const double t_end = cfg.t_end.value_or(2.0 * kPi / p.gamma);
    const auto series = evolve_reduced_trial(rp, t_end, step_policy(cfg, reduced_policy(rp, t_end)));
    const Series b1 = series.population(1);
    std::vector<SweepRecord> rows;
    append_series(rows, p, b1, "pop_b1");
    rows.push_back(row(p, std::nullopt, "peak_pop", peak_scan(b1).value));
    rows.push_back(row(p, std::nullopt, "peak_time", first_peak(b1).t));
    rows.push_back(row(p, std::nullopt, "norm_drift", series.max_norm_drift));
    return rows;
  });
  for (const auto& p : points) {
    res.summary.push_back("fig2 N=" + std::to_string(p.n) + " omega_R=" + fmt(p.omega_r) +
                          " peak=" + fmt(find(res.records, p, "peak_pop")->value) +
                          " first_peak_t=" + fmt(find(res.records, p, "peak_time")->value));
  }
  return res;
}

SweepResult run_fig3_sweep(const ExperimentConfig& cfg) {
  const auto points = grid(cfg);
  SweepResult res;
  res.records = per_point(points, [&](const GridPoint& p) {
    const ResonanceParams rp(p.n, p.gamma, p.omega_r);
    const double t_end = cfg.t_end.value_or(2.0 * kPi / p.gamma);
    const auto series = evolve_reduced_trial(rp, t_end, step_policy(cfg, reduced_policy(rp, t_end)));
    const Series b1 = series.population(1);
    return std::vector<SweepRecord>{row(p, std::nullopt, "peak_pop", peak_scan(b1).value),
                                    row(p, std::nullopt, "peak_time", first_peak(b1).t),
                                    row(p, std::nullopt, "norm_drift", series.max_norm_drift)};
  });
  for (const auto& p : points) {
    res.summary.push_back("fig3 N=" + std::to_string(p.n) + " omega_R=" + fmt(p.omega_r) +
                          " peak=" + fmt(find(res.records, p, "peak_pop")->value));
  }
  return res;
}

SweepResult run_peak_law_sweep(const ExperimentConfig& cfg) {
  const auto points = grid(cfg);
  SweepResult res;
  res.records = per_point(points, [&](const GridPoint& p) {
    const ResonanceParams rp(p.n, p.gamma, p.omega_r);
    const double tau = oscillation_period(rp);
    const double t_end = cfg.t_end.value_or(3.0 * tau);
    const auto series = evolve_reduced_opt(rp, t_end, step_policy(cfg, reduced_policy(rp, t_end)));
    const Series b1 = series.population(1);
    const Peak peak = peak_scan(b1);
    const double predicted = peak_probability(rp);
    const auto period = peak_spacing(b1);
    const ComplexityReport report = complexity_report(rp);

    std::vector<SweepRecord> rows;
    rows.push_back(row(p, std::nullopt, "peak_pop", peak.value));
    rows.push_back(row(p, std::nullopt, "peak_time", first_peak(b1).t));
    rows.push_back(row(p, std::nullopt, "predicted_pr", predicted));
    if (period) rows.push_back(row(p, std::nullopt, "period", *period));
    rows.push_back(row(p, std::nullopt, "predicted_period", tau));
    if (p.n > 2) {
      rows.push_back(row(p, std::nullopt, "rel_err_peak", std::abs(peak.value - predicted) / predicted));
      if (period) rows.push_back(row(p, std::nullopt, "rel_err_period", std::abs(*period - tau) / tau));
    }
    rows.push_back(row(p, std::nullopt, "time_energy", report.time_energy));
    rows.push_back(row(p, std::nullopt, "norm_drift", series.max_norm_drift));
    return rows;
  });

  double worst_peak = 0.0;
  double worst_period = 0.0;
  std::vector<double> ns;
  std::vector<double> products;
  for (const auto& p : points) {
    const auto* peak_err = find(res.records, p, "rel_err_peak");
    const auto* period_err = find(res.records, p, "rel_err_period");
    std::string line = "peak-law N=" + std::to_string(p.n) + " gamma=" + fmt(p.gamma) +
                       " omega_R=" + fmt(p.omega_r) +
                       " peak=" + fmt(find(res.records, p, "peak_pop")->value) +
                       " predicted=" + fmt(find(res.records, p, "predicted_pr")->value);
    if (peak_err) line += " rel_err_peak=" + fmt(peak_err->value, 3);
    if (period_err) line += " rel_err_period=" + fmt(period_err->value, 3);
    res.summary.push_back(line);
    if (p.n >= 64) {
      if (peak_err) worst_peak = std::max(worst_peak, peak_err->value);
      if (period_err) worst_period = std::max(worst_period, period_err->value);
    }
    ns.push_back(static_cast<double>(p.n));
    products.push_back(find(res.records, p, "time_energy")->value);
  }
  res.summary.push_back("peak-law worst relative error (N >= 64): peak=" + fmt(worst_peak, 3) +
                        " period=" + fmt(worst_period, 3));
  std::vector<double> distinct = ns;
  std::sort(distinct.begin(), distinct.end());
  if (std::unique(distinct.begin(), distinct.end()) - distinct.begin() >= 2) {
    res.summary.push_back("peak-law fitted exponent of T*E vs N: " +
                          fmt(loglog_slope(ns, products), 4));
  }
  return res;
}

SweepResult run_algorithm_cmd(const ExperimentConfig& cfg) {
  const auto points = grid(cfg);
  SweepResult res;
  for (const auto& p : points) {
    const HamiltonianSpec h = build_grover_hamiltonian(p.n, cfg.ground, p.omega_r);
    SearchConfig sc;
    sc.gamma = p.gamma;
    sc.timing = cfg.timing;
    sc.start_index = cfg.start;
    if (cfg.dt) {
      StepPolicy policy;
      policy.step = *cfg.dt;
      sc.policy = policy;
    }
    const Algorithm algorithm = cfg.algorithm == 1 ? Algorithm::Naive : Algorithm::Optimized;
    const SuccessEstimate est = estimate_success(algorithm, h, sc, cfg.trials, cfg.seed);
    for (const auto& o : est.outcomes) {
      res.records.push_back(row(p, o.total_time, "trial_success", o.success ? 1.0 : 0.0));
    }
    res.records.push_back(row(p, std::nullopt, "success_freq", est.frequency));
    res.records.push_back(row(p, std::nullopt, "ci_low", est.ci_low));
    res.records.push_back(row(p, std::nullopt, "ci_high", est.ci_high));
    res.records.push_back(row(p, std::nullopt, "predicted_pr", est.predicted_pr));
    res.records.push_back(row(p, std::nullopt, "predicted_per_run", est.predicted_per_run));
    res.records.push_back(row(p, std::nullopt, "norm_drift", est.max_norm_drift));
    res.summary.push_back("algorithm " + std::to_string(cfg.algorithm) + " N=" +
                          std::to_string(p.n) + " trials=" + std::to_string(est.trials) +
                          " successes=" + std::to_string(est.successes) +
                          " freq=" + fmt(est.frequency) + " CI95=[" + fmt(est.ci_low) + ", " +
                          fmt(est.ci_high) + "] predicted_pr=" + fmt(est.predicted_pr) +
                          " predicted_per_run=" + fmt(est.predicted_per_run) +
                          " t_meas=" + fmt(est.measurement_time));
  }
  return res;
}

TheoremCheckResult run_theorem_check(const ExperimentConfig& cfg) {
  TheoremSearchOptions options;
  options.seed = cfg.seed;
  options.samples = cfg.samples;
  options.m_cap = cfg.m_cap;
  try {
    for (const auto& e : cfg.exponent_menu) options.exponent_menu.push_back(parse_rational(e));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("exponent_menu: ") + e.what());
  }

  TheoremCheckResult res;
  res.lambda1 = order_gap(lambda1_terms(), options.witness);
  res.lambda2 = order_gap(lambda2_terms(), options.witness);
  res.search = run_theorem_search(options);

  Rational max_d = res.search.max_d;
  if (res.lambda1.d > max_d) max_d = res.lambda1.d;
  if (res.lambda2.d > max_d) max_d = res.lambda2.d;
  res.summary.push_back("theorem-check: Lambda1 d=" + to_string(res.lambda1.d) +
                        ", Lambda2 d=" + to_string(res.lambda2.d));
  res.summary.push_back("theorem-check: samples=" + std::to_string(res.search.samples.size()) +
                        " max d=" + to_string(max_d) +
                        " violations(d>2)=" + std::to_string(res.search.violations) +
                        " witness_failures=" + std::to_string(res.search.witness_failures) +
                        " lemma_failures=" + std::to_string(res.search.lemma_failures));
  if (res.search.violations > 0 || res.search.witness_failures > 0 || max_d > 2) {
    res.status = kPropertyViolation;
    res.summary.push_back("theorem-check: COUNTEREXAMPLE FOUND");
  }
  return res;
}

void write_theorem_csv(std::ostream& os, const TheoremCheckResult& result) {
  os << "label,m,d,denominator_exponent,numerator_exponent,s_coefficient_vanishes,"
        "s2_coefficient_vanishes,positivity_witness,terms\n";
  auto line = [&os](const std::string& label, const std::vector<LambdaTerm>& terms,
                    const OrderGapReport& r) {
    std::string joined;
    for (const auto& t : terms) joined += t.to_string();
    os << label << ',' << terms.size() << ',' << to_string(r.d) << ','
       << to_string(r.denominator_exponent) << ',' << to_string(r.numerator_exponent) << ','
       << (r.s_coefficient_vanishes ? 1 : 0) << ',' << (r.s2_coefficient_vanishes ? 1 : 0) << ','
       << format_double(r.positivity_witness) << ',' << joined << '\n';
  };
  line("lambda1", lambda1_terms(), result.lambda1);
  line("lambda2", lambda2_terms(), result.lambda2);
  for (std::size_t i = 0; i < result.search.samples.size(); ++i) {
    const auto& s = result.search.samples[i];
    line("sample-" + std::to_string(i), s.terms, s.report);
  }
}

int run_command(const ExperimentConfig& cfg, std::ostream& fallback, std::ostream& log) {
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!file) {
      log << "error: cannot open output file '" << cfg.out << "'\n";
      return kIoError;
    }
  }
  std::ostream& os = cfg.out.empty() ? fallback : file;

  int status = kOk;
  std::vector<std::string> summary;
  if (cfg.command == Command::TheoremCheck) {
    const auto res = run_theorem_check(cfg);
    write_theorem_csv(os, res);
    summary = res.summary;
    status = res.status;
  } else {
    SweepResult res;
    switch (cfg.command) {
      case Command::Rabi: res = run_rabi(cfg); break;
      case Command::Evolve: res = run_evolve(cfg); break;
      case Command::Fig2: res = run_fig2_sweep(cfg); break;
      case Command::Fig3: res = run_fig3_sweep(cfg); break;
      case Command::PeakLaw: res = run_peak_law_sweep(cfg); break;
      case Command::Algorithm: res = run_algorithm_cmd(cfg); break;
      case Command::TheoremCheck: break;
    }
    write_csv(os, res.records);
    summary = res.summary;
    status = res.status;
    for (const auto& r : res.records) {
      if (r.observable == "norm_drift" && r.value >= kNormDriftLimit && status == kOk) {
        status = kPropertyViolation;
        summary.push_back("norm drift " + fmt(r.value, 3) + " at N=" + std::to_string(r.n) +
                          " exceeds " + fmt(kNormDriftLimit, 3));
      }
    }
  }
  os.flush();
  if (!os) {
    log << "error: failed writing output\n";
    return kIoError;
  }
  for (const auto& line : summary) log << line << '\n';
  return status;
}

}  // namespace qsearch::harness
