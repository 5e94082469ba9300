#include "qsearch/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsearch {

namespace {

void check_label(Index label, Index dimension, const char* what) {
  if (label < 1 || label > dimension) {
    throw ModelError(std::string(what) + " " + std::to_string(label) + " outside [1, " +
                     std::to_string(dimension) + "]");
  }
}

Complex phase(double frequency, double t) { return std::polar(1.0, frequency * t); }

}  // namespace

HamiltonianSpec::HamiltonianSpec(RealVector energies) : energies_(std::move(energies)) {
  if (energies_.size() < 2) throw ModelError("Hamiltonian needs at least two states");
  if (!energies_.allFinite()) throw ModelError("Hamiltonian energies must be finite");
  Index argmin = 0;
  energies_.minCoeff(&argmin);
  ground_index_ = argmin + 1;
}

HamiltonianSpec HamiltonianSpec::grover(Index dimension, Index ground_index, double gap) {
  if (dimension < 2) throw ModelError("Grover spectrum needs N >= 2");
  check_label(ground_index, dimension, "ground index");
  if (!(gap > 0.0) || !std::isfinite(gap)) throw ModelError("gap must be positive and finite");
  RealVector energies = RealVector::Constant(dimension, gap);
  energies(ground_index - 1) = 0.0;
  HamiltonianSpec h(std::move(energies));
  h.ground_index_ = ground_index;
  h.gap_ = gap;
  return h;
}

double HamiltonianSpec::energy(Index label) const {
  check_label(label, dimension(), "state label");
  return energies_(label - 1);
}

std::optional<int> HamiltonianSpec::qubit_count() const {
  const auto n = static_cast<unsigned long long>(dimension());
  if ((n & (n - 1)) != 0) return std::nullopt;
  int bits = 0;
  while ((1ULL << bits) < n) ++bits;
  return bits;
}

Index HamiltonianSpec::ground_multiplicity() const {
  const double emin = energies_.minCoeff();
  return static_cast<Index>((energies_.array() == emin).count());
}

PerturbationSpec::PerturbationSpec(PotentialKind kind, Index center, double amplitude,
                                   double frequency, std::vector<StarEntry> entries)
    : kind_(kind),
      center_(center),
      amplitude_(amplitude),
      frequency_(frequency),
      entries_(std::move(entries)) {
  if (center_ < 1) throw ModelError("potential center must be a 1-based label");
  if (kind_ != PotentialKind::CustomStar) {
    if (!(amplitude_ > 0.0) || !std::isfinite(amplitude_)) {
      throw ModelError("potential amplitude must be positive");
    }
    if (!std::isfinite(frequency_)) throw ModelError("potential frequency must be finite");
  }
}

PerturbationSpec PerturbationSpec::trial(Index center, double amplitude, double frequency) {
  return {PotentialKind::Trial, center, amplitude, frequency, {}};
}

PerturbationSpec PerturbationSpec::odd_phase(Index center, double amplitude, double frequency) {
  return {PotentialKind::OddPhase, center, amplitude, frequency, {}};
}

PerturbationSpec PerturbationSpec::even_phase(Index center, double amplitude, double frequency) {
  return {PotentialKind::EvenPhase, center, amplitude, frequency, {}};
}

PerturbationSpec PerturbationSpec::custom_star(Index center, std::vector<StarEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const StarEntry& a, const StarEntry& b) { return a.target < b.target; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.target < 1 || e.target == center) {
      throw ModelError("custom star target must be a label different from the center");
    }
    if (i > 0 && entries[i - 1].target == e.target) {
      throw ModelError("custom star targets must be unique");
    }
    if (!(e.amplitude > 0.0) || !std::isfinite(e.amplitude) || !std::isfinite(e.frequency)) {
      throw ModelError("custom star amplitudes must be positive and frequencies finite");
    }
  }
  double amax = 0.0;
  for (const auto& e : entries) amax = std::max(amax, e.amplitude);
  return {PotentialKind::CustomStar, center, amax, 0.0, std::move(entries)};
}

Complex PerturbationSpec::spoke(Index p, double t) const {
  if (p == center_) return {0.0, 0.0};
  switch (kind_) {
    case PotentialKind::Trial:
      return amplitude_ * phase(frequency_, t);
    case PotentialKind::OddPhase:
      return amplitude_ * phase(p % 2 == 1 ? frequency_ : -frequency_, t);
    case PotentialKind::EvenPhase:
      return amplitude_ * phase(p % 2 == 1 ? -frequency_ : frequency_, t);
    case PotentialKind::CustomStar: {
      auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                 [](const StarEntry& e, Index label) { return e.target < label; });
      if (it == entries_.end() || it->target != p) return {0.0, 0.0};
      return it->amplitude * phase(it->frequency, t);
    }
  }
  return {0.0, 0.0};
}

Complex PerturbationSpec::entry(Index dimension, Index p, Index q, double t) const {
  check_label(p, dimension, "row");
  check_label(q, dimension, "column");
  check_label(center_, dimension, "potential center");
  if (p == q) return {0.0, 0.0};
  if (q == center_) return spoke(p, t);
  if (p == center_) return std::conj(spoke(q, t));
  return {0.0, 0.0};
}

double PerturbationSpec::max_frequency() const {
  if (kind_ != PotentialKind::CustomStar) return std::abs(frequency_);
  double w = 0.0;
  for (const auto& e : entries_) w = std::max(w, std::abs(e.frequency));
  return w;
}

double PerturbationSpec::spectral_norm(Index dimension) const {
  // A Hermitian star with spoke vector u has eigenvalues +-|u| and zeros.
  if (kind_ != PotentialKind::CustomStar) {
    return amplitude_ * std::sqrt(static_cast<double>(dimension - 1));
  }
  double sum = 0.0;
  for (const auto& e : entries_) {
    if (e.target <= dimension) sum += e.amplitude * e.amplitude;
  }
  return std::sqrt(sum);
}

Eigen::MatrixXcd PerturbationSpec::dense(Index dimension, double t) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dimension, dimension);
  for (Index p = 1; p <= dimension; ++p) {
    for (Index q = 1; q <= dimension; ++q) m(p - 1, q - 1) = entry(dimension, p, q, t);
  }
  return m;
}

void apply_potential(const PerturbationSpec& v, const ComplexVector& state, double t,
                     ComplexVector& out) {
  const Index n = state.size();
  const Index j = v.center();
  if (j < 1 || j > n) throw ModelError("potential center outside state dimension");
  out.resize(n);
  const Complex cj = state(j - 1);

  switch (v.kind()) {
    case PotentialKind::Trial: {
      const Complex up = v.amplitude() * phase(v.frequency(), t);
      out.setConstant(up * cj);
      out(j - 1) = std::conj(up) * (state.sum() - cj);
      break;
    }
    case PotentialKind::OddPhase:
    case PotentialKind::EvenPhase: {
      const double w = v.kind() == PotentialKind::OddPhase ? v.frequency() : -v.frequency();
      const Complex odd = v.amplitude() * phase(w, t);
      const Complex even = std::conj(odd);
      const Complex odd_cj = odd * cj;
      const Complex even_cj = even * cj;
      Complex odd_sum{0.0, 0.0};
      Complex even_sum{0.0, 0.0};
      // 0-based k holds label k+1: even k is an odd label.
      for (Index k = 0; k < n; k += 2) {
        out(k) = odd_cj;
        odd_sum += state(k);
      }
      for (Index k = 1; k < n; k += 2) {
        out(k) = even_cj;
        even_sum += state(k);
      }
      if (j % 2 == 1) {
        odd_sum -= cj;
      } else {
        even_sum -= cj;
      }
      out(j - 1) = std::conj(odd) * odd_sum + std::conj(even) * even_sum;
      break;
    }
    case PotentialKind::CustomStar: {
      out.setZero();
      Complex row{0.0, 0.0};
      for (const auto& e : v.entries()) {
        if (e.target > n) throw ModelError("custom star target outside state dimension");
        const Complex s = e.amplitude * phase(e.frequency, t);
        out(e.target - 1) = s * cj;
        row += std::conj(s) * state(e.target - 1);
      }
      out(j - 1) = row;
      break;
    }
  }
}

ComplexVector apply_potential(const PerturbationSpec& v, const ComplexVector& state, double t) {
  ComplexVector out;
  apply_potential(v, state, t, out);
  return out;
}

StateVector StateVector::basis(Index dimension, Index label, double time) {
  check_label(label, dimension, "basis label");
  StateVector s{ComplexVector::Zero(dimension), time};
  s.amplitudes(label - 1) = 1.0;
  return s;
}

StateVector StateVector::uniform(Index dimension, double time) {
  if (dimension < 1) throw ModelError("state dimension must be positive");
  return {ComplexVector::Constant(dimension, 1.0 / std::sqrt(static_cast<double>(dimension))),
          time};
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

Complex StateVector::amplitude(Index label) const {
  check_label(label, dimension(), "state label");
  return amplitudes(label - 1);
}

EnergyFigure energy_complexity(const HamiltonianSpec& h, const PerturbationSpec& v) {
  const double vnorm = v.spectral_norm(h.dimension());
  if (h.is_canonical() && v.kind() != PotentialKind::CustomStar &&
      std::abs(v.frequency() - *h.gap()) <= 1e-12 * std::max(1.0, *h.gap())) {
    return {v.frequency() + vnorm, false};
  }
  return {h.energies().cwiseAbs().maxCoeff() + vnorm, true};
}

}  // namespace qsearch
