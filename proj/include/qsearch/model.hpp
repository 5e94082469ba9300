#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qsearch {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised when a precondition on a model object is violated.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Diagonal "database" Hamiltonian H = sum_j E_j |j><j| with hbar = 1.
 *
 * Basis labels are 1-based everywhere in the public API. The energies are
 * stored 0-based in an Eigen vector.
 */
class HamiltonianSpec {
 public:
  /// Arbitrary spectrum; the ground index is the first minimum.
  explicit HamiltonianSpec(RealVector energies);

  /// Canonical Grover spectrum: E_ground = 0, all others equal to `gap`.
  static HamiltonianSpec grover(Index dimension, Index ground_index, double gap);

  Index dimension() const { return energies_.size(); }
  const RealVector& energies() const { return energies_; }
  double energy(Index label) const;
  Index ground_index() const { return ground_index_; }

  /// Gap E of a canonical spectrum, empty otherwise.
  std::optional<double> gap() const { return gap_; }
  bool is_canonical() const { return gap_.has_value(); }

  /// n with N = 2^n when N is a power of two.
  std::optional<int> qubit_count() const;

  /// omega_pq = E_p - E_q
  double transition_frequency(Index p, Index q) const { return energy(p) - energy(q); }

  /// Number of labels attaining the minimum energy.
  Index ground_multiplicity() const;

 private:
  RealVector energies_;
  Index ground_index_ = 1;
  std::optional<double> gap_;
};

inline HamiltonianSpec build_grover_hamiltonian(Index dimension, Index ground_index, double gap) {
  return HamiltonianSpec::grover(dimension, ground_index, gap);
}

enum class PotentialKind { Trial, OddPhase, EvenPhase, CustomStar };

/// One spoke of a custom star: <target|V(t)|center> = amplitude * exp(i frequency t).
struct StarEntry {
  Index target = 0;
  double amplitude = 0.0;
  double frequency = 0.0;
};

/**
 * Star-shaped sinusoidal potential. Nonzero entries live only in row and
 * column `center`; the matrix is Hermitian with zero diagonal.
 *
 * Trial:     <p|V|j> = g e^{+iwt},  <j|V|q> = g e^{-iwt}.
 * OddPhase:  <p|V|j> = g e^{+iwt} for odd p, g e^{-iwt} for even p.
 * EvenPhase: OddPhase with w -> -w (the entrywise conjugate).
 */
class PerturbationSpec {
 public:
  static PerturbationSpec trial(Index center, double amplitude, double frequency);
  static PerturbationSpec odd_phase(Index center, double amplitude, double frequency);
  static PerturbationSpec even_phase(Index center, double amplitude, double frequency);
  static PerturbationSpec custom_star(Index center, std::vector<StarEntry> entries);

  PotentialKind kind() const { return kind_; }
  Index center() const { return center_; }
  double amplitude() const { return amplitude_; }
  double frequency() const { return frequency_; }
  const std::vector<StarEntry>& entries() const { return entries_; }

  /// <p|V(t)|center> for p != center (the column entry).
  Complex spoke(Index p, double t) const;

  /// <p|V(t)|q>, 1-based.
  Complex entry(Index dimension, Index p, Index q, double t) const;

  /// Largest frequency appearing in the drive, used for step selection.
  double max_frequency() const;

  /// Exact spectral norm of the star matrix in dimension N (time independent).
  double spectral_norm(Index dimension) const;

  /// Dense N x N matrix at time t. Intended for oracles and small N.
  Eigen::MatrixXcd dense(Index dimension, double t) const;

 private:
  PerturbationSpec(PotentialKind kind, Index center, double amplitude, double frequency,
                   std::vector<StarEntry> entries);

  PotentialKind kind_;
  Index center_;
  double amplitude_;
  double frequency_;
  std::vector<StarEntry> entries_;
};

inline Complex potential_entry(const PerturbationSpec& v, Index dimension, Index p, Index q,
                               double t) {
  return v.entry(dimension, p, q, t);
}

/// out = V(t) * state in O(N). `out` is resized as needed.
void apply_potential(const PerturbationSpec& v, const ComplexVector& state, double t,
                     ComplexVector& out);
ComplexVector apply_potential(const PerturbationSpec& v, const ComplexVector& state, double t);

struct StateVector {
  ComplexVector amplitudes;
  double time = 0.0;

  static StateVector basis(Index dimension, Index label, double time = 0.0);
  static StateVector uniform(Index dimension, double time = 0.0);

  Index dimension() const { return amplitudes.size(); }
  double norm_squared() const { return amplitudes.squaredNorm(); }
  bool is_normalized(double tol = 1e-9) const;
  Complex amplitude(Index label) const;
};

struct EnergyFigure {
  double value = 0.0;
  /// True when the spectrum was not canonical or the drive off resonance,
  /// and max|E_j| was used for ||H||.
  bool flagged = false;
};

/// ||H||_2 + ||V||_2. For a canonical spectrum at resonance this is w + g sqrt(N-1).
EnergyFigure energy_complexity(const HamiltonianSpec& h, const PerturbationSpec& v);

}  // namespace qsearch
