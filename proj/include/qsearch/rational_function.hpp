#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "qsearch/polynomial.hpp"

namespace qsearch {

/// Poles too close to treat as simple; the caller should integrate in time instead.
class NearDegeneratePoles : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative pole gap below which partial fractions are refused.
inline constexpr double kPoleSeparationTolerance = 1e-9;

template <typename Scalar>
struct PoleResidue {
  std::complex<Scalar> pole;
  std::complex<Scalar> residue;
};

/// num(s) / den(s) over complex coefficients.
template <typename Scalar>
class RationalFunction {
 public:
  using Poly = Polynomial<Scalar>;
  using Complex = typename Poly::Complex;

  RationalFunction(Poly numerator, Poly denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  Complex operator()(const Complex& s) const { return num_(s) / den_(s); }

  bool is_strictly_proper() const { return num_.is_zero() || num_.degree() < den_.degree(); }

  /**
   * Cancels denominator roots at which the numerator vanishes to within
   * `tol` (relative to the numerator's coefficient scale). Returns a copy
   * unchanged when no common factor is found.
   */
  RationalFunction reduced(Scalar tol = Scalar(1e-12)) const {
    Poly num = num_;
    Poly den = den_;
    bool changed = true;
    while (changed && den.degree() > 0 && !num.is_zero() && num.degree() > 0) {
      changed = false;
      const auto roots = den.roots();
      for (Eigen::Index i = 0; i < roots.size(); ++i) {
        const Scalar scale = num.coefficients().cwiseAbs().maxCoeff() *
                             std::max(Scalar(1), std::pow(std::abs(roots(i)), Scalar(num.degree())));
        if (std::abs(num(roots(i))) <= tol * scale) {
          num = num.deflate(roots(i)).first;
          den = den.deflate(roots(i)).first;
          changed = true;
          break;
        }
      }
    }
    return {std::move(num), std::move(den)};
  }

  /// Residues num(p)/den'(p) at the supplied simple poles.
  std::vector<PoleResidue<Scalar>> residues_at(const typename Poly::Roots& poles) const {
    check_separation(poles);
    const Poly dden = den_.derivative();
    std::vector<PoleResidue<Scalar>> out;
    out.reserve(static_cast<std::size_t>(poles.size()));
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
      out.push_back({poles(i), num_(poles(i)) / dden(poles(i))});
    }
    return out;
  }

  /// Partial-fraction expansion over the companion-matrix poles.
  std::vector<PoleResidue<Scalar>> partial_fractions() const {
    if (!is_strictly_proper()) {
      throw std::invalid_argument("partial fractions need a strictly proper rational function");
    }
    return residues_at(den_.roots());
  }

 private:
  static void check_separation(const typename Poly::Roots& poles) {
    Scalar scale = std::numeric_limits<Scalar>::min();
    for (Eigen::Index i = 0; i < poles.size(); ++i) scale = std::max(scale, std::abs(poles(i)));
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
      for (Eigen::Index j = i + 1; j < poles.size(); ++j) {
        if (std::abs(poles(i) - poles(j)) < Scalar(kPoleSeparationTolerance) * scale) {
          throw NearDegeneratePoles(
              "poles are not simple within tolerance; use time-domain integration");
        }
      }
    }
  }

  Poly num_;
  Poly den_;
};

/// Time-domain evaluator sum_k r_k exp(p_k t) of a partial-fraction expansion.
template <typename Scalar>
class InverseLaplace {
 public:
  using Complex = std::complex<Scalar>;

  explicit InverseLaplace(std::vector<PoleResidue<Scalar>> terms) : terms_(std::move(terms)) {}
  explicit InverseLaplace(const RationalFunction<Scalar>& rf) : terms_(rf.partial_fractions()) {}

  Complex operator()(Scalar t) const {
    Complex acc(0);
    for (const auto& term : terms_) acc += term.residue * std::exp(term.pole * t);
    return acc;
  }

  Eigen::Matrix<Complex, Eigen::Dynamic, 1> operator()(
      const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& times) const {
    Eigen::Matrix<Complex, Eigen::Dynamic, 1> out(times.size());
    for (Eigen::Index i = 0; i < times.size(); ++i) out(i) = (*this)(times(i));
    return out;
  }

  const std::vector<PoleResidue<Scalar>>& terms() const { return terms_; }

 private:
  std::vector<PoleResidue<Scalar>> terms_;
};

template <typename Scalar>
std::complex<Scalar> inverse_transform(const RationalFunction<Scalar>& rf, Scalar t) {
  return InverseLaplace<Scalar>(rf)(t);
}

}  // namespace qsearch
