#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qsearch {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-1/2" or a decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// a + b i with exact rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re == 0 && im == 0; }
  friend GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// Polynomial in the opaque positive parameter N with Gaussian-rational coefficients.
class NPolynomial {
 public:
  NPolynomial() = default;
  static NPolynomial constant(GaussianRational c);
  /// constant + per_n * N
  static NPolynomial affine(const Rational& constant, const Rational& per_n);

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, GaussianRational>& terms() const { return terms_; }
  std::complex<double> evaluate(double n) const;

  friend NPolynomial operator+(const NPolynomial& x, const NPolynomial& y);
  friend NPolynomial operator*(const NPolynomial& x, const NPolynomial& y);
  friend bool operator==(const NPolynomial&, const NPolynomial&) = default;

 private:
  void add(int degree, const GaussianRational& c);
  std::map<int, GaussianRational> terms_;
};

/// Coefficient of one power of s: a finite sum of NPolynomial * wR^exponent.
class GradedCoefficient {
 public:
  GradedCoefficient() = default;
  static GradedCoefficient monomial(NPolynomial coefficient, Rational exponent);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Rational, NPolynomial>& terms() const { return terms_; }
  /// Largest wR exponent with a nonzero coefficient. Requires !is_zero().
  Rational max_exponent() const;
  std::complex<double> evaluate(double omega_r, double n) const;

  friend GradedCoefficient operator+(const GradedCoefficient& x, const GradedCoefficient& y);
  friend GradedCoefficient operator*(const GradedCoefficient& x, const GradedCoefficient& y);
  friend bool operator==(const GradedCoefficient&, const GradedCoefficient&) = default;

 private:
  void add(const Rational& exponent, const NPolynomial& c);
  std::map<Rational, NPolynomial> terms_;
};

/// Polynomial in s (ascending) with graded coefficients.
using GradedPolynomial = std::vector<GradedCoefficient>;

/// Positive weight alpha = constant + per_n * N.
struct SymbolicWeight {
  Rational constant;
  Rational per_n;

  bool is_positive() const { return per_n > 0 || (per_n == 0 && constant > 0); }
  double evaluate(double n) const;
  std::string to_string() const;
  friend bool operator==(const SymbolicWeight&, const SymbolicWeight&) = default;
};

/// One term alpha / (s + i w) of Lambda, with w = a * wR^x.
struct LambdaTerm {
  SymbolicWeight alpha;
  Rational a;
  Rational x;

  std::string to_string() const;
};

/// Lambda = s sum_j alpha_j / (s + i w_j), cleared over the common denominator.
struct LambdaExpansion {
  GradedPolynomial numerator;
  GradedPolynomial denominator;

  std::complex<double> evaluate(std::complex<double> s, double omega_r, double n) const;
};

class LambdaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Validates the term list (non-empty, alpha > 0, a != 0, distinct frequencies) and expands it.
LambdaExpansion build_lambda(const std::vector<LambdaTerm>& terms);

/// The trial potential's single-term list: alpha = N-2, w = wR.
std::vector<LambdaTerm> lambda1_terms();
/// The optimized potential's mirrored pair: alpha = (N-2)/2 at w = +-wR.
std::vector<LambdaTerm> lambda2_terms();

struct OrderGapReport {
  /// Denominator max exponent minus numerator max exponent.
  Rational d;
  Rational denominator_exponent;
  Rational numerator_exponent;
  /// sum_j alpha_j prod_{k != j} w_k == 0 (numerator coefficient of s).
  bool s_coefficient_vanishes = false;
  /// numerator coefficient of s^2 == 0.
  bool s2_coefficient_vanishes = false;
  /// sum_j alpha_j prod_{k != j} w_k^2 at the reference point.
  double positivity_witness = 0.0;
  bool all_exponents_positive = false;
};

struct WitnessPoint {
  double omega_r = 10.0;
  double n = 1024.0;
};

/// Requires at least one x_j = 1 (a resonant spoke).
OrderGapReport order_gap(const std::vector<LambdaTerm>& terms, WitnessPoint at = {});

struct TheoremSearchOptions {
  std::uint64_t seed = 1;
  long samples = 10000;
  int m_cap = 6;
  std::vector<Rational> exponent_menu;  // empty: {1, 2, 1/2, 3/2, 1/3, 0, -1}
  WitnessPoint witness;
};

struct TheoremSample {
  std::vector<LambdaTerm> terms;
  OrderGapReport report;
};

struct TheoremSearchResult {
  std::vector<TheoremSample> samples;
  Rational max_d;
  long violations = 0;
  /// Samples whose witness was not strictly positive.
  long witness_failures = 0;
  /// Samples with d > 0 but some x_j <= 0.
  long lemma_failures = 0;
};

/// Random valid term list drawn from the configured menus.
std::vector<LambdaTerm> sample_lambda_terms(std::uint64_t seed, const TheoremSearchOptions& options);

/// Counterexample hunt for d <= 2 over `options.samples` random term lists.
TheoremSearchResult run_theorem_search(const TheoremSearchOptions& options);

}  // namespace qsearch
