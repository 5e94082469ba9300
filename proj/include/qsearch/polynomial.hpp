#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace qsearch {

/**
 * Univariate polynomial with complex coefficients stored in ascending degree.
 *
 * Trailing exact zeros are trimmed on construction so the leading
 * coefficient is nonzero unless the polynomial is identically zero.
 */
template <typename Scalar>
class Polynomial {
 public:
  using Complex = std::complex<Scalar>;
  using Coefficients = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  using Roots = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  Polynomial() : coefs_(Coefficients::Zero(1)) {}

  explicit Polynomial(Coefficients ascending) : coefs_(std::move(ascending)) {
    if (coefs_.size() == 0) coefs_ = Coefficients::Zero(1);
    trim();
  }

  Polynomial(std::initializer_list<Complex> ascending)
      : Polynomial(Coefficients::Map(ascending.begin(), static_cast<Eigen::Index>(ascending.size()))) {}

  /// c * s^k
  static Polynomial monomial(Complex c, int k) {
    Coefficients v = Coefficients::Zero(k + 1);
    v(k) = c;
    return Polynomial(std::move(v));
  }

  /// Monic polynomial with the given roots.
  static Polynomial from_roots(const Roots& roots) {
    Polynomial p{Complex(1)};
    for (Eigen::Index i = 0; i < roots.size(); ++i) p = p * Polynomial{-roots(i), Complex(1)};
    return p;
  }

  int degree() const { return static_cast<int>(coefs_.size()) - 1; }
  bool is_zero() const { return coefs_.size() == 1 && coefs_(0) == Complex(0); }
  const Coefficients& coefficients() const { return coefs_; }
  Complex operator[](int k) const { return k <= degree() ? coefs_(k) : Complex(0); }
  Complex leading() const { return coefs_(degree()); }

  Complex operator()(const Complex& z) const {
    Complex acc = coefs_(degree());
    for (int k = degree() - 1; k >= 0; --k) acc = acc * z + coefs_(k);
    return acc;
  }

  Polynomial derivative() const {
    if (degree() == 0) return Polynomial();
    Coefficients d(degree());
    for (int k = 1; k <= degree(); ++k) d(k - 1) = Scalar(k) * coefs_(k);
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const int n = std::max(a.degree(), b.degree());
    Coefficients c(n + 1);
    for (int k = 0; k <= n; ++k) c(k) = a[k] + b[k];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + Polynomial(Coefficients(-b.coefs_));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Coefficients c = Coefficients::Zero(a.degree() + b.degree() + 1);
    for (int i = 0; i <= a.degree(); ++i) {
      for (int j = 0; j <= b.degree(); ++j) c(i + j) += a.coefs_(i) * b.coefs_(j);
    }
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(Complex s, const Polynomial& p) {
    return Polynomial(Coefficients(s * p.coefs_));
  }

  /// Synthetic division by (s - root): quotient and remainder p(root).
  std::pair<Polynomial, Complex> deflate(const Complex& root) const {
    if (degree() == 0) return {Polynomial(), coefs_(0)};
    Coefficients q(degree());
    Complex carry = coefs_(degree());
    for (int k = degree() - 1; k >= 0; --k) {
      q(k) = carry;
      carry = carry * root + coefs_(k);
    }
    return {Polynomial(std::move(q)), carry};
  }

  /**
   * Roots as eigenvalues of the companion matrix of the monic polynomial,
   * each polished by a few Newton steps that are kept only if they reduce |p|.
   */
  Roots roots(int polish_iterations = 4) const {
    const int n = degree();
    if (is_zero()) throw std::domain_error("roots of the zero polynomial");
    if (n == 0) return Roots(0);
    using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix companion = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) companion(k, k - 1) = Complex(1);
    for (int k = 0; k < n; ++k) companion(k, n - 1) = -coefs_(k) / leading();
    Eigen::ComplexEigenSolver<Matrix> solver(companion, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigensolver failed");
    Roots r = solver.eigenvalues();

    const Polynomial dp = derivative();
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      for (int it = 0; it < polish_iterations; ++it) {
        const Complex f = (*this)(r(i));
        const Complex df = dp(r(i));
        if (df == Complex(0)) break;
        const Complex candidate = r(i) - f / df;
        if (std::abs((*this)(candidate)) < std::abs(f)) {
          r(i) = candidate;
        } else {
          break;
        }
      }
    }
    return r;
  }

 private:
  void trim() {
    Eigen::Index n = coefs_.size();
    while (n > 1 && coefs_(n - 1) == Complex(0)) --n;
    coefs_.conservativeResize(n);
  }

  Coefficients coefs_;
};

}  // namespace qsearch
