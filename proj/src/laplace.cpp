#include "qsearch/laplace.hpp"

#include <cmath>

namespace qsearch {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

}  // namespace

RationalFunctionD b1_s_trial(const ResonanceParams& p) {
  const double g = p.gamma;
  const double w = p.omega_r;
  const double spectators = static_cast<double>(p.dimension - 2);
  const PolynomialD s_plus_iw{kI * w, 1.0};
  const PolynomialD rabi{g * g, 0.0, 1.0};
  const PolynomialD coupling{0.0, g * g * spectators};
  return {-kI * g * s_plus_iw, rabi * s_plus_iw + coupling};
}

RationalFunctionD b1_s_opt(const ResonanceParams& p) {
  const double g = p.gamma;
  const double w = p.omega_r;
  const double spectators = static_cast<double>(p.dimension - 2);
  const PolynomialD s2_plus_w2{w * w, 0.0, 1.0};
  const PolynomialD rabi{g * g, 0.0, 1.0};
  const PolynomialD coupling{0.0, 0.0, g * g * spectators};
  return {-kI * g * s2_plus_w2, rabi * s2_plus_w2 + coupling};
}

PolynomialD::Roots b1_s_opt_poles(const ResonanceParams& p) {
  const double g2 = p.gamma * p.gamma;
  const double w2 = p.omega_r * p.omega_r;
  const double b = w2 + static_cast<double>(p.dimension - 1) * g2;
  const double c = g2 * w2;
  // b^2 - 4c = (w2 - g2)^2 + (N-2) g2 (2 w2 + 2 g2 + (N-2) g2) >= 0, computed without cancellation.
  const double spectators = static_cast<double>(p.dimension - 2);
  const double disc = (w2 - g2) * (w2 - g2) + spectators * g2 * (2.0 * w2 + 2.0 * g2 + spectators * g2);
  const double fast = 0.5 * (b + std::sqrt(disc));
  const double slow = c / fast;
  PolynomialD::Roots r(4);
  r << kI * std::sqrt(slow), -kI * std::sqrt(slow), kI * std::sqrt(fast), -kI * std::sqrt(fast);
  return r;
}

InverseLaplace<double> b1_opt_time_domain(const ResonanceParams& p) {
  return InverseLaplace<double>(b1_s_opt(p).residues_at(b1_s_opt_poles(p)));
}

InverseLaplace<double> b1_trial_time_domain(const ResonanceParams& p) {
  return InverseLaplace<double>(b1_s_trial(p));
}

}  // namespace qsearch
