#pragma once

#include "qsearch/rational_function.hpp"
#include "qsearch/reduced.hpp"

namespace qsearch {

using RationalFunctionD = RationalFunction<double>;
using PolynomialD = Polynomial<double>;

/// B1(s) of the trial system, cleared: -ig(s + iwR) / [(s^2+g^2)(s+iwR) + g^2(N-2)s].
RationalFunctionD b1_s_trial(const ResonanceParams& p);

/// B1(s) of the optimized system, cleared: -ig(s^2+wR^2) / [(s^2+g^2)(s^2+wR^2) + g^2(N-2)s^2].
RationalFunctionD b1_s_opt(const ResonanceParams& p);

/**
 * Poles of b1_s_opt from its denominator viewed as a quadratic in s^2:
 * with lambda = -s^2, lambda^2 - (wR^2 + (N-1)g^2) lambda + g^2 wR^2 = 0.
 * Returned as +-i sqrt(lambda_slow), +-i sqrt(lambda_fast).
 */
PolynomialD::Roots b1_s_opt_poles(const ResonanceParams& p);

/// Inverse transform of b1_s_opt using the exact poles.
InverseLaplace<double> b1_opt_time_domain(const ResonanceParams& p);

/// Inverse transform of b1_s_trial using companion-matrix poles.
InverseLaplace<double> b1_trial_time_domain(const ResonanceParams& p);

}  // namespace qsearch
