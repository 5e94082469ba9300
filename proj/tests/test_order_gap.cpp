#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "qsearch/order_gap.hpp"

using namespace qsearch;
using C = std::complex<double>;

namespace {

LambdaTerm term(Rational constant, Rational per_n, Rational a, Rational x) {
  return {{constant, per_n}, a, x};
}

/// s * sum_j alpha_j / (s + i w_j), evaluated term by term.
C lambda_direct(const std::vector<LambdaTerm>& terms, C s, double omega_r, double n) {
  C acc = 0;
  for (const auto& t : terms) {
    const double w = t.a.convert_to<double>() * std::pow(omega_r, t.x.convert_to<double>());
    acc += t.alpha.evaluate(n) / (s + C(0, w));
  }
  return s * acc;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational(" 3/ 6 ") == Rational(1, 2));
  CHECK(parse_rational("-.5") == Rational(-1, 2));
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(-2)) == "-2");
  CHECK_THROWS(parse_rational(""));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("1.2.3"));
}

TEST_CASE("symbolic weights") {
  CHECK(SymbolicWeight{-2, 1}.is_positive());
  CHECK(SymbolicWeight{3, 0}.is_positive());
  CHECK_FALSE(SymbolicWeight{0, 0}.is_positive());
  CHECK_FALSE(SymbolicWeight{5, -1}.is_positive());
  CHECK(SymbolicWeight{-2, 1}.evaluate(10) == 8.0);
}

TEST_CASE("build_lambda reproduces the canonical Lambda functions") {
  const auto l1 = build_lambda(lambda1_terms());
  const auto l2 = build_lambda(lambda2_terms());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 30; ++k) {
    const C s(u(rng), u(rng));
    const double w = std::exp(u(rng));
    const double n = std::floor(std::exp(3 * std::abs(u(rng)))) + 2;
    const C lam1 = (n - 2) * s / (s + C(0, w));
    const C lam2 = (n - 2) * s * s / (s * s + w * w);
    CHECK(std::abs(l1.evaluate(s, w, n) - lam1) <= 1e-12 * std::max(1.0, std::abs(lam1)));
    CHECK(std::abs(l2.evaluate(s, w, n) - lam2) <= 1e-12 * std::max(1.0, std::abs(lam2)));
  }
}

TEST_CASE("build_lambda agrees with term-by-term evaluation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  TheoremSearchOptions options;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto terms = sample_lambda_terms(seed, options);
    const auto lam = build_lambda(terms);
    const C s(u(rng) * 3, u(rng) * 3);
    const double w = 0.5 + std::abs(u(rng)) * 2;
    const double n = 64;
    const C ref = lambda_direct(terms, s, w, n);
    CHECK(std::abs(lam.evaluate(s, w, n) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("build_lambda preconditions") {
  CHECK_THROWS_AS(build_lambda({}), LambdaError);
  CHECK_THROWS_AS(build_lambda({term(0, 0, 1, 1)}), LambdaError);
  CHECK_THROWS_AS(build_lambda({term(-1, 0, 1, 1)}), LambdaError);
  CHECK_THROWS_AS(build_lambda({term(1, 0, 0, 1)}), LambdaError);
  CHECK_THROWS_AS(build_lambda({term(1, 0, 2, 1), term(3, 0, 2, 1)}), LambdaError);
  CHECK_NOTHROW(build_lambda({term(1, 0, 2, 1), term(3, 0, 2, Rational(1, 2))}));
}

TEST_CASE("order gap of Lambda_1") {
  const auto r = order_gap(lambda1_terms());
  CHECK(r.d == 1);
  CHECK(r.denominator_exponent == 1);
  CHECK(r.numerator_exponent == 0);
  CHECK_FALSE(r.s_coefficient_vanishes);
  CHECK(r.s2_coefficient_vanishes);
  CHECK(r.positivity_witness == doctest::Approx(1022.0));
  CHECK(r.all_exponents_positive);
}

TEST_CASE("order gap of Lambda_2") {
  const auto r = order_gap(lambda2_terms());
  CHECK(r.d == 2);
  CHECK(r.denominator_exponent == 2);
  CHECK(r.numerator_exponent == 0);
  CHECK(r.s_coefficient_vanishes);
  // The s^2 numerator coefficient is alpha_1 + alpha_2 = N - 2.
  CHECK_FALSE(r.s2_coefficient_vanishes);
  CHECK(r.positivity_witness == doctest::Approx(1022.0 * 100.0));
}

TEST_CASE("order gap on hand-expanded lists") {
  SUBCASE("two resonant terms at w and 2w") {
    // s(2s + 3iw) / (s^2 + 3iws - 2w^2)
    const auto r = order_gap({term(1, 0, 1, 1), term(1, 0, 2, 1)});
    CHECK(r.d == 1);
    CHECK(r.denominator_exponent == 2);
    CHECK(r.numerator_exponent == 1);
  }
  SUBCASE("resonant term plus a sqrt term") {
    // den exponent 1 + 1/2; num s[(2s) + i(w^(1/2) + w)] -> exponent 1
    const auto r = order_gap({term(1, 0, 1, 1), term(1, 0, 1, Rational(1, 2))});
    CHECK(r.d == Rational(1, 2));
  }
  SUBCASE("a non-positive exponent forces d = 0") {
    const auto r = order_gap({term(1, 0, 1, 1), term(2, 0, 3, 0)});
    CHECK(r.d == 0);
    CHECK_FALSE(r.all_exponents_positive);
  }
  SUBCASE("mirrored resonant pair with a fast spectator") {
    const auto r = order_gap({term(1, 0, 1, 1), term(1, 0, -1, 1), term(1, 0, 1, 2)});
    CHECK(r.d <= 2);
    CHECK(r.positivity_witness > 0);
  }
  SUBCASE("a resonant term is required") {
    CHECK_THROWS_AS(order_gap({term(1, 0, 1, 2)}), LambdaError);
  }
}

TEST_CASE("sampled term lists are valid and reproducible") {
  TheoremSearchOptions options;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto terms = sample_lambda_terms(seed, options);
    REQUIRE_FALSE(terms.empty());
    CHECK(terms.size() <= static_cast<std::size_t>(options.m_cap));
    bool resonant = false;
    std::set<std::pair<Rational, Rational>> freqs;
    for (const auto& t : terms) {
      CHECK(t.alpha.is_positive());
      CHECK(t.a != 0);
      resonant = resonant || t.x == 1;
      CHECK(freqs.insert({t.a, t.x}).second);
    }
    CHECK(resonant);
    const auto again = sample_lambda_terms(seed, options);
    REQUIRE(again.size() == terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) CHECK(again[i].to_string() == terms[i].to_string());
  }
}

TEST_CASE("random search finds no order gap above two") {
  TheoremSearchOptions options;
  options.samples = 2000;
  options.seed = 3;
  const auto res = run_theorem_search(options);
  CHECK(res.samples.size() == 2000);
  CHECK(res.max_d <= 2);
  CHECK(res.violations == 0);
  CHECK(res.witness_failures == 0);
  CHECK(res.lemma_failures == 0);
  bool reached_two = false;
  for (const auto& s : res.samples) {
    CHECK(s.report.d == s.report.denominator_exponent - s.report.numerator_exponent);
    CHECK(s.report.positivity_witness > 0);
    if (s.report.d > 0) CHECK(s.report.all_exponents_positive);
    reached_two = reached_two || s.report.d == 2;
  }
  CHECK(reached_two);
}

TEST_CASE("search option validation") {
  TheoremSearchOptions options;
  options.exponent_menu = {Rational(1, 2), 2};
  CHECK_THROWS_AS(run_theorem_search(options), LambdaError);
  options.exponent_menu = {};
  options.m_cap = 0;
  CHECK_THROWS_AS(run_theorem_search(options), LambdaError);
}
