#include "qsearch/order_gap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace qsearch {

namespace {

double to_double(const Rational& r) { return r.convert_to<double>(); }

GradedPolynomial multiply(const GradedPolynomial& x, const GradedPolynomial& y) {
  GradedPolynomial out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = out[i + j] + x[i] * y[j];
  }
  return out;
}

GradedPolynomial add(const GradedPolynomial& x, const GradedPolynomial& y) {
  GradedPolynomial out(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < x.size()) out[i] = out[i] + x[i];
    if (i < y.size()) out[i] = out[i] + y[i];
  }
  return out;
}

/// s + i a wR^x
GradedPolynomial pole_factor(const LambdaTerm& term) {
  return {GradedCoefficient::monomial(NPolynomial::constant({0, term.a}), term.x),
          GradedCoefficient::monomial(NPolynomial::constant({1, 0}), 0)};
}

std::optional<Rational> max_exponent(const GradedPolynomial& p) {
  std::optional<Rational> best;
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    const Rational e = c.max_exponent();
    if (!best || e > *best) best = e;
  }
  return best;
}

void validate(const std::vector<LambdaTerm>& terms) {
  if (terms.empty()) throw LambdaError("Lambda needs at least one term");
  std::set<std::pair<Rational, Rational>> seen;
  for (const auto& t : terms) {
    if (!t.alpha.is_positive()) throw LambdaError("alpha must be positive: " + t.to_string());
    if (t.a == 0) throw LambdaError("frequency coefficient a must be nonzero: " + t.to_string());
    if (!seen.insert({t.a, t.x}).second) {
      throw LambdaError("duplicate frequency in term list: " + t.to_string());
    }
  }
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(s.substr(0, slash));
    const Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
  }
  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  boost::multiprecision::cpp_int digits = 0;
  boost::multiprecision::cpp_int scale = 1;
  bool fraction = false;
  bool any = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.' && !fraction) {
      fraction = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (fraction) scale *= 10;
      any = true;
    } else {
      throw std::invalid_argument("cannot parse rational '" + text + "'");
    }
  }
  if (!any) throw std::invalid_argument("cannot parse rational '" + text + "'");
  Rational r(digits, scale);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.str(); }

NPolynomial NPolynomial::constant(GaussianRational c) {
  NPolynomial p;
  p.add(0, c);
  return p;
}

NPolynomial NPolynomial::affine(const Rational& constant, const Rational& per_n) {
  NPolynomial p;
  p.add(0, {constant, 0});
  p.add(1, {per_n, 0});
  return p;
}

void NPolynomial::add(int degree, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(degree, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::complex<double> NPolynomial::evaluate(double n) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [deg, c] : terms_) {
    acc += std::complex<double>(to_double(c.re), to_double(c.im)) * std::pow(n, deg);
  }
  return acc;
}

NPolynomial operator+(const NPolynomial& x, const NPolynomial& y) {
  NPolynomial out = x;
  for (const auto& [deg, c] : y.terms_) out.add(deg, c);
  return out;
}

NPolynomial operator*(const NPolynomial& x, const NPolynomial& y) {
  NPolynomial out;
  for (const auto& [dx, cx] : x.terms_) {
    for (const auto& [dy, cy] : y.terms_) out.add(dx + dy, cx * cy);
  }
  return out;
}

GradedCoefficient GradedCoefficient::monomial(NPolynomial coefficient, Rational exponent) {
  GradedCoefficient g;
  g.add(exponent, coefficient);
  return g;
}

void GradedCoefficient::add(const Rational& exponent, const NPolynomial& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational GradedCoefficient::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("max_exponent of a zero coefficient");
  return terms_.rbegin()->first;
}

std::complex<double> GradedCoefficient::evaluate(double omega_r, double n) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [e, c] : terms_) acc += c.evaluate(n) * std::pow(omega_r, to_double(e));
  return acc;
}

GradedCoefficient operator+(const GradedCoefficient& x, const GradedCoefficient& y) {
  GradedCoefficient out = x;
  for (const auto& [e, c] : y.terms_) out.add(e, c);
  return out;
}

GradedCoefficient operator*(const GradedCoefficient& x, const GradedCoefficient& y) {
  GradedCoefficient out;
  for (const auto& [ex, cx] : x.terms_) {
    for (const auto& [ey, cy] : y.terms_) out.add(ex + ey, cx * cy);
  }
  return out;
}

double SymbolicWeight::evaluate(double n) const {
  return to_double(constant) + to_double(per_n) * n;
}

std::string SymbolicWeight::to_string() const {
  if (per_n == 0) return qsearch::to_string(constant);
  std::ostringstream os;
  os << "(" << qsearch::to_string(per_n) << ")N";
  if (constant > 0) os << "+" << qsearch::to_string(constant);
  if (constant < 0) os << "-" << qsearch::to_string(Rational(-constant));
  return os.str();
}

std::string LambdaTerm::to_string() const {
  return "{alpha=" + alpha.to_string() + ";a=" + qsearch::to_string(a) +
         ";x=" + qsearch::to_string(x) + "}";
}

std::complex<double> LambdaExpansion::evaluate(std::complex<double> s, double omega_r,
                                               double n) const {
  auto eval = [&](const GradedPolynomial& p) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * s + p[k].evaluate(omega_r, n);
    return acc;
  };
  return eval(numerator) / eval(denominator);
}

LambdaExpansion build_lambda(const std::vector<LambdaTerm>& terms) {
  validate(terms);
  const GradedCoefficient one = GradedCoefficient::monomial(NPolynomial::constant({1, 0}), 0);

  LambdaExpansion out;
  out.denominator = {one};
  for (const auto& t : terms) out.denominator = multiply(out.denominator, pole_factor(t));

  GradedPolynomial sum;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    GradedPolynomial partial = {GradedCoefficient::monomial(
        NPolynomial::affine(terms[j].alpha.constant, terms[j].alpha.per_n), 0)};
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (k != j) partial = multiply(partial, pole_factor(terms[k]));
    }
    sum = add(sum, partial);
  }
  out.numerator.assign(1, GradedCoefficient{});
  out.numerator.insert(out.numerator.end(), sum.begin(), sum.end());
  return out;
}

std::vector<LambdaTerm> lambda1_terms() { return {{{-2, 1}, 1, 1}}; }

std::vector<LambdaTerm> lambda2_terms() {
  const SymbolicWeight half{-1, Rational(1, 2)};
  return {{half, 1, 1}, {half, -1, 1}};
}

OrderGapReport order_gap(const std::vector<LambdaTerm>& terms, WitnessPoint at) {
  const LambdaExpansion lambda = build_lambda(terms);
  if (std::none_of(terms.begin(), terms.end(), [](const LambdaTerm& t) { return t.x == 1; })) {
    throw LambdaError("order_gap needs a resonant term with x = 1");
  }
  OrderGapReport r;
  // Both are nonzero: the s^m coefficients are sum(alpha) and 1.
  r.denominator_exponent = *max_exponent(lambda.denominator);
  r.numerator_exponent = *max_exponent(lambda.numerator);
  r.d = r.denominator_exponent - r.numerator_exponent;
  r.s_coefficient_vanishes = lambda.numerator.size() < 2 || lambda.numerator[1].is_zero();
  r.s2_coefficient_vanishes = lambda.numerator.size() < 3 || lambda.numerator[2].is_zero();
  r.all_exponents_positive =
      std::all_of(terms.begin(), terms.end(), [](const LambdaTerm& t) { return t.x > 0; });

  double witness = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    double prod = terms[j].alpha.evaluate(at.n);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (k == j) continue;
      const double w = to_double(terms[k].a) * std::pow(at.omega_r, to_double(terms[k].x));
      prod *= w * w;
    }
    witness += prod;
  }
  r.positivity_witness = witness;
  return r;
}

std::vector<LambdaTerm> sample_lambda_terms(std::uint64_t seed,
                                            const TheoremSearchOptions& options) {
  static const std::vector<Rational> default_menu = {1, 2, Rational(1, 2), Rational(3, 2),
                                                     Rational(1, 3), 0, -1};
  static const std::vector<Rational> coefficient_menu = {1, -1, 2, -2, 3, -3,
                                                         Rational(1, 2), Rational(-1, 2),
                                                         Rational(3, 2), Rational(-3, 2)};
  static const std::vector<SymbolicWeight> weight_menu = {
      {1, 0}, {2, 0}, {3, 0}, {Rational(1, 2), 0}, {Rational(5, 2), 0},
      {-2, 1}, {-1, Rational(1, 2)}};
  const auto& exponents = options.exponent_menu.empty() ? default_menu : options.exponent_menu;
  if (std::find(exponents.begin(), exponents.end(), Rational(1)) == exponents.end()) {
    throw LambdaError("exponent menu must contain 1");
  }
  if (options.m_cap < 1) throw LambdaError("m_cap must be at least 1");

  std::mt19937_64 rng(seed);
  auto pick = [&rng](const auto& menu) {
    return menu[std::uniform_int_distribution<std::size_t>(0, menu.size() - 1)(rng)];
  };
  const int m = std::uniform_int_distribution<int>(1, options.m_cap)(rng);
  const bool mirrored = m >= 2 && std::bernoulli_distribution(0.5)(rng);

  std::vector<LambdaTerm> terms;
  std::set<std::pair<Rational, Rational>> used;
  auto try_add = [&](const LambdaTerm& t) {
    if (static_cast<int>(terms.size()) >= m || !used.insert({t.a, t.x}).second) return false;
    terms.push_back(t);
    return true;
  };

  LambdaTerm resonant{pick(weight_menu), pick(coefficient_menu), 1};
  try_add(resonant);
  if (mirrored) try_add({resonant.alpha, -resonant.a, resonant.x});
  for (int attempts = 0; static_cast<int>(terms.size()) < m && attempts < 1000; ++attempts) {
    LambdaTerm t{pick(weight_menu), pick(coefficient_menu), pick(exponents)};
    if (try_add(t) && mirrored) try_add({t.alpha, -t.a, t.x});
  }
  std::shuffle(terms.begin(), terms.end(), rng);
  return terms;
}

TheoremSearchResult run_theorem_search(const TheoremSearchOptions& options) {
  TheoremSearchResult result;
  result.max_d = Rational(-1000000);
  result.samples.reserve(static_cast<std::size_t>(std::max(0L, options.samples)));
  std::seed_seq base{static_cast<std::uint32_t>(options.seed),
                     static_cast<std::uint32_t>(options.seed >> 32)};
  std::mt19937_64 seeder(base);
  for (long i = 0; i < options.samples; ++i) {
    TheoremSample sample;
    sample.terms = sample_lambda_terms(seeder(), options);
    sample.report = order_gap(sample.terms, options.witness);
    if (sample.report.d > result.max_d) result.max_d = sample.report.d;
    if (sample.report.d > 2) ++result.violations;
    if (!(sample.report.positivity_witness > 0.0)) ++result.witness_failures;
    if (sample.report.d > 0 && !sample.report.all_exponents_positive) ++result.lemma_failures;
    result.samples.push_back(std::move(sample));
  }
  return result;
}

}  // namespace qsearch
