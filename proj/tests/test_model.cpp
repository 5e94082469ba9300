#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qsearch/model.hpp"

using namespace qsearch;
using oracle::Star;

namespace {

ComplexVector random_state(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  ComplexVector c(n);
  for (Index i = 0; i < n; ++i) c(i) = Complex(d(rng), d(rng));
  return c;
}

PerturbationSpec make(Star kind, Index j, double g, double w) {
  switch (kind) {
    case Star::Odd: return PerturbationSpec::odd_phase(j, g, w);
    case Star::Even: return PerturbationSpec::even_phase(j, g, w);
    default: return PerturbationSpec::trial(j, g, w);
  }
}

}  // namespace

TEST_CASE("grover spectrum construction") {
  const auto h4 = build_grover_hamiltonian(4, 1, 10.0);
  CHECK(h4.energies() == RealVector((RealVector(4) << 0, 10, 10, 10).finished()));
  CHECK(h4.gap() == 10.0);
  CHECK(h4.qubit_count() == 2);

  const auto h2 = build_grover_hamiltonian(2, 2, 1.0);
  CHECK(h2.energy(1) == 1.0);
  CHECK(h2.energy(2) == 0.0);
  CHECK(h2.ground_index() == 2);

  const auto big = build_grover_hamiltonian(1024, 513, 5.0);
  CHECK(big.dimension() == 1024);
  CHECK((big.energies().array() == 0.0).count() == 1);
  CHECK(big.energy(513) == 0.0);
  CHECK(big.ground_multiplicity() == 1);
  CHECK(big.qubit_count() == 10);
  CHECK_FALSE(build_grover_hamiltonian(6, 1, 1.0).qubit_count().has_value());
}

TEST_CASE("grover construction rejects bad input") {
  CHECK_THROWS_AS(build_grover_hamiltonian(1, 1, 1.0), ModelError);
  CHECK_THROWS_AS(build_grover_hamiltonian(4, 0, 1.0), ModelError);
  CHECK_THROWS_AS(build_grover_hamiltonian(4, 5, 1.0), ModelError);
  CHECK_THROWS_AS(build_grover_hamiltonian(4, 1, 0.0), ModelError);
  CHECK_THROWS_AS(build_grover_hamiltonian(4, 1, -2.0), ModelError);
}

TEST_CASE("general spectra") {
  const HamiltonianSpec h(RealVector((RealVector(4) << 3, 0, 0, 7).finished()));
  CHECK(h.ground_index() == 2);
  CHECK(h.ground_multiplicity() == 2);
  CHECK_FALSE(h.is_canonical());
  CHECK(h.transition_frequency(4, 1) == 4.0);
}

TEST_CASE("trial potential follows the case table") {
  const double g = 0.3, w = 2.0, t = 0.7;
  const auto v = PerturbationSpec::trial(2, g, w);
  const Complex up = g * std::exp(Complex(0, w * t));
  CHECK(std::abs(potential_entry(v, 4, 1, 2, t) - up) < 1e-15);
  CHECK(std::abs(potential_entry(v, 4, 2, 1, t) - std::conj(up)) < 1e-15);
  CHECK(potential_entry(v, 4, 3, 4, t) == Complex(0));
  CHECK(potential_entry(v, 4, 2, 2, t) == Complex(0));
}

TEST_CASE("odd-phase potential matches the displayed 4x4 example") {
  const double g = 0.5, w = 3.0, t = 1.1;
  const Complex u = g * std::exp(Complex(0, w * t));
  const Complex d = std::conj(u);
  Eigen::Matrix4cd expected;
  expected << 0, u, 0, 0,
              d, 0, d, u,
              0, u, 0, 0,
              0, d, 0, 0;
  const auto v = PerturbationSpec::odd_phase(2, g, w);
  CHECK((v.dense(4, t) - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("potential entries agree with the independent case-table oracle") {
  for (Star kind : {Star::Trial, Star::Odd, Star::Even}) {
    for (Index j : {1, 2, 5}) {
      const auto v = make(kind, j, 0.4, 1.7);
      for (double t : {0.0, 0.3, 2.9}) {
        const auto ref = oracle::star_matrix(kind, 7, static_cast<int>(j), 0.4, 1.7, t);
        CHECK((v.dense(7, t) - ref).cwiseAbs().maxCoeff() < 1e-15);
      }
    }
  }
}

TEST_CASE("hermiticity, zero diagonal and star sparsity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (Star kind : {Star::Trial, Star::Odd, Star::Even}) {
    for (int rep = 0; rep < 20; ++rep) {
      const Index n = 2 + rep % 9;
      const Index j = 1 + rep % n;
      const auto v = make(kind, j, 0.1 + std::abs(u(rng)), u(rng));
      const double t = u(rng);
      for (Index p = 1; p <= n; ++p) {
        for (Index q = 1; q <= n; ++q) {
          const Complex a = potential_entry(v, n, p, q, t);
          CHECK(a == std::conj(potential_entry(v, n, q, p, t)));
          if (p == q || (p != j && q != j)) CHECK(a == Complex(0));
        }
      }
    }
  }
}

TEST_CASE("even phase is the entrywise conjugate of odd phase") {
  for (double t : {0.0, 0.25, 1.5, 40.0}) {
    const auto odd = PerturbationSpec::odd_phase(3, 0.2, 4.0).dense(9, t);
    const auto even = PerturbationSpec::even_phase(3, 0.2, 4.0).dense(9, t);
    const auto flipped = PerturbationSpec::odd_phase(3, 0.2, -4.0).dense(9, t);
    CHECK((even - odd.conjugate()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((even - flipped).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("apply_potential on basis vectors") {
  const double g = 0.25;
  const auto v = PerturbationSpec::trial(2, g, 1.0);
  const auto at_center = apply_potential(v, StateVector::basis(5, 2).amplitudes, 0.4);
  CHECK(at_center(1) == Complex(0));
  for (Index k : {0, 2, 3, 4}) CHECK(std::abs(std::abs(at_center(k)) - g) < 1e-15);

  const auto off = apply_potential(v, StateVector::basis(5, 3).amplitudes, 0.4);
  for (Index k = 0; k < 5; ++k) {
    if (k == 1) {
      CHECK(std::abs(off(k)) > 0);
    } else {
      CHECK(off(k) == Complex(0));
    }
  }
}

TEST_CASE("apply_potential equals dense multiplication") {
  std::mt19937_64 rng(11);
  SUBCASE("N = 8 random state") {
    const ComplexVector c = random_state(8, rng);
    for (Star kind : {Star::Trial, Star::Odd, Star::Even}) {
      const ComplexVector ref = oracle::star_matrix(kind, 8, 3, 0.7, 2.2, 1.3) * c;
      CHECK((apply_potential(make(kind, 3, 0.7, 2.2), c, 1.3) - ref).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SUBCASE("all N <= 16") {
    std::uniform_real_distribution<double> u(0.01, 3);
    for (int n = 2; n <= 16; ++n) {
      for (Star kind : {Star::Trial, Star::Odd, Star::Even}) {
        const ComplexVector c = random_state(n, rng);
        const int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        const double g = u(rng), w = u(rng), t = u(rng);
        const ComplexVector ref = oracle::star_matrix(kind, n, j, g, w, t) * c;
        const auto got = apply_potential(make(kind, j, g, w), c, t);
        CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-13);
      }
    }
  }
  SUBCASE("custom star") {
    const auto v = PerturbationSpec::custom_star(2, {{1, 0.3, 1.0}, {4, 1.2, -2.0}});
    const ComplexVector c = random_state(5, rng);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
    const double t = 0.8;
    m(0, 1) = 0.3 * std::exp(Complex(0, 1.0 * t));
    m(3, 1) = 1.2 * std::exp(Complex(0, -2.0 * t));
    m(1, 0) = std::conj(m(0, 1));
    m(1, 3) = std::conj(m(3, 1));
    CHECK((apply_potential(v, c, t) - m * c).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("apply_potential rejects a center outside the state") {
  const auto v = PerturbationSpec::trial(6, 1.0, 1.0);
  CHECK_THROWS_AS(apply_potential(v, StateVector::basis(4, 1).amplitudes, 0.0), ModelError);
}

TEST_CASE("perturbation construction rejects bad input") {
  CHECK_THROWS_AS(PerturbationSpec::trial(0, 1.0, 1.0), ModelError);
  CHECK_THROWS_AS(PerturbationSpec::trial(1, 0.0, 1.0), ModelError);
  CHECK_THROWS_AS(PerturbationSpec::odd_phase(1, -1.0, 1.0), ModelError);
  CHECK_THROWS_AS(PerturbationSpec::custom_star(2, {{2, 1.0, 0.0}}), ModelError);
  CHECK_THROWS_AS(PerturbationSpec::custom_star(2, {{1, 1.0, 0.0}, {1, 2.0, 1.0}}), ModelError);
  CHECK_THROWS_AS(PerturbationSpec::custom_star(2, {{1, 0.0, 0.0}}), ModelError);
}

TEST_CASE("star spectral norm matches the eigen-decomposition oracle") {
  for (int n = 2; n <= 64; ++n) {
    for (Star kind : {Star::Trial, Star::Odd, Star::Even}) {
      const double g = 0.37;
      const auto m = oracle::star_matrix(kind, n, 1 + n / 2, g, 1.9, 0.61);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
      const double ref = es.eigenvalues().cwiseAbs().maxCoeff();
      const double got = make(kind, 1 + n / 2, g, 1.9).spectral_norm(n);
      CHECK(std::abs(got - ref) <= 1e-10 * ref);
    }
  }
}

TEST_CASE("energy complexity") {
  SUBCASE("N = 5 against dense eigenvalues") {
    const auto h = build_grover_hamiltonian(5, 1, 7.0);
    const auto v = PerturbationSpec::trial(2, 2.0, 7.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        oracle::star_matrix(Star::Trial, 5, 2, 2.0, 7.0, 0.3), Eigen::EigenvaluesOnly);
    const double ref = 7.0 + es.eigenvalues().cwiseAbs().maxCoeff();
    const auto e = energy_complexity(h, v);
    CHECK(e.value == doctest::Approx(11.0).epsilon(1e-14));
    CHECK(std::abs(e.value - ref) < 1e-12);
    CHECK_FALSE(e.flagged);
  }
  SUBCASE("N = 2") {
    const auto e = energy_complexity(build_grover_hamiltonian(2, 1, 3.5),
                                     PerturbationSpec::odd_phase(2, 0.125, 3.5));
    CHECK(e.value == doctest::Approx(3.625).epsilon(1e-15));
  }
  SUBCASE("N = 10001 with a power-iteration check at N = 101") {
    const auto e = energy_complexity(build_grover_hamiltonian(10001, 1, 10.0),
                                     PerturbationSpec::trial(2, 0.01, 10.0));
    CHECK(e.value == doctest::Approx(11.0).epsilon(1e-14));
    const auto small = PerturbationSpec::trial(2, 0.01, 10.0);
    const double ref = oracle::power_norm(oracle::star_matrix(Star::Trial, 101, 2, 0.01, 10.0, 0.0));
    CHECK(std::abs(small.spectral_norm(101) - ref) < 1e-10);
    CHECK(small.spectral_norm(101) == doctest::Approx(0.1).epsilon(1e-14));
  }
  SUBCASE("off resonance or non-canonical is flagged") {
    const auto off = energy_complexity(build_grover_hamiltonian(5, 1, 7.0),
                                       PerturbationSpec::trial(2, 2.0, 6.0));
    CHECK(off.flagged);
    CHECK(off.value == doctest::Approx(11.0));
    const HamiltonianSpec h(RealVector((RealVector(3) << 0, 2, 9).finished()));
    const auto irregular = energy_complexity(h, PerturbationSpec::trial(2, 1.0, 2.0));
    CHECK(irregular.flagged);
    CHECK(irregular.value == doctest::Approx(9.0 + std::sqrt(2.0)));
  }
}

TEST_CASE("state vectors") {
  const auto b = StateVector::basis(6, 4, 1.5);
  CHECK(b.amplitude(4) == Complex(1));
  CHECK(b.time == 1.5);
  CHECK(b.is_normalized());
  const auto u = StateVector::uniform(9);
  CHECK(std::abs(u.norm_squared() - 1.0) < 1e-15);
  CHECK(std::abs(u.amplitude(9) - 1.0 / 3.0) < 1e-15);
  CHECK_THROWS_AS(StateVector::basis(3, 4), ModelError);
  CHECK_FALSE(StateVector{ComplexVector::Constant(2, 1.0), 0.0}.is_normalized());
}
