#include "generators.hpp"

#include <catch_amalgamated.hpp>

using namespace tribkar;

namespace {

using P = Polynomial;

Matrix<Rational> ones(int n) { return Matrix<Rational>(n, std::vector<Rational>(n, Rational(1))); }

Matrix<Rational> covariance_2(const Rational& c12) {
  return {{Rational(1), c12}, {c12, Rational(1)}};
}

/// Symmetric with unit diagonal; the expectation is polynomial in Q so no
/// positivity is needed for the identities below.
Matrix<Rational> random_q(gen::Engine& rng, int n) {
  Matrix<Rational> q(n, std::vector<Rational>(n, Rational(1)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) q[i][j] = q[j][i] = gen::rational(rng, 0, 4, 4);
  return q;
}

}  // namespace

TEST_CASE("edge Laplacians", "[poly]") {
  CHECK(d_edge(P::z(0, 0) * P::z(1, 0), 0, 1) == P(1));
  CHECK(d_edge(P::z(0, 0), 0, 1).is_zero());
  CHECK(d_edge(P::z(0, 0) * P::z(1, 1), 0, 1).is_zero());
  CHECK(d_edge(P::z(0, 2).pow(2) * P::z(1, 2).pow(3), 0, 1) == P::z(0, 2) * P::z(1, 2).pow(2) * Rational(6));

  // (Σ_j z_{1j}z_{2j})(Σ_j z_{3j}²/2) under D_{2,3} gives Σ_j z_{1j}z_{3j}.
  for (int m = 1; m <= 4; ++m) {
    P cross, squares, expect;
    for (int j = 1; j <= m; ++j) {
      cross += P::z(0, j) * P::z(1, j) * make_rational(1, 2);
      squares += P::z(2, j) * P::z(2, j) * make_rational(1, 2);
      expect += P::z(0, j) * P::z(2, j);
    }
    CHECK(d_edge(cross * squares, 1, 2) * Rational(2) == expect);
  }
}

TEST_CASE("derivatives in q", "[poly]") {
  CHECK(partial_sym(P::q(0, 1), 0, 1) == P(1));
  CHECK(partial_sym(P::q(1, 0).pow(2), 0, 1) == P::q(0, 1) * Rational(2));
  CHECK(partial_sym(P::q(0, 1), 0, 2).is_zero());
  CHECK(P::q(2, 0) == P::q(0, 2));
  CHECK_THROWS(P::q(1, 1));
}

TEST_CASE("natural transform on small inputs", "[gauss]") {
  const CovarianceSpec c(covariance_2(Rational(1)), 1);
  CHECK(natural(P::z(0, 0), c).is_zero());
  CHECK(natural(P::z(0, 0) * P::z(1, 0), c) == P::q(0, 1));
  CHECK(natural(P::z(0, 0) * P::z(0, 0), c) == P(1));
  CHECK(natural(P::z(0, 0).pow(4), c) == P(3));
  CHECK(natural(P(5), c) == P(5));
  CHECK_THROWS(natural(P::z(0, 3), c));
}

TEST_CASE("Gaussian expectations with recoupling", "[gauss]") {
  const auto id = CovarianceSpec::identity(2, 1);
  CHECK(gaussian_expectation(P::z(0, 0) * P::z(1, 0), id, ones(2)) == 0);

  const CovarianceSpec c(covariance_2(Rational(1)), 1);
  const Rational t = make_rational(2, 7);
  const Matrix<Rational> q{{1, t}, {t, 1}};
  CHECK(gaussian_expectation(P::z(0, 0) * P::z(1, 0), c, q) == t);
  CHECK(gaussian_expectation_pairing(P::z(0, 0) * P::z(1, 0), c, q) == t);
  CHECK(gaussian_expectation(P::z(0, 0).pow(4), c, q) == 3);
  CHECK(gaussian_expectation_pairing(P::z(0, 0).pow(4), c, q) == 3);
  // Distinct copies never pair.
  CHECK(gaussian_expectation(P::z(0, 0) * P::z(0, 1), CovarianceSpec::identity(1, 2), ones(1)) == 0);
}

TEST_CASE("covariances must be symmetric positive semidefinite", "[gauss]") {
  CHECK_NOTHROW(CovarianceSpec::identity(3, 1));
  CHECK_THROWS(CovarianceSpec(covariance_2(Rational(2)), 1));
  CHECK_THROWS(CovarianceSpec(Matrix<Rational>{{1, 0}, {1, 1}}, 1));
  CHECK_THROWS(CovarianceSpec(CovarianceSpec::identity(2, 1).matrix(), 0));
  CHECK(CovarianceSpec::is_positive_semidefinite(Matrix<Rational>{{0, 0}, {0, 0}}));
  CHECK_FALSE(CovarianceSpec::is_positive_semidefinite(Matrix<Rational>{{0, 1}, {1, 0}}));
  gen::Engine rng(31);
  for (int trial = 0; trial < 50; ++trial)
    CHECK(CovarianceSpec::is_positive_semidefinite(gen::psd_matrix(rng, gen::uniform_int(rng, 1, 5))));
}

TEST_CASE("operator form agrees with Wick pairings", "[gauss][property]") {
  gen::Engine rng(32);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen::uniform_int(rng, 1, 4);
    const int copies = gen::uniform_int(rng, 1, 3);
    const CovarianceSpec c(gen::psd_matrix(rng, n), copies);
    std::vector<int> points(n);
    for (int i = 0; i < n; ++i) points[i] = i;
    P g;
    const int terms = gen::uniform_int(rng, 1, 3);
    for (int t = 0; t < terms; ++t) g += gen::z_monomial(rng, points, copies, 6);
    const auto q = random_q(rng, n);
    CHECK(gaussian_expectation(g, c, q) == gaussian_expectation_pairing(g, c, q));
  }
}

TEST_CASE("culling rules on random monomials", "[gauss][property]") {
  gen::Engine rng(33);
  int first_fired = 0, second_fired = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen::uniform_int(rng, 2, 5);
    const int copies = gen::uniform_int(rng, 1, 3);
    const auto theta = gen::set_partition(rng, n);
    if (theta.num_blocks() < 2) continue;
    const auto trees = enumerate_trees(theta);
    const auto& gamma = trees[gen::uniform_int(rng, 0, static_cast<int>(trees.size()) - 1)];
    std::vector<int> points(n);
    for (int i = 0; i < n; ++i) points[i] = i;
    const P z = gen::z_monomial(rng, points, copies, 7);
    const Monomial& mono = z.terms().begin()->first;

    std::vector<std::vector<int>> nu(n, std::vector<int>(copies, 0));
    std::vector<int> nu_i(n, 0);
    for (const auto& [v, e] : mono.factors()) {
      nu[v.i][v.j] += e;
      nu_i[v.i] += e;
    }
    long overlap = 1;
    for (const auto& e : gamma.bonds()) {
      long s = 0;
      for (int j = 0; j < copies; ++j) s += nu[e.a][j] * nu[e.b][j];
      overlap *= s;
    }
    const auto deg = gamma.degrees();
    bool excess = false;
    for (int i = 0; i < n; ++i) excess = excess || deg[i] > nu_i[i];

    const P d = d_gamma(z, gamma);
    if (overlap == 0) {
      ++first_fired;
      CHECK(d.is_zero());
    }
    if (excess) {
      ++second_fired;
      CHECK(d.is_zero());
    }
  }
  CHECK(first_fired > 20);
  CHECK(second_fired > 20);
}
