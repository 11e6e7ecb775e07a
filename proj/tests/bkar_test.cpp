#include "generators.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace tribkar;

namespace {

using P = Polynomial;

BondSet bonds(const char* text, int n) { return BondSet::parse(text, n); }

}  // namespace

TEST_CASE("tree enumeration", "[bkar]") {
  const auto two = enumerate_trees(SetPartition::finest(2));
  REQUIRE(two.size() == 1);
  CHECK(two[0] == bonds("{1-2}", 2));

  const auto one = enumerate_trees(SetPartition::coarsest(4));
  REQUIRE(one.size() == 1);
  CHECK(one[0].empty());

  const auto theta = SetPartition::parse("{1,2|3,4|5,6|7|8,9}", 9);
  const auto gamma = bonds("{2-4,3-5,5-7,6-9}", 9);
  CHECK(is_tree(theta, gamma));
  const auto all = enumerate_trees(theta);
  CHECK(std::binary_search(all.begin(), all.end(), gamma));
  CHECK_FALSE(is_tree(theta, bonds("{2-4,3-5,5-7}", 9)));
  CHECK_FALSE(is_tree(theta, bonds("{1-3,2-4,5-7,6-9}", 9)));
}

TEST_CASE("tree counts follow the block-size formula", "[bkar][property]") {
  gen::Engine rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto theta = gen::set_partition(rng, gen::uniform_int(rng, 1, 6));
    const auto trees = enumerate_trees(theta);
    CHECK(Integer(static_cast<long>(trees.size())) == tree_count(theta));
    for (const auto& t : trees) CHECK(join_bonds(theta, t) == SetPartition::coarsest(theta.n()));
  }
}

TEST_CASE("geodesics in the block tree", "[bkar]") {
  const auto theta = SetPartition::parse("{1,2|3,4|5,6|7|8,9}", 9);
  const auto gamma = bonds("{2-4,3-5,5-7,6-9}", 9);
  const auto path = bonds("{2-4,3-5,6-9}", 9);
  for (int i : {0, 1})
    for (int j : {7, 8}) CHECK(geodesic(theta, gamma, i, j) == path);
  CHECK(geodesic(theta, gamma, 0, 1).empty());
  CHECK(graph_dot(theta, gamma).find("graph") != std::string::npos);
}

TEST_CASE("linear forests of cycle-cut permutations", "[bkar]") {
  const auto sigma = Permutation::parse("(1,4,5,2,6)(7,9,8)(10,11)", 11);
  const std::vector<int> cut{4, 7, 9};
  const auto lf = linear_forest_of(sigma, cut);
  CHECK(lf.bonds == bonds("{1-4,1-6,2-6,4-5,7-9,8-9,10-11}", 11));
  std::vector<Bond> boundary = lf.boundary;
  std::sort(boundary.begin(), boundary.end());
  CHECK(BondSet(11, boundary) == bonds("{2-5,7-8,10-11}", 11));
  CHECK(lf.paths.size() == 3);

  CHECK(linear_forest_bonds(Permutation::identity(4), std::vector<int>{}).empty());

  const auto small = linear_forest_of(Permutation::parse("(1 2)", 2), std::vector<int>{0});
  CHECK(small.bonds == bonds("{1-2}", 2));
  REQUIRE(small.boundary.size() == 1);
  CHECK(small.boundary[0] == Bond::of(0, 1));

  CHECK_THROWS(linear_forest_bonds(sigma, std::vector<int>{4, 7}));
  CHECK_THROWS(decompose_linear_forest(bonds("{1-2,1-3,1-4}", 4)));
  CHECK_THROWS(decompose_linear_forest(bonds("{1-2,2-3,1-3}", 3)));
}

TEST_CASE("each linear forest comes from 2^paths cycle cuttings", "[bkar][property]") {
  gen::Engine rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sigma = gen::permutation(rng, gen::uniform_int(rng, 2, 9));
    const auto cuts = cycle_cuttings(sigma);
    const auto& cut = cuts[gen::uniform_int(rng, 0, static_cast<int>(cuts.size()) - 1)];
    const auto lf = linear_forest_of(cut);
    const auto back = cycle_cuts_of_forest(lf);
    CHECK(back.size() == (std::size_t{1} << lf.paths.size()));
    bool found = false;
    for (const auto& c : back) {
      CHECK(linear_forest_bonds(c.base, c.points) == lf.bonds);
      found = found || c == cut;
    }
    CHECK(found);
  }
}

TEST_CASE("integration against the interpolation measure", "[bkar]") {
  const auto two = SetPartition::finest(2);
  const auto e = bonds("{1-2}", 2);
  CHECK(integrate_interpolation(two, e, P(1)) == 1);
  CHECK(integrate_interpolation(two, e, P::q(0, 1)) == make_rational(1, 2));
  CHECK(integrate_interpolation(SetPartition::coarsest(3), BondSet(3, {}), P(7)) == 7);
  CHECK_THROWS(integrate_interpolation(two, BondSet(2, {}), P(1)));
  CHECK_THROWS(integrate_interpolation(two, e, P::z(0, 0)));
}

TEST_CASE("BKAR small cases", "[bkar]") {
  const auto two = SetPartition::finest(2);
  auto r = bkar_check(two, P::q(0, 1));
  CHECK(r.lhs == 1);
  CHECK(r.rhs == 1);
  r = bkar_check(two, P::q(0, 1).pow(2));
  CHECK(r.lhs == 1);
  CHECK(r.rhs == 1);
  CHECK(r.holds());
  r = bkar_check(SetPartition::coarsest(3), P::q(0, 1) * Rational(5));
  CHECK(r.lhs == 5);
  CHECK(r.holds());
}

TEST_CASE("three points: f(1,1,1) - f(1,0,0) - f(0,1,0) - f(0,0,1) + 2 f(0,0,0)", "[bkar]") {
  // x = q12, y = q13, z = q23; every monomial of degree at most three.
  const auto theta = SetPartition::finest(3);
  const P x = P::q(0, 1), y = P::q(0, 2), z = P::q(1, 2);
  auto at = [&](const P& f, int a, int b, int c) {
    Matrix<Rational> q{{Rational(1), Rational(a), Rational(b)},
                       {Rational(a), Rational(1), Rational(c)},
                       {Rational(b), Rational(c), Rational(1)}};
    return f.evaluate_q(q).value();
  };
  int checked = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; a + b + c <= 3; ++c) {
        const P f = x.pow(a) * y.pow(b) * z.pow(c);
        const Rational expect = at(f, 1, 1, 1) - at(f, 1, 0, 0) - at(f, 0, 1, 0) - at(f, 0, 0, 1) + 2 * at(f, 0, 0, 0);
        const auto r = bkar_check(theta, f);
        CHECK(r.lhs == expect);
        CHECK(r.rhs == expect);
        CHECK(r.clinch == expect);
        ++checked;
      }
  CHECK(checked == 20);
}

TEST_CASE("BKAR on random q-monomials", "[bkar][property]") {
  gen::Engine rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen::uniform_int(rng, 1, 5);
    const auto theta = gen::set_partition(rng, n);
    P f;
    if (n >= 2)
      for (int t = gen::uniform_int(rng, 1, 2); t > 0; --t) f += gen::q_monomial(rng, n, 4);
    else
      f = P(3);
    const auto r = bkar_check(theta, f);
    CHECK(r.lhs == r.rhs);
    CHECK(r.rhs == r.clinch);
  }
}

TEST_CASE("last cut: moments of the cut entries", "[bkar]") {
  // All GJ pairs up to n = 6 and every cutting of σ.
  for (int n = 2; n <= 6; ++n)
    for (const auto& lambda : partitions_of(n)) {
      const auto theta = class_representative(lambda);
      const auto orb = orbit_partition(theta);
      for (const auto& sigma : enumerate_gj(theta))
        for (const auto& cut : cycle_cuttings(sigma)) {
          const auto gamma = linear_forest_bonds(sigma, cut.points);
          REQUIRE(is_tree(orb, gamma));
          const int k = static_cast<int>(cut.points.size());
          for (int mask = 0; mask < (1 << k); ++mask) {
            P f(1);
            Rational expect = 1;
            for (int b = 0; b < k; ++b)
              if (mask & (1 << b)) {
                const int a = cut.points[b];
                f *= P::q(a, sigma(a));
                expect /= sigma.orbit_length(a);
              }
            CHECK(integrate_interpolation(orb, gamma, f) == expect);
          }
        }
    }
}

TEST_CASE("sampled interpolation matrices", "[bkar][property]") {
  gen::Engine rng(44);
  const auto two = SetPartition::finest(2);
  const auto e = bonds("{1-2}", 2);
  double sum = 0;
  const int draws = 20000;
  for (int s = 0; s < draws; ++s) sum += sample_interpolation(two, e, rng)[0][1];
  // Uniform(0,1) has standard deviation 1/sqrt(12).
  CHECK(std::abs(sum / draws - 0.5) < 4.0 / std::sqrt(12.0 * draws));

  for (int trial = 0; trial < 50; ++trial) {
    const auto theta = gen::set_partition(rng, gen::uniform_int(rng, 2, 6));
    const auto trees = enumerate_trees(theta);
    const auto& gamma = trees[gen::uniform_int(rng, 0, static_cast<int>(trees.size()) - 1)];
    for (const auto& x : {sample_interpolation(theta, gamma, rng), sample_interpolation_geodesic(theta, gamma, rng)}) {
      const int n = theta.n();
      for (int i = 0; i < n; ++i) {
        CHECK(x[i][i] == 1.0);
        for (int j = 0; j < n; ++j) {
          CHECK(x[i][j] == x[j][i]);
          CHECK(x[i][j] >= 0.0);
          CHECK(x[i][j] <= 1.0);
          if (theta.same_block(i, j)) CHECK(x[i][j] == 1.0);
        }
      }
    }
  }
}

TEST_CASE("the two samplers share a law", "[bkar][property]") {
  // A mixed moment on a path of singletons against its exact integral.
  gen::Engine rng(45);
  const auto theta = SetPartition::finest(4);
  const auto gamma = bonds("{1-2,2-3,3-4}", 4);
  const Rational exact = integrate_interpolation(theta, gamma, P::q(0, 3) * P::q(1, 2));
  double a = 0, b = 0;
  const int draws = 40000;
  for (int s = 0; s < draws; ++s) {
    const auto x = sample_interpolation(theta, gamma, rng);
    const auto y = sample_interpolation_geodesic(theta, gamma, rng);
    a += x[0][3] * x[1][2];
    b += y[0][3] * y[1][2];
  }
  const double tol = 4.0 * 0.5 / std::sqrt(static_cast<double>(draws));
  CHECK(std::abs(a / draws - exact.get_d()) < tol);
  CHECK(std::abs(b / draws - exact.get_d()) < tol);
}
