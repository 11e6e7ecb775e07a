#include "generators.hpp"

#include <catch_amalgamated.hpp>

using namespace tribkar;

namespace {

NumericalPartition part(const char* s) { return NumericalPartition::parse(s); }

}  // namespace

TEST_CASE("the drawn twelve half-edge map", "[maps]") {
  const auto theta = Permutation::parse("(1,8,6)(2,3,9,5)(4,7,12,10)", 12);
  const auto iota = Permutation::parse("(1,9)(2,10)(3,11)(4,7)(5,6)(8,12)", 12);
  CHECK(iota.is_fixed_point_free_involution());
  CHECK(is_map(theta, iota));
  CHECK(theta.cycle_type() == part("4,4,3,1"));
  CHECK_FALSE(is_map(theta, Permutation::parse("(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)", 12)));
}

TEST_CASE("small map sets", "[maps]") {
  const auto two = enumerate_maps(Permutation::parse("(1 2)", 2));
  REQUIRE(two.size() == 1);
  CHECK(two[0] == Permutation::parse("(1 2)", 2));

  const auto theta = Permutation::parse("(1 2 3 4)", 4);
  const auto four = enumerate_maps(theta);
  CHECK(four.size() == 2);
  CHECK_FALSE(is_map(theta, Permutation::parse("(1 3)(2 4)", 4)));
  CHECK(count_maps(Permutation::parse("(1 2 3)", 3)) == 0);
}

TEST_CASE("fixed-point-free involutions", "[maps]") {
  long count = 0;
  for_each_fpf_involution(8, [&](const std::vector<int>& im) {
    ++count;
    for (int i = 0; i < 8; ++i) {
      CHECK(im[i] != i);
      CHECK(im[im[i]] == i);
    }
  });
  CHECK(count == 105);
}

TEST_CASE("Tutte's formulas against brute force", "[maps]") {
  for (int n = 2; n <= 8; n += 2)
    for (const auto& lambda : partitions_of(n)) {
      if (!lambda.is_eulerian()) {
        CHECK_THROWS(tutte(lambda));
        continue;
      }
      const auto t = tutte(lambda);
      CHECK(t.mstar == Rational(rooted_map_count_bruteforce(lambda)));
      CHECK(t.m == Rational(count_maps(class_representative(lambda))));
      CHECK(t.m == Rational(lambda.z()) * t.mstar / n);
    }
  const std::vector<long> catalan{1, 1, 2, 5, 14};
  for (int m = 1; m <= 4; ++m) {
    const auto lambda = NumericalPartition(std::vector<int>{2 * m});
    CHECK(rooted_map_count_bruteforce(lambda) == catalan[m]);
    CHECK(tutte(lambda).mstar == catalan[m]);
  }
  CHECK(tutte(part("2")).m == 1);
  CHECK(tutte(part("2,2")).m == 2);
}

TEST_CASE("maps have no automorphism with a fixed point", "[maps][property]") {
  for (const auto& lambda : partitions_of(6)) {
    const auto theta = class_representative(lambda);
    for (const auto& iota : enumerate_maps(theta))
      for (const auto& rho : map_automorphisms(theta, iota)) {
        bool fixes = false;
        for (int i = 0; i < 6; ++i) fixes = fixes || rho(i) == i;
        if (fixes) CHECK(rho.is_identity());
      }
  }
}

TEST_CASE("Riemann-Hurwitz on random transitive pairs", "[maps][property]") {
  gen::Engine rng(51);
  int planar = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = gen::uniform_int(rng, 1, 8);
    const auto [a, b] = gen::transitive_pair(rng, n);
    const int total = a.num_orbits() + b.num_orbits() + (a * b).num_orbits();
    CHECK(total <= n + 2);
    CHECK((n + 2 - total) % 2 == 0);
    if (total == n + 2) ++planar;
  }
  CHECK(planar > 0);
}

TEST_CASE("cumulant polynomials of small classes", "[maps]") {
  CHECK(cumulant_polynomial(part("2")).to_string() == "N^2");
  CHECK(cumulant_polynomial(part("4")).to_string() == "2N^3 + N");
  CHECK(cumulant_polynomial(part("2,2")).to_string() == "2N^2");
  CHECK(cumulant_polynomial(part("3")).degree() < 0);
  CHECK(cumulant_polynomial(part("4")).evaluate(30) == 54030);
  CHECK(thooft_leading(part("2")) == 1);
  CHECK(thooft_leading(part("4")) == 2);
  CHECK(thooft_leading(part("2,2")) == 2);
}

TEST_CASE("leading coefficient counts planar maps", "[maps]") {
  for (int n = 1; n <= 8; ++n)
    for (const auto& lambda : partitions_of(n)) {
      const auto poly = cumulant_polynomial(lambda);
      const int top = n / 2 + 2 - lambda.length();
      CHECK(thooft_leading(lambda) == count_maps(class_representative(lambda)));
      // No term sits above the planar exponent.
      CHECK(poly.degree() <= std::max(top, -1));
    }
}

TEST_CASE("cumulants through Moebius match direct pairing sums", "[maps][property]") {
  // For one trace the cumulant is the moment itself.
  for (int n = 2; n <= 8; n += 2) {
    const auto theta = class_representative(NumericalPartition(std::vector<int>{n}));
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    CHECK(cumulant_polynomial(NumericalPartition(std::vector<int>{n})).coeffs() == trace_moment(theta, all).coeffs());
  }
}
