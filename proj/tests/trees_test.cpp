#include "generators.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace tribkar;

namespace {

Permutation perm(const char* text, int n) { return Permutation::parse(text, n); }

template <typename Visit>
void for_each_triple(int max_n, bool even_only, Visit&& visit) {
  for (int n = 2; n <= max_n; n += 2)
    for (const auto& lambda : partitions_of(n)) {
      if (even_only && !lambda.is_eulerian()) continue;
      const auto theta = class_representative(lambda);
      for (const auto& sigma : enumerate_gj(theta))
        for (const auto& g : enumerate_dmotz(theta, sigma)) visit(theta, sigma, g);
    }
}

std::vector<std::vector<int>> balanced_subsets(const Permutation& theta) {
  std::vector<std::vector<int>> out{{}};
  for (const auto& orb : theta.orbits()) {
    const int k = static_cast<int>(orb.size());
    std::vector<std::vector<int>> next;
    for (int mask = 0; mask < (1 << k); ++mask) {
      if (2 * __builtin_popcount(mask) != k) continue;
      for (const auto& base : out) {
        auto x = base;
        for (int b = 0; b < k; ++b)
          if (mask & (1 << b)) x.push_back(orb[b]);
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  for (auto& x : out) std::sort(x.begin(), x.end());
  return out;
}

}  // namespace

TEST_CASE("SV tree of the drawn pair", "[trees]") {
  const auto theta = perm("(1,2,3,4)(5,7,8)(9,10)", 10);
  const auto sigma = perm("(4,8,10)(5,6)", 10);
  const auto t = sv_tree(theta, sigma);
  CHECK(t.num_edges() == 10);
  int white = 0, black = 0;
  for (const auto& v : t.vertices()) (v.color == Color::White ? white : black)++;
  CHECK(white == theta.num_orbits());
  CHECK(black == sigma.num_orbits());
  const auto [th, si] = read_off(t);
  CHECK(th.perm == theta);
  CHECK(si.perm == sigma);
  CHECK_THROWS(sv_tree(theta, Permutation::identity(10)));
}

TEST_CASE("read_off inverts sv_tree", "[trees][property]") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& lambda : partitions_of(n)) {
      const auto theta = class_representative(lambda);
      for (const auto& sigma : enumerate_gj(theta)) {
        const auto [th, si] = read_off(sv_tree(theta, sigma));
        CHECK(th.perm == theta);
        CHECK(si.perm == sigma);
      }
    }
}

TEST_CASE("coloring rules hold and decode back", "[trees][property]") {
  long count = 0;
  for_each_triple(8, false, [&](const Permutation& theta, const Permutation& sigma, const DMotz& g) {
    const auto t = color_tree(theta, sigma, g);
    CHECK_FALSE(coloring_violation(t).has_value());
    const auto back = decode_colored(t);
    CHECK(back.theta == theta);
    CHECK(back.sigma == sigma);
    CHECK(back.g == g);
    ++count;
  });
  CHECK(count > 100);

  ColoredTree bad = sv_tree(perm("(1 2)", 2), Permutation::identity(2));
  CHECK(coloring_violation(bad).has_value());
  CHECK_THROWS(decode_colored(bad));
}

TEST_CASE("even orbits leave no blue vertex", "[trees][property]") {
  for_each_triple(8, true, [&](const Permutation& theta, const Permutation& sigma, const DMotz& g) {
    for (int v : g) CHECK(v != 0);
    for (const auto& orb : theta.orbits()) {
      int minus = 0;
      for (int i : orb) minus += g[i] == -1;
      CHECK(2 * minus == static_cast<int>(orb.size()));
    }
    for (int i = 0; i < theta.size(); ++i)
      if (g[i] == -1) CHECK(sigma(i) == i);
  });
}

TEST_CASE("snipping the drawn tree", "[trees]") {
  const auto theta = perm("(1,2)(3,4,5,6,7,8)(9,10,11,12)", 12);
  const auto sigma = perm("(2,8,12)", 12);
  const auto x = parse_point_set("{1,3,4,6,9,10}", 12);
  const auto pairs = gjdm_with_green_set(theta, x);
  const auto it = std::find_if(pairs.begin(), pairs.end(), [&](const auto& p) { return p.first == sigma; });
  REQUIRE(it != pairs.end());
  const DMotz g{-1, 1, -1, -1, 1, -1, 1, 1, -1, -1, 1, 1};
  CHECK(it->second == g);

  const auto t = color_tree(theta, sigma, g);
  const auto s = snip(t);
  CHECK(s.removed == x);
  const auto [th, si] = read_off(s.tree);
  CHECK(th.perm.to_string() == "(5,7,8)(11,12)");
  CHECK(th == strike(theta, x));
  CHECK(si == strike(sigma, x));
  CHECK(is_gj_on(th, si));
  for (const auto& v : s.tree.vertices()) {
    CHECK(v.color != Color::Green);
    CHECK(v.color != Color::Red);
  }
  CHECK(unsnip(s) == t);
}

TEST_CASE("snip and unsnip are inverse", "[trees][property]") {
  for_each_triple(8, true, [&](const Permutation& theta, const Permutation& sigma, const DMotz& g) {
    const auto t = color_tree(theta, sigma, g);
    const auto s = snip(t);
    std::vector<int> minus;
    for (int i = 0; i < theta.size(); ++i)
      if (g[i] == -1) minus.push_back(i);
    CHECK(s.removed == minus);
    const auto [th, si] = read_off(s.tree);
    CHECK(is_gj_on(th, si));
    CHECK(unsnip(s) == t);
  });
}

TEST_CASE("green-set fibers have the closed-form size", "[trees][property]") {
  for (int n = 2; n <= 8; n += 2)
    for (const auto& lambda : partitions_of(n)) {
      if (!lambda.is_eulerian()) continue;
      const auto theta = class_representative(lambda);
      const auto expect = green_set_count_formula(lambda);
      Integer total = 0;
      for (const auto& x : balanced_subsets(theta)) {
        const auto fiber = gjdm_with_green_set(theta, x);
        CHECK(Integer(static_cast<long>(fiber.size())) == expect);
        total += static_cast<long>(fiber.size());
      }
      CHECK(total == Integer(gjdm_count(theta)));
    }
}

TEST_CASE("mobiles round-trip to colored trees", "[trees][property]") {
  for_each_triple(8, false, [&](const Permutation& theta, const Permutation& sigma, const DMotz& g) {
    const auto m = mobile(theta, sigma, g);
    for (const auto& v : m.vertices()) CHECK((v.color == Color::White || v.color == Color::Black));
    CHECK(colored_from_mobile(m) == color_tree(theta, sigma, g));
    const auto lo = mobile_min_label(m);
    REQUIRE(lo.has_value());
    CHECK(*lo == 0);
  });
}

TEST_CASE("JSON and DOT output", "[trees]") {
  std::set<std::vector<long>> codes;
  for_each_triple(6, false, [&](const Permutation& theta, const Permutation& sigma, const DMotz& g) {
    for (const auto& t : {color_tree(theta, sigma, g), mobile(theta, sigma, g)}) {
      const auto j = to_json(t);
      CHECK(tree_from_json(j) == t);
      CHECK(tree_from_json(nlohmann::json::parse(j.dump())) == t);
    }
    codes.insert(color_tree(theta, sigma, g).canonical_code());
  });
  CHECK(codes.size() > 1);

  const auto t = color_tree(perm("(1 2)", 2), Permutation::identity(2), DMotz{1, -1});
  const auto dot = tree_dot(mobile(perm("(1 2)", 2), Permutation::identity(2), DMotz{1, -1}));
  CHECK(dot.rfind("graph tree {", 0) == 0);
  CHECK(dot.find("--") != std::string::npos);
  CHECK(to_json(t)["vertices"].size() == 3);
  CHECK_THROWS(tree_from_json(nlohmann::json::parse(R"({"n":1,"vertices":[{"id":3,"color":"red"}]})")));
}
