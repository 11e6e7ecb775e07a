#include "generators.hpp"

#include <catch_amalgamated.hpp>

#include <map>

using namespace tribkar;

TEST_CASE("set partitions are stored canonically", "[lattice]") {
  const auto p = SetPartition(std::vector<int>{7, 7, 3, 7, 3});
  CHECK(p.labels() == std::vector<int>{0, 0, 1, 0, 1});
  CHECK(p.to_string() == "{1,2,4|3,5}");
  CHECK(SetPartition::parse(p.to_string(), 5) == p);
  CHECK(p.num_blocks() == 2);
}

TEST_CASE("join of a bond set with a partition", "[lattice]") {
  const auto theta = SetPartition::parse("{1|2,3,4,5|6,7|8,9,10}", 10);
  const auto gamma = BondSet::parse("{1-5,4-6,5-7,9-10}", 10);
  CHECK(join_bonds(theta, gamma) == SetPartition::parse("{1,2,3,4,5,6,7|8,9,10}", 10));
  CHECK(join_bonds(theta, BondSet(10, {})) == theta);
  CHECK(join_bonds(SetPartition::finest(2), BondSet::parse("{1-2}", 2)) == SetPartition::coarsest(2));
}

TEST_CASE("Moebius function values", "[lattice]") {
  for (int n = 1; n <= 5; ++n) {
    gen::Engine rng(n);
    const auto p = gen::set_partition(rng, n);
    CHECK(moebius(p, p) == 1);
  }
  CHECK(moebius(SetPartition::finest(3), SetPartition::coarsest(3)) == 2);
  CHECK(moebius(SetPartition::finest(4), SetPartition::coarsest(4)) == -6);
  CHECK_THROWS(moebius(SetPartition::coarsest(3), SetPartition::finest(3)));
}

TEST_CASE("intervals above the finest partition have Bell size", "[lattice]") {
  const std::vector<long> bell{1, 1, 2, 5, 15, 52, 203, 877};
  for (int n = 1; n <= 7; ++n) {
    CHECK(interval(SetPartition::finest(n), SetPartition::coarsest(n)).size() ==
          static_cast<std::size_t>(bell[n]));
    CHECK(bell_number(n) == bell[n]);
  }
}

TEST_CASE("Moebius inversion on random intervals", "[lattice][property]") {
  gen::Engine rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen::uniform_int(rng, 1, 6);
    const auto lower = gen::set_partition(rng, n);
    const auto top = SetPartition::coarsest(n);
    const auto members = interval(lower, top);
    std::map<SetPartition, Rational> f;
    for (const auto& p : members) f[p] = gen::rational(rng, -9, 9, 4);
    // g(π) = Σ_{ρ ≥ π} f(ρ); inversion recovers f.
    std::map<SetPartition, Rational> g;
    for (const auto& p : members)
      for (const auto& q : members)
        if (p.refines(q)) g[p] += f[q];
    for (const auto& p : members) {
      Rational back = 0;
      for (const auto& q : members)
        if (p.refines(q)) back += Rational(moebius(p, q)) * g[q];
      CHECK(back == f[p]);
    }
    // Σ_{π ≤ ρ ≤ top} μ(ρ, top) = δ_{π,top}
    Rational s = 0;
    for (const auto& q : members) s += Rational(moebius(q, top));
    CHECK(s == (lower == top ? 1 : 0));
  }
}

TEST_CASE("joint cumulant from moments", "[lattice]") {
  // Symbolic moments encoded by block masks.
  auto as_mask = [](const std::vector<int>& block) {
    unsigned m = 0;
    for (int i : block) m |= 1u << i;
    return m;
  };
  std::map<unsigned, Rational> mom{{1, 2}, {2, 3}, {4, 5}, {3, 11}, {5, 17}, {6, 19}, {7, 101}};
  auto moment = [&](const SetPartition& p) {
    Rational out = 1;
    for (const auto& b : p.blocks()) out *= mom[as_mask(b)];
    return out;
  };
  CHECK(joint_cumulant<Rational>(SetPartition::coarsest(3), moment) == 101);
  CHECK(joint_cumulant<Rational>(SetPartition::finest(1), moment) == 2);
  const auto two = SetPartition::finest(2);
  CHECK(joint_cumulant<Rational>(two, moment) == Rational(11 - 2 * 3));
  // E XYZ − E XY·E Z − E XZ·E Y − E YZ·E X + 2 E X·E Y·E Z
  const Rational k3 = 101 - 11 * 5 - 17 * 3 - 19 * 2 + 2 * 2 * 3 * 5;
  CHECK(joint_cumulant<Rational>(SetPartition::finest(3), moment) == k3);
}

TEST_CASE("cumulants of independent blocks vanish", "[lattice][property]") {
  // Moments factor over a hidden partition with two or more blocks.
  gen::Engine rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen::uniform_int(rng, 2, 6);
    const auto hidden = gen::set_partition(rng, n);
    if (hidden.num_blocks() < 2) continue;
    std::map<std::vector<int>, Rational> cache;
    auto block_moment = [&](const std::vector<int>& b) {
      auto it = cache.find(b);
      if (it == cache.end()) it = cache.emplace(b, gen::rational(rng, 1, 9, 3)).first;
      return it->second;
    };
    auto moment = [&](const SetPartition& p) {
      Rational out = 1;
      for (const auto& b : p.blocks()) {
        std::map<int, std::vector<int>> split;
        for (int i : b) split[hidden.block_of(i)].push_back(i);
        for (const auto& [k, part] : split) out *= block_moment(part);
      }
      return out;
    };
    CHECK(joint_cumulant<Rational>(SetPartition::finest(n), moment) == 0);
  }
}

TEST_CASE("perfect matchings", "[lattice]") {
  CHECK(pair_partitions({0, 1}).size() == 1);
  CHECK(pair_partitions({0, 1, 2, 3}).size() == 3);
  CHECK(pair_partitions({0, 1, 2}).empty());
  CHECK(pair_partitions({}).size() == 1);
  CHECK(pair_partitions({0, 1, 2, 3, 4, 5, 6, 7}).size() == 105);
}
