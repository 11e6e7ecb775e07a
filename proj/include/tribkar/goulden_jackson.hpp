#pragma once

/**
 * @file goulden_jackson.hpp
 * @brief Goulden–Jackson pairs, dMotz and Motz functions, antiderivatives,
 *        and the count comparison between GJdM_n(θ) and Map_n(θ).
 */

#include "maps.hpp"
#include "perm.hpp"
#include "set_partition.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tribkar {

inline bool is_gj(const Permutation& theta, const Permutation& sigma) {
  if (theta.size() != sigma.size()) return false;
  return theta.num_orbits() + sigma.num_orbits() == theta.size() + 1 &&
         (theta * sigma).num_orbits() == 1;
}

/// GJ_n(θ), sorted by image list. Every σ has the form θ⁻¹c for an n-cycle c,
/// so the search runs over the (n−1)! cycles and keeps ℓ(σ) = n+1−ℓ(θ).
inline std::vector<Permutation> enumerate_gj(const Permutation& theta) {
  const int n = theta.size();
  std::vector<Permutation> out;
  if (n == 0) return out;
  const int want = n + 1 - theta.num_orbits();
  const Permutation inv = theta.inverse();
  std::vector<int> tail(n - 1);
  for (int i = 0; i < n - 1; ++i) tail[i] = i + 1;
  std::vector<int> c(n), sigma(n);
  do {
    int prev = 0;
    for (int v : tail) {
      c[prev] = v;
      prev = v;
    }
    c[prev] = 0;
    for (int i = 0; i < n; ++i) sigma[i] = inv(c[i]);
    Permutation s(sigma);
    if (s.num_orbits() == want) out.push_back(std::move(s));
  } while (std::next_permutation(tail.begin(), tail.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// (n−1)!/(n−ℓ+1)! · ∏λ_i.
inline Integer gj_count_formula(const NumericalPartition& lambda) {
  const long n = lambda.size();
  const long ell = lambda.length();
  return factorial(n - 1) * lambda.part_product() / factorial(n - ell + 1);
}

/// A dMotz function as a value list g[i] ∈ {−1,0,1}.
using DMotz = std::vector<int>;

/// Direct check of the defining conditions; `tilde` drops {g=0} ⊂ supp σ.
inline bool is_dmotz(const Permutation& theta, const Permutation& sigma, const DMotz& g,
                     bool tilde = false) {
  const int n = theta.size();
  if (static_cast<int>(g.size()) != n || sigma.size() != n) return false;
  for (int v : g)
    if (v < -1 || v > 1) return false;
  for (const auto& orb : theta.orbits()) {
    int sum = 0;
    for (int i : orb) sum += g[i];
    if (sum != 0) return false;
  }
  const Permutation sigma2 = sigma * sigma;
  for (int i = 0; i < n; ++i) {
    if (g[sigma(i)] != g[i]) return false;
    const bool moved = sigma(i) != i;
    if (g[i] == -1 && moved) return false;
    if (g[i] == 0 && sigma2(i) != i) return false;
    if (!tilde && g[i] == 0 && !moved) return false;
  }
  return true;
}

/// All of dMotz_n(θ,σ) (or the tilde superset), constant on σ-orbits: a
/// fixed point takes ±1 (also 0 for tilde), a 2-cycle 0 or +1, longer
/// cycles +1. A θ-orbit sum is checked once its last σ-orbit is assigned.
inline std::vector<DMotz> enumerate_dmotz(const Permutation& theta, const Permutation& sigma,
                                          bool tilde = false) {
  const int n = theta.size();
  const auto sorbs = sigma.orbits();
  const auto torb_of = theta.orbit_index();
  const int kt = theta.num_orbits();
  const int ks = static_cast<int>(sorbs.size());
  std::vector<std::vector<int>> choices(ks);
  std::vector<int> last_touch(kt, -1);
  for (int s = 0; s < ks; ++s) {
    const auto len = sorbs[s].size();
    if (len == 1)
      choices[s] = tilde ? std::vector<int>{-1, 0, 1} : std::vector<int>{-1, 1};
    else if (len == 2)
      choices[s] = {0, 1};
    else
      choices[s] = {1};
    for (int i : sorbs[s]) last_touch[torb_of[i]] = s;
  }
  std::vector<std::vector<int>> closes(ks);
  for (int t = 0; t < kt; ++t) closes[last_touch[t]].push_back(t);

  std::vector<DMotz> out;
  DMotz g(n, 0);
  std::vector<int> sums(kt, 0);
  auto rec = [&](auto&& self, int s) -> void {
    if (s == ks) {
      out.push_back(g);
      return;
    }
    for (int v : choices[s]) {
      for (int i : sorbs[s]) {
        g[i] = v;
        sums[torb_of[i]] += v;
      }
      bool ok = true;
      for (int t : closes[s])
        if (sums[t] != 0) ok = false;
      if (ok) self(self, s + 1);
      for (int i : sorbs[s]) {
        sums[torb_of[i]] -= v;
        g[i] = 0;
      }
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// |GJdM_n(θ)| = Σ_{σ∈GJ_n(θ)} |dMotz_n(θ,σ)|.
inline long gjdm_count(const Permutation& theta) {
  long total = 0;
  for (const auto& sigma : enumerate_gj(theta))
    total += static_cast<long>(enumerate_dmotz(theta, sigma).size());
  return total;
}

enum class HeightNormalization { FirstIsZero, MinIsZero };

/// Integrates g along the spanning tree made of θ-steps {i,θ(i)} for i in
/// supp θ minus a cutting and σ-steps {j,σ(j)} for j in supp σ minus a
/// cutting (first point of each cycle), then checks every constraint.
/// Throws when g does not average to zero on some θ-orbit.
inline std::vector<int> antiderivative(const Permutation& theta, const Permutation& sigma,
                                       const std::vector<int>& g,
                                       HeightNormalization norm = HeightNormalization::FirstIsZero) {
  if (!is_gj(theta, sigma)) throw std::invalid_argument("antiderivative needs a Goulden-Jackson pair");
  const int n = theta.size();
  if (static_cast<int>(g.size()) != n) throw std::invalid_argument("g has the wrong length");
  // adjacency with signed increments: h(v) = h(u) + w
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  int edges = 0;
  for (const auto& cyc : theta.cycles())
    for (std::size_t k = 1; k < cyc.size(); ++k) {
      const int i = cyc[k];
      adj[i].emplace_back(theta(i), g[i]);
      adj[theta(i)].emplace_back(i, -g[i]);
      ++edges;
    }
  for (const auto& cyc : sigma.cycles())
    for (std::size_t k = 1; k < cyc.size(); ++k) {
      const int j = cyc[k];
      adj[j].emplace_back(sigma(j), 0);
      adj[sigma(j)].emplace_back(j, 0);
      ++edges;
    }
  if (edges != n - 1) throw std::logic_error("integration graph does not have n-1 edges");
  std::vector<std::optional<int>> h(n);
  h[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (auto [v, w] : adj[queue[k]])
      if (!h[v]) {
        h[v] = *h[queue[k]] + w;
        queue.push_back(v);
      }
  if (static_cast<int>(queue.size()) != n) throw std::logic_error("integration graph is not connected");
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = *h[i];
  for (int i = 0; i < n; ++i)
    if (out[theta(i)] - out[i] != g[i] || out[sigma(i)] != out[i])
      throw std::invalid_argument("g has no antiderivative (orbit sums must vanish)");
  if (norm == HeightNormalization::MinIsZero) {
    const int lo = *std::min_element(out.begin(), out.end());
    for (int& v : out) v -= lo;
  }
  return out;
}

/// J_h(ε) = {i : h(θ(i)) = h(i) + ε}.
inline std::vector<int> level_set(const Permutation& theta, const std::vector<int>& h, int eps) {
  std::vector<int> out;
  for (int i = 0; i < theta.size(); ++i)
    if (h[theta(i)] - h[i] == eps) out.push_back(i);
  return out;
}

inline std::vector<int> derivative(const Permutation& theta, const std::vector<int>& h) {
  std::vector<int> g(theta.size());
  for (int i = 0; i < theta.size(); ++i) g[i] = h[theta(i)] - h[i];
  return g;
}

/// Motz^N_n(θ,σ) (or its tilde version): every height function with values
/// in 1..N, σ-invariant, whose θ-derivative lies in dMotz.
inline std::vector<std::vector<int>> motz_heights(const Permutation& theta, const Permutation& sigma,
                                                  int N, bool tilde = false) {
  std::vector<std::vector<int>> out;
  for (const auto& g : enumerate_dmotz(theta, sigma, tilde)) {
    auto h = antiderivative(theta, sigma, g, HeightNormalization::MinIsZero);
    const int top = *std::max_element(h.begin(), h.end());
    for (int c = 1; c + top <= N; ++c) {
      auto shifted = h;
      for (int& v : shifted) v += c;
      out.push_back(std::move(shifted));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// 𝐦(σ) = ∏ of orbit lengths.
inline Integer orbit_length_product(const Permutation& sigma) {
  Integer out = 1;
  for (const auto& o : sigma.orbits()) out *= static_cast<long>(o.size());
  return out;
}

struct BalanceBooks {
  Rational target;       ///< n/2 − ℓ(θ) + 1
  int s0 = 0;            ///< |J_h(0) ∖ supp σ|
  int s1 = 0;            ///< |J_h(1) ∖ supp σ|
  int a1 = 0;            ///< |J_h(1) ∩ A|
  Rational spin_lhs;     ///< 1/𝐦(σ)
  Rational spin_rhs;     ///< 2^{−|A|} ∏_{a∈J_h(1)∩A} 2/𝐦(σ,a)
  Rational sum() const { return Rational(s0) / 2 + s1 + a1; }
  bool holds() const { return target == sum() && target >= 0 && spin_lhs == spin_rhs; }
};

inline BalanceBooks balance_books(const Permutation& theta, const Permutation& sigma,
                                  const std::vector<int>& cut, const std::vector<int>& h) {
  const int n = theta.size();
  BalanceBooks b;
  b.target = make_rational(n, 2) - theta.num_orbits() + 1;
  std::vector<char> in_cut(n, 0);
  for (int a : cut) in_cut[a] = 1;
  b.spin_lhs = Rational(1) / Rational(orbit_length_product(sigma));
  b.spin_rhs = Rational(1);
  for (std::size_t k = 0; k < cut.size(); ++k) b.spin_rhs /= 2;
  for (int i = 0; i < n; ++i) {
    const int d = h[theta(i)] - h[i];
    const bool moved = sigma(i) != i;
    if (d == 0 && !moved) ++b.s0;
    if (d == 1 && !moved) ++b.s1;
    if (d == 1 && in_cut[i]) {
      ++b.a1;
      b.spin_rhs *= make_rational(2, sigma.orbit_length(i));
    }
  }
  return b;
}

/// Σ over h ∈ Motz^N_n(θ,σ) with h∘θ − h = g of ∏_{i∈J_h(1)∖(supp σ∖A)} h(i).
inline Integer motz_product_sum(const Permutation& theta, const Permutation& sigma,
                                const std::vector<int>& cut, const DMotz& g, int N) {
  const int n = theta.size();
  std::vector<char> keep(n, 0);
  for (int i = 0; i < n; ++i) keep[i] = sigma(i) == i;
  for (int a : cut) keep[a] = 1;
  auto h = antiderivative(theta, sigma, g, HeightNormalization::MinIsZero);
  const int top = *std::max_element(h.begin(), h.end());
  Integer total = 0;
  for (int c = 1; c + top <= N; ++c) {
    Integer prod = 1;
    for (int i = 0; i < n; ++i)
      if (g[i] == 1 && keep[i]) prod *= h[i] + c;
    total += prod;
  }
  return total;
}

struct MainTheoremCheck {
  NumericalPartition lambda;
  long maps = 0;   ///< |Map_n(θ)|
  long gjdm = 0;   ///< |GJdM_n(θ)|
  long denominator = 0;  ///< n/2 − ℓ(θ) + 2, forced to 0 for odd n
  Rational rhs() const { return denominator > 0 ? make_rational(gjdm, denominator) : Rational(0); }
  /// Equality when the denominator is positive, both sets empty otherwise.
  bool holds() const {
    if (denominator > 0) return Rational(maps) == rhs();
    return maps == 0 && gjdm == 0;
  }
};

inline MainTheoremCheck main_theorem_check(const Permutation& theta) {
  MainTheoremCheck r;
  r.lambda = theta.cycle_type();
  const int n = theta.size();
  r.denominator = n % 2 ? 0 : n / 2 - theta.num_orbits() + 2;
  r.maps = count_maps(theta);
  r.gjdm = gjdm_count(theta);
  return r;
}

}  // namespace tribkar
