#pragma once

/**
 * @file expansion.hpp
 * @brief Motzkin index sets, the polynomials f^h, the tree expansion of
 *        joint cumulants of Gaussian polynomials, and its refinements for
 *        tridiagonal traces, all evaluated exactly at small sizes.
 */

#include "bonds.hpp"
#include "gaussian.hpp"
#include "goulden_jackson.hpp"
#include "interpolation.hpp"
#include "maps.hpp"
#include "perm.hpp"
#include "polynomial.hpp"
#include "set_partition.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace tribkar {

/// Orb(θ) as a set partition.
inline SetPartition orbit_partition(const Permutation& theta) {
  std::vector<int> label(theta.size());
  const auto orbits = theta.orbits();
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (int p : orbits[o]) label[p] = static_cast<int>(o);
  return SetPartition(label);
}

/// Motz^N_n(θ): all h with values in 1..N and |h(θ(i)) − h(i)| ≤ 1, sorted.
/// Each θ-orbit is walked as a closed Motzkin loop.
inline std::vector<std::vector<int>> motzkin_assignments(const Permutation& theta, int N) {
  const int n = theta.size();
  std::vector<std::vector<int>> out;
  if (N < 1) return out;
  const auto cycles = theta.orbits();
  std::vector<int> h(n, 0);
  auto walk = [&](auto&& self, std::size_t c, std::size_t k) -> void {
    if (c == cycles.size()) {
      out.push_back(h);
      return;
    }
    const auto& cyc = cycles[c];
    if (k == cyc.size()) {
      if (std::abs(h[cyc.front()] - h[cyc.back()]) <= 1) self(self, c + 1, 0);
      return;
    }
    int lo = 1, hi = N;
    if (k > 0) {
      lo = std::max(1, h[cyc[k - 1]] - 1);
      hi = std::min(N, h[cyc[k - 1]] + 1);
    }
    for (int v = lo; v <= hi; ++v) {
      h[cyc[k]] = v;
      self(self, c, k + 1);
    }
  };
  walk(walk, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_motzkin(const Permutation& theta, const std::vector<int>& h, int N) {
  if (static_cast<int>(h.size()) != theta.size()) return false;
  for (int i = 0; i < theta.size(); ++i) {
    if (h[i] < 1 || h[i] > N) return false;
    if (std::abs(h[theta(i)] - h[i]) > 1) return false;
  }
  return true;
}

/// Σ_{j=1}^{m} z_{ij}²/2.
inline Polynomial half_square_sum(int i, int m) {
  Polynomial s;
  for (int j = 1; j <= m; ++j) s += Polynomial::z(i, j) * Polynomial::z(i, j) * make_rational(1, 2);
  return s;
}

/// f^h_A for the points `block`: z_{i0} on J_h(0), Σ_{j≤2h(i)} z_{ij}²/2 on J_h(1).
inline Polynomial build_fh_block(const Permutation& theta, const std::vector<int>& h,
                                 const std::vector<int>& block) {
  Polynomial f(1);
  for (int i : block) {
    const int d = h[theta(i)] - h[i];
    if (d == 0) f *= Polynomial::z(i, 0);
    else if (d == 1) f *= half_square_sum(i, 2 * h[i]);
  }
  return f;
}

inline Polynomial build_fh(const Permutation& theta, const std::vector<int>& h, int N) {
  if (!is_motzkin(theta, h, N)) throw std::invalid_argument("h is not a Motzkin assignment");
  std::vector<int> all(theta.size());
  for (int i = 0; i < theta.size(); ++i) all[i] = i;
  return build_fh_block(theta, h, all);
}

/// C(i,i') = δ_{h(i),h(i')} with 2N+1 copies.
inline CovarianceSpec fh_covariance(const std::vector<int>& h, int N) {
  const int n = static_cast<int>(h.size());
  Matrix<Rational> c(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (h[i] == h[k]) c[i][k] = 1;
  return CovarianceSpec(std::move(c), 2 * N + 1);
}

struct MainToolResult {
  Rational lhs;  ///< Möbius sum of Wick moments
  Rational rhs;  ///< tree sum of interpolated natural transforms
  bool holds() const { return lhs == rhs; }
};

/// κ({f_A(ζ)}_{A∈Θ}) two ways. polys[b] belongs to the b-th block of Θ
/// (blocks ordered by least point) and may only use z-variables of that block.
inline MainToolResult maintool_check(const SetPartition& theta, const std::vector<Polynomial>& polys,
                                     const CovarianceSpec& c) {
  const int n = theta.n();
  const int k = theta.num_blocks();
  if (static_cast<int>(polys.size()) != k) throw std::invalid_argument("one polynomial per block is required");
  if (c.n() != n) throw std::invalid_argument("covariance size differs from the ground set");
  for (int b = 0; b < k; ++b)
    for (const auto& [mono, coeff] : polys[b].terms())
      for (const auto& [v, e] : mono.factors())
        if (v.family != Family::Z || theta.block_of(v.i) != b)
          throw std::invalid_argument("f_A may only use z-variables of its own block");

  const Matrix<Rational> ones(n, std::vector<Rational>(n, Rational(1)));
  std::map<unsigned, Rational> cache;
  auto moment = [&](unsigned mask) -> const Rational& {
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    Polynomial prod(1);
    for (int b = 0; b < k; ++b)
      if (mask & (1u << b)) prod *= polys[b];
    return cache.emplace(mask, gaussian_expectation_pairing(prod, c, ones)).first->second;
  };
  MainToolResult r;
  r.lhs = joint_cumulant<Rational>(theta, [&](const SetPartition& p) {
    Rational prod = 1;
    for (const auto& block : p.blocks()) {
      unsigned mask = 0;
      for (int i : block) mask |= 1u << theta.block_of(i);
      prod *= moment(mask);
      if (prod == 0) break;
    }
    return prod;
  });

  Polynomial f(1);
  for (const auto& p : polys) f *= p;
  NaturalTransform nat(c);
  for (const auto& gamma : enumerate_trees(theta)) {
    Rational w = 1;
    for (const auto& e : gamma.bonds()) w *= c(e.a, e.b);
    if (w == 0) continue;
    const Polynomial d = d_gamma(f, gamma);
    if (d.is_zero()) continue;
    r.rhs += w * integrate_interpolation(theta, gamma, nat(d));
  }
  return r;
}

/// Which of the four culling conditions a pair (Γ,h) satisfies.
struct CullFlags {
  bool constant_on_edges = true;   ///< h is constant on each bond
  bool level_edges = true;         ///< each bond lies in J_h(0) or in J_h(1)
  bool flat_degree_one = true;     ///< points of J_h(0) meet at most one bond
  bool degree_two = true;          ///< every point meets at most two bonds
  bool all() const { return constant_on_edges && level_edges && flat_degree_one && degree_two; }
};

inline CullFlags cull_flags(const Permutation& theta, const std::vector<int>& h, const BondSet& gamma) {
  CullFlags f;
  const auto deg = gamma.degrees();
  auto slope = [&](int i) { return h[theta(i)] - h[i]; };
  for (const auto& e : gamma.bonds()) {
    if (h[e.a] != h[e.b]) f.constant_on_edges = false;
    const int sa = slope(e.a), sb = slope(e.b);
    if (!(sa == sb && (sa == 0 || sa == 1))) f.level_edges = false;
  }
  for (int i = 0; i < theta.size(); ++i) {
    if (slope(i) == 0 && deg[i] > 1) f.flat_degree_one = false;
    if (deg[i] > 2) f.degree_two = false;
  }
  return f;
}

/// Closed form of D^Γ f^h for Γ = LF(σ,A):
/// ∏_{S₀} z_{i0} · ∏_{S₁} Σ_{j≤2h(i)} z_{ij}²/2 · ∏_{A₁} Σ_{j≤2h(i)} z_{ij} z_{σ(i)j}.
inline Polynomial cull_closed_form(const Permutation& theta, const Permutation& sigma,
                                   const std::vector<int>& cut, const std::vector<int>& h) {
  const int n = theta.size();
  std::vector<char> in_cut(n, 0);
  for (int a : cut) in_cut[a] = 1;
  Polynomial out(1);
  for (int i = 0; i < n; ++i) {
    const int d = h[theta(i)] - h[i];
    const bool moved = sigma(i) != i;
    if (!moved && d == 0) {
      out *= Polynomial::z(i, 0);
    } else if (!moved && d == 1) {
      out *= half_square_sum(i, 2 * h[i]);
    } else if (in_cut[i] && d == 1) {
      Polynomial s;
      for (int j = 1; j <= 2 * h[i]; ++j) s += Polynomial::z(i, j) * Polynomial::z(sigma(i), j);
      out *= s;
    }
  }
  return out;
}

/// Leading behaviour of E[(D^Γ f^{h+c})(ζ^{h+c}⋆Q)] in the shift c when S₀ = ∅.
/// The expectation is a polynomial in c of degree |S₁|+|A₁| and its top
/// coefficient should be ∏_{A₁} 2q(i,σ(i)). Returns that coefficient,
/// computed as a finite difference, next to the prediction.
struct KillZeroCheck {
  bool applicable = false;  ///< S₀ = ∅
  Polynomial leading;
  Polynomial predicted;
  bool holds() const { return !applicable || leading == predicted; }
};

inline KillZeroCheck killzero_check(const Permutation& theta, const Permutation& sigma,
                                    const std::vector<int>& cut, const std::vector<int>& h) {
  const int n = theta.size();
  KillZeroCheck r;
  std::vector<char> in_cut(n, 0);
  for (int a : cut) in_cut[a] = 1;
  int degree = 0;
  r.applicable = true;
  r.predicted = Polynomial(1);
  for (int i = 0; i < n; ++i) {
    const int d = h[theta(i)] - h[i];
    const bool moved = sigma(i) != i;
    if (!moved && d == 0) r.applicable = false;
    if (!moved && d == 1) ++degree;
    if (in_cut[i] && d == 1) {
      ++degree;
      r.predicted *= Polynomial::q(i, sigma(i)) * Rational(2);
    }
  }
  if (!r.applicable) return r;
  const BondSet gamma = linear_forest_bonds(sigma, cut);
  // Start far enough up that every copy range exceeds the number of factors.
  const int base = degree + 1;
  const int top = *std::max_element(h.begin(), h.end()) + base + degree;
  Polynomial diff;
  Integer binom = 1;  // C(degree, t)
  for (int t = 0; t <= degree; ++t) {
    if (t > 0) binom = binom * (degree - t + 1) / t;
    auto shifted = h;
    for (int& v : shifted) v += base + t;
    const Polynomial fh = build_fh(theta, shifted, top);
    const Polynomial e = natural(d_gamma(fh, gamma), fh_covariance(shifted, top));
    const Rational sign = ((degree - t) % 2) ? Rational(-1) : Rational(1);
    diff += e * (sign * Rational(binom));
  }
  r.leading = diff * (Rational(1) / Rational(factorial(degree)));
  return r;
}

struct RefinedExpansion {
  NumericalPartition lambda;
  int N = 0;
  Rational exact;     ///< cumulant polynomial at N
  Rational motzkin;   ///< Σ_h κ({f^h_A}) computed by Möbius/Wick
  Rational steroid;   ///< Σ over (Γ,h) ∈ Tree × Motz
  Rational progress;  ///< Σ over quadruples (σ,A,h,LF(σ,A)) with weight 2^{−|A|}
  long assignments = 0;
  long tree_terms = 0;
  long culled_terms = 0;
  long culled_nonzero = 0;     ///< culled terms that failed to vanish
  long quadruples = 0;
  long closed_form_mismatches = 0;
  long killzero_mismatches = 0;
  bool holds() const {
    return exact == motzkin && exact == steroid && exact == progress && culled_nonzero == 0 &&
           closed_form_mismatches == 0 && killzero_mismatches == 0;
  }
};

inline constexpr int kRefinedMaxN = 3;
inline constexpr int kRefinedMaxSize = 4;

inline RefinedExpansion refined_expansion_check(const NumericalPartition& lambda, int N,
                                                bool unsafe_sizes = false) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (!unsafe_sizes && (N > kRefinedMaxN || lambda.size() > kRefinedMaxSize))
    throw std::length_error("refined expansion is capped at n <= 4 and N <= 3");
  const Permutation theta = class_representative(lambda);
  const SetPartition orb = orbit_partition(theta);
  const auto blocks = orb.blocks();
  const auto trees = enumerate_trees(orb);

  RefinedExpansion r;
  r.lambda = lambda;
  r.N = N;
  r.exact = Rational(cumulant_polynomial(lambda).evaluate(N));

  for (const auto& h : motzkin_assignments(theta, N)) {
    ++r.assignments;
    const CovarianceSpec cov = fh_covariance(h, N);
    std::vector<Polynomial> polys;
    for (const auto& b : blocks) polys.push_back(build_fh_block(theta, h, b));
    r.motzkin += maintool_check(orb, polys, cov).lhs;

    const Polynomial fh = build_fh(theta, h, N);
    NaturalTransform nat(cov);
    for (const auto& gamma : trees) {
      ++r.tree_terms;
      const CullFlags flags = cull_flags(theta, h, gamma);
      Rational term = 0;
      Polynomial d;
      if (flags.constant_on_edges) {
        d = d_gamma(fh, gamma);
        if (!d.is_zero()) term = integrate_interpolation(orb, gamma, nat(d));
      }
      r.steroid += term;
      if (!flags.all()) {
        ++r.culled_terms;
        if (term != 0 || !d.is_zero()) ++r.culled_nonzero;
      }
    }
  }

  for (const auto& sigma : enumerate_gj(theta)) {
    const auto cuts = cycle_cuttings(sigma);
    const auto heights = motz_heights(theta, sigma, N, true);
    for (const auto& cut : cuts) {
      const BondSet gamma = linear_forest_bonds(sigma, cut.points);
      Rational weight = 1;
      for (std::size_t k = 0; k < cut.points.size(); ++k) weight /= 2;
      for (const auto& h : heights) {
        ++r.quadruples;
        const Polynomial d = d_gamma(build_fh(theta, h, N), gamma);
        if (d != cull_closed_form(theta, sigma, cut.points, h)) ++r.closed_form_mismatches;
        if (!killzero_check(theta, sigma, cut.points, h).holds()) ++r.killzero_mismatches;
        if (d.is_zero()) continue;
        r.progress += weight * integrate_interpolation(orb, gamma, natural(d, fh_covariance(h, N)));
      }
    }
  }
  return r;
}

}  // namespace tribkar
