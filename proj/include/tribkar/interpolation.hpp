#pragma once

/**
 * @file interpolation.hpp
 * @brief The forest-interpolation measure P^Θ_Γ on matrices with unit
 *        diagonal, its exact polynomial integrals, sampling, and the
 *        tree-expansion identity for alternating Möbius sums.
 */

#include "bonds.hpp"
#include "polynomial.hpp"
#include "set_partition.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace tribkar {

template <typename Scalar>
using Matrix = std::vector<std::vector<Scalar>>;

template <typename Scalar>
Matrix<Scalar> partition_matrix(const SetPartition& p) {
  Matrix<Scalar> m(p.n(), std::vector<Scalar>(p.n(), Scalar(0)));
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j)
      if (p.same_block(i, j)) m[i][j] = Scalar(1);
  return m;
}

/// For bonds added in the order e_1..e_{k−1}: stage(i,j) is the least α at
/// which {e_1..e_α}∨Θ joins i and j (0 when they already share a Θ-block).
inline std::vector<std::vector<int>> connection_stages(const SetPartition& theta,
                                                       const std::vector<Bond>& order) {
  const int n = theta.n();
  std::vector<std::vector<int>> stage(n, std::vector<int>(n, -1));
  SetPartition cur = theta;
  auto record = [&](int alpha) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (stage[i][j] < 0 && cur.same_block(i, j)) stage[i][j] = alpha;
  };
  record(0);
  for (std::size_t a = 0; a < order.size(); ++a) {
    cur = join_bonds(cur, BondSet(n, {order[a]}));
    record(static_cast<int>(a) + 1);
  }
  return stage;
}

/// X = [Θ] + Σ_α t_α([{e_1..e_α}∨Θ] − [{e_1..e_{α−1}}∨Θ]), i.e. X(i,j) = t at
/// the stage where i and j first connect, and 1 inside a Θ-block.
template <typename Scalar>
Matrix<Scalar> interpolation_matrix(const SetPartition& theta, const std::vector<Bond>& order,
                                    const std::vector<Scalar>& t) {
  if (t.size() != order.size()) throw std::invalid_argument("one time per bond is required");
  const auto stage = connection_stages(theta, order);
  const int n = theta.n();
  Matrix<Scalar> x(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int s = stage[i][j];
      x[i][j] = s == 0 ? Scalar(1) : (s < 0 ? Scalar(0) : t[s - 1]);
    }
  return x;
}

inline void require_tree(const SetPartition& theta, const BondSet& gamma) {
  if (!is_tree(theta, gamma)) throw std::invalid_argument("bond set is not a tree over the partition");
}

/// One draw from P^Θ_Γ: a uniform ordering of Γ together with sorted
/// uniform times 1 > T_1 > ... > T_{k−1} > 0.
template <typename Rng>
Matrix<double> sample_interpolation(const SetPartition& theta, const BondSet& gamma, Rng& rng) {
  require_tree(theta, gamma);
  std::vector<Bond> order = gamma.bonds();
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> t(order.size());
  for (auto& v : t) v = unif(rng);
  std::sort(t.begin(), t.end(), std::greater<>());
  return interpolation_matrix<double>(theta, order, t);
}

/// Same law, built the other way: i.i.d. uniforms on the bonds of Γ and
/// X(i,j) = min over the geodesic between the blocks of i and j.
template <typename Rng>
Matrix<double> sample_interpolation_geodesic(const SetPartition& theta, const BondSet& gamma,
                                             Rng& rng) {
  require_tree(theta, gamma);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u(gamma.size());
  for (auto& v : u) v = unif(rng);
  const int n = theta.n();
  const auto& bonds = gamma.bonds();
  Matrix<double> x(n, std::vector<double>(n, 1.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (theta.same_block(i, j)) continue;
      double m = 1.0;
      const BondSet path = geodesic(theta, gamma, i, j);
      for (const auto& e : path.bonds()) {
        const auto it = std::lower_bound(bonds.begin(), bonds.end(), e);
        m = std::min(m, u[static_cast<std::size_t>(it - bonds.begin())]);
      }
      x[i][j] = x[j][i] = m;
    }
  return x;
}

namespace detail {

/// ∫_{1>t_1>...>t_{k−1}>0} ∏ t_α^{a_α} dt = ∏_α 1/s_α with
/// s_α = Σ_{β≥α} a_β + (k − α).
inline Rational simplex_monomial_integral(const std::vector<int>& a) {
  const int km1 = static_cast<int>(a.size());
  Rational out = 1;
  long tail = 0;
  for (int alpha = km1; alpha >= 1; --alpha) {
    tail += a[alpha - 1];
    out /= Rational(tail + (km1 + 1 - alpha));
  }
  return out;
}

}  // namespace detail

/// ∫ f dP^Θ_Γ for f polynomial in the q-variables, summed exactly over the
/// (k−1)! orderings of Γ.
inline Rational integrate_interpolation(const SetPartition& theta, const BondSet& gamma,
                                        const Polynomial& f) {
  require_tree(theta, gamma);
  if (!f.uses_only(Family::Q)) throw std::invalid_argument("integrand must be a polynomial in q");
  std::vector<Bond> order = gamma.bonds();
  Rational total = 0;
  do {
    const auto stage = connection_stages(theta, order);
    for (const auto& [mono, coeff] : f.terms()) {
      std::vector<int> a(order.size(), 0);
      for (const auto& [v, e] : mono.factors()) {
        const int s = stage[v.i][v.j];
        if (s > 0) a[s - 1] += e;
      }
      total += coeff * detail::simplex_monomial_integral(a);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return total;
}

/// ∂^Γ f = ∏_{e∈Γ} ∂_e f.
inline Polynomial partial_gamma(const Polynomial& f, const BondSet& gamma) {
  Polynomial out = f;
  for (const auto& e : gamma.bonds()) out = partial_sym(out, e.a, e.b);
  return out;
}

/// f([Π]) for f polynomial in q.
inline Rational evaluate_at_partition(const Polynomial& f, const SetPartition& p) {
  return f.evaluate_q(partition_matrix<Rational>(p)).value();
}

/// Σ_{Π∈[Θ:𝟏]} μ(Π:𝟏) f([Π]).
inline Rational moebius_side(const SetPartition& theta, const Polynomial& f) {
  return joint_cumulant<Rational>(theta, [&](const SetPartition& p) { return evaluate_at_partition(f, p); });
}

/// Σ_{Γ∈Tree_n(Θ)} ∫ ∂^Γ f dP^Θ_Γ.
inline Rational tree_side(const SetPartition& theta, const Polynomial& f) {
  Rational total = 0;
  for (const auto& gamma : enumerate_trees(theta)) {
    Polynomial d = partial_gamma(f, gamma);
    if (!d.is_zero()) total += integrate_interpolation(theta, gamma, d);
  }
  return total;
}

/// Closed product form for one monomial with exponents ν: sum over bond
/// sequences in supp ν, each joining two current blocks, of ∏ ν(e_α)/N(Π_{α−1}),
/// where N(Π) adds ν over pairs split by Π.
inline Rational product_form_monomial(const SetPartition& theta, const Monomial& nu) {
  const int k = theta.num_blocks();
  if (k == 1) return 1;
  std::vector<std::pair<Bond, int>> support;
  for (const auto& [v, e] : nu.factors()) {
    if (v.family != Family::Q) throw std::invalid_argument("product form needs a q-monomial");
    support.emplace_back(Bond{v.i, v.j}, e);
  }
  Rational total = 0;
  auto rec = [&](auto&& self, const SetPartition& cur, int depth, const Rational& acc) -> void {
    if (depth == k - 1) {
      total += acc;
      return;
    }
    long split = 0;
    for (const auto& [e, w] : support)
      if (!cur.same_block(e.a, e.b)) split += w;
    for (const auto& [e, w] : support) {
      if (cur.same_block(e.a, e.b)) continue;
      self(self, join_bonds(cur, BondSet(cur.n(), {e})), depth + 1, acc * make_rational(w, split));
    }
  };
  rec(rec, theta, 0, Rational(1));
  return total;
}

inline Rational product_form(const SetPartition& theta, const Polynomial& f) {
  Rational total = 0;
  for (const auto& [m, c] : f.terms()) total += c * product_form_monomial(theta, m);
  return total;
}

struct BkarResult {
  Rational lhs;     ///< Möbius sum
  Rational rhs;     ///< tree-measure integral
  Rational clinch;  ///< closed product form
  bool holds() const { return lhs == rhs && rhs == clinch; }
};

inline BkarResult bkar_check(const SetPartition& theta, const Polynomial& f) {
  return {moebius_side(theta, f), tree_side(theta, f), product_form(theta, f)};
}

}  // namespace tribkar
