#pragma once

/**
 * @file random_instances.hpp
 * @brief Random permutations, partitions, polynomials and covariances for
 *        property tests and the command-line checks. Every generator takes
 *        the engine by reference so a failing seed can be replayed.
 */

#include "gaussian.hpp"
#include "interpolation.hpp"
#include "maps.hpp"
#include "perm.hpp"
#include "polynomial.hpp"
#include "set_partition.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace tribkar::gen {

using Engine = std::mt19937_64;

inline int uniform_int(Engine& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline tribkar::Permutation permutation(Engine& rng, int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::shuffle(im.begin(), im.end(), rng);
  return tribkar::Permutation(std::move(im));
}

/// Uniform over restricted growth strings is awkward; this picks a random
/// labelling with a random number of labels, which reaches every partition.
inline tribkar::SetPartition set_partition(Engine& rng, int n) {
  const int k = uniform_int(rng, 1, std::max(1, n));
  std::vector<int> label(n);
  for (auto& l : label) l = uniform_int(rng, 0, k - 1);
  return tribkar::SetPartition(label);
}

inline tribkar::Rational rational(Engine& rng, int lo, int hi, int max_den) {
  return tribkar::make_rational(uniform_int(rng, lo, hi), uniform_int(rng, 1, max_den));
}

/// A monomial in the q-variables of ⟨n⟩ with total degree at most `max_degree`
/// and a small rational coefficient.
inline tribkar::Polynomial q_monomial(Engine& rng, int n, int max_degree) {
  tribkar::Polynomial m(rational(rng, 1, 5, 3));
  const int d = uniform_int(rng, 0, max_degree);
  for (int t = 0; t < d; ++t) {
    const int i = uniform_int(rng, 0, n - 1);
    int j = uniform_int(rng, 0, n - 2);
    if (j >= i) ++j;
    m *= tribkar::Polynomial::q(i, j);
  }
  return m;
}

/// A pair of permutations generating a transitive group, by rejection.
inline std::pair<tribkar::Permutation, tribkar::Permutation> transitive_pair(Engine& rng, int n) {
  while (true) {
    auto a = permutation(rng, n);
    auto b = permutation(rng, n);
    if (tribkar::generates_transitive(a, b)) return {a, b};
  }
}

/// B·Bᵀ for a random integer-by-small-denominator B, which is positive
/// semidefinite by construction.
inline tribkar::Matrix<tribkar::Rational> psd_matrix(Engine& rng, int n) {
  const int r = uniform_int(rng, 1, n);
  tribkar::Matrix<tribkar::Rational> b(n, std::vector<tribkar::Rational>(r));
  for (auto& row : b)
    for (auto& x : row) x = rational(rng, -2, 2, 2);
  tribkar::Matrix<tribkar::Rational> c(n, std::vector<tribkar::Rational>(n, tribkar::Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < r; ++k) c[i][j] += b[i][k] * b[j][k];
  return c;
}

/// A product of 1..max_factors z-variables drawn from `points`, copies below `copies`.
inline tribkar::Polynomial z_monomial(Engine& rng, const std::vector<int>& points, int copies, int max_factors) {
  tribkar::Polynomial m(rational(rng, 1, 4, 2));
  const int d = uniform_int(rng, 1, max_factors);
  for (int t = 0; t < d; ++t)
    m *= tribkar::Polynomial::z(points[uniform_int(rng, 0, static_cast<int>(points.size()) - 1)],
                                uniform_int(rng, 0, copies - 1));
  return m;
}

}  // namespace tribkar::gen
