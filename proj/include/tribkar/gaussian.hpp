#pragma once

/**
 * @file gaussian.hpp
 * @brief Centered Gaussian families ζ = {ζ_ij} with E ζ_ij ζ_i'j' = δ_jj' C(i,i'),
 *        Q-recoupling, the natural transform g ↦ g♮ and its pairing oracle.
 */

#include "interpolation.hpp"
#include "polynomial.hpp"
#include "set_partition.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tribkar {

/// Base covariance C(i,i') = E ζ_i0 ζ_i'0 plus the number of copies 2N+1.
class CovarianceSpec {
 public:
  CovarianceSpec() = default;
  CovarianceSpec(Matrix<Rational> c, int copies) : c_(std::move(c)), copies_(copies) {
    const std::size_t n = c_.size();
    for (const auto& row : c_)
      if (row.size() != n) throw std::invalid_argument("covariance must be square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (c_[i][j] != c_[j][i]) throw std::invalid_argument("covariance must be symmetric");
    if (!is_positive_semidefinite(c_)) throw std::invalid_argument("covariance is not positive semidefinite");
    if (copies_ < 1) throw std::invalid_argument("at least one copy is required");
  }

  static CovarianceSpec identity(int n, int copies) {
    Matrix<Rational> c(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) c[i][i] = 1;
    return CovarianceSpec(std::move(c), copies);
  }

  int n() const { return static_cast<int>(c_.size()); }
  int copies() const { return copies_; }
  const Rational& operator()(int i, int j) const { return c_[i][j]; }
  const Matrix<Rational>& matrix() const { return c_; }

  /// Exact symmetric elimination. A zero pivot forces a zero row; a negative
  /// pivot means an indefinite form.
  static bool is_positive_semidefinite(Matrix<Rational> a) {
    const std::size_t n = a.size();
    std::vector<char> done(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t p = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && a[i][i] != 0) { p = i; break; }
      if (p == n) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (!done[i] && !done[j] && a[i][j] != 0) return false;
        return true;
      }
      if (a[p][p] < 0) return false;
      done[p] = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i] || a[i][p] == 0) continue;
        const Rational factor = a[i][p] / a[p][p];
        for (std::size_t j = 0; j < n; ++j)
          if (!done[j]) a[i][j] -= factor * a[p][j];
      }
    }
    return true;
  }

 private:
  Matrix<Rational> c_;
  int copies_ = 1;
};

/// g ↦ g♮. For each homogeneous piece of z-degree 2m this is
/// (1/m!)(½ Σ_{i,i'} Σ_J Q(i,i') C(i,i') ∂²/∂z_iJ∂z_i'J)^m with Q(i,i) = 1;
/// odd pieces vanish. Copies J do not interact, so the operator power is
/// evaluated one copy at a time and cached by exponent pattern.
class NaturalTransform {
 public:
  explicit NaturalTransform(CovarianceSpec c) : c_(std::move(c)) {}

  Polynomial operator()(const Polynomial& g) {
    Polynomial out;
    for (const auto& [mono, coeff] : g.terms()) {
      std::map<int, std::vector<int>> columns;
      std::vector<Monomial::Factor> rest;
      for (const auto& [v, e] : mono.factors()) {
        if (v.family == Family::Z) {
          if (v.i >= c_.n() || v.j >= c_.copies())
            throw std::invalid_argument("z index outside covariance");
          auto& col = columns[v.j];
          if (col.empty()) col.assign(c_.n(), 0);
          col[v.i] += e;
        } else {
          rest.emplace_back(v, e);
        }
      }
      Polynomial term = Polynomial::term(coeff, Monomial(std::move(rest)));
      for (const auto& [j, exps] : columns) {
        const Polynomial& col = column(exps);
        if (col.is_zero()) {
          term = Polynomial();
          break;
        }
        term *= col;
      }
      out += term;
    }
    return out;
  }

  const CovarianceSpec& covariance() const { return c_; }

 private:
  Polynomial kernel(int i, int ip) const {
    if (i == ip) return Polynomial(c_(i, i));
    return Polynomial::q(i, ip) * c_(i, ip);
  }

  /// (1/m!) L^m applied to ∏_i x_i^{a_i} for one copy.
  const Polynomial& column(const std::vector<int>& a) {
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
    int deg = 0;
    for (int e : a) deg += e;
    Polynomial result;
    if (deg % 2 == 0) {
      const int n = c_.n();
      std::map<std::vector<int>, Polynomial> state{{a, Polynomial(1)}};
      for (int step = 0; step < deg / 2; ++step) {
        std::map<std::vector<int>, Polynomial> next;
        for (const auto& [ex, coeff] : state) {
          for (int i = 0; i < n; ++i) {
            if (ex[i] == 0) continue;
            if (ex[i] >= 2 && c_(i, i) != 0) {
              auto lower = ex;
              lower[i] -= 2;
              next[lower] += coeff * kernel(i, i) * make_rational(ex[i] * (ex[i] - 1), 2);
            }
            for (int ip = i + 1; ip < n; ++ip) {
              if (ex[ip] == 0 || c_(i, ip) == 0) continue;
              auto lower = ex;
              --lower[i];
              --lower[ip];
              next[lower] += coeff * kernel(i, ip) * Rational(ex[i] * ex[ip]);
            }
          }
        }
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        state = std::move(next);
      }
      auto found = state.find(std::vector<int>(a.size(), 0));
      if (found != state.end()) result = found->second * (Rational(1) / Rational(factorial(deg / 2)));
    }
    return cache_.emplace(a, std::move(result)).first->second;
  }

  CovarianceSpec c_;
  std::map<std::vector<int>, Polynomial> cache_;
};

inline Polynomial natural(const Polynomial& g, const CovarianceSpec& c) {
  NaturalTransform t(c);
  return t(g);
}

/// E g(ζ⋆Q) through the natural transform.
inline Rational gaussian_expectation(const Polynomial& g, const CovarianceSpec& c,
                                     const Matrix<Rational>& Q) {
  return natural(g, c).evaluate_q(Q).value();
}

/// E g(ζ⋆Q) by summing over perfect matchings of the z-factors of each
/// monomial (Isserlis–Wick), independent of the operator form.
inline Rational gaussian_expectation_pairing(const Polynomial& g, const CovarianceSpec& c,
                                             const Matrix<Rational>& Q) {
  Rational total = 0;
  for (const auto& [mono, coeff] : g.terms()) {
    std::vector<Var> slots;
    Rational outside = coeff;
    for (const auto& [v, e] : mono.factors()) {
      if (v.family == Family::Z)
        for (int t = 0; t < e; ++t) slots.push_back(v);
      else if (v.family == Family::Q)
        outside *= rpow(Q[v.i][v.j], static_cast<unsigned long>(e));
      else
        throw std::invalid_argument("pairing expectation needs N substituted");
    }
    std::vector<int> idx(slots.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rational sum = 0;
    for_each_pairing(idx, [&](const std::vector<std::pair<int, int>>& pairs) {
      Rational w = 1;
      for (auto [x, y] : pairs) {
        const Var& a = slots[x];
        const Var& b = slots[y];
        if (a.j != b.j) return;
        w *= c(a.i, b.i) * (a.i == b.i ? Rational(1) : Q[a.i][b.i]);
        if (w == 0) return;
      }
      sum += w;
    });
    total += outside * sum;
  }
  return total;
}

/// D^Γ g = ∏_{e∈Γ} D_e g.
inline Polynomial d_gamma(const Polynomial& g, const BondSet& gamma) {
  Polynomial out = g;
  for (const auto& e : gamma.bonds()) {
    if (out.is_zero()) break;
    out = d_edge(out, e.a, e.b);
  }
  return out;
}

}  // namespace tribkar
