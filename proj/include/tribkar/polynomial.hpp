#pragma once

/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials with exact rational coefficients.
 *
 * Three variable families: z[i,j] (Gaussian slots, i a point, j a copy index),
 * q[i,j] = q[j,i] (off-diagonal entries of a symmetric matrix; diagonal
 * entries are identically 1 on the matrices used here) and a scalar N.
 */

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tribkar {

enum class Family : std::uint8_t { Z = 0, Q = 1, N = 2 };

struct Var {
  Family family = Family::Z;
  int i = 0;
  int j = 0;

  static Var z(int i, int j) { return {Family::Z, i, j}; }
  static Var q(int i, int j) {
    if (i == j) throw std::invalid_argument("q variables are off-diagonal");
    if (i > j) std::swap(i, j);
    return {Family::Q, i, j};
  }
  static Var big_n() { return {Family::N, 0, 0}; }

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(family) << 48) | (static_cast<std::uint64_t>(i) << 24) |
           static_cast<std::uint64_t>(j);
  }
  bool operator==(const Var& o) const { return key() == o.key(); }
  bool operator<(const Var& o) const { return key() < o.key(); }

  /// 1-based text form, e.g. "z[1,0]" or "q[1,2]".
  std::string to_string() const {
    switch (family) {
      case Family::Z:
        return "z[" + std::to_string(i + 1) + "," + std::to_string(j) + "]";
      case Family::Q:
        return "q[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
      case Family::N:
        return "N";
    }
    return "?";
  }
};

/// Product of variable powers, kept sorted by variable with positive powers.
class Monomial {
 public:
  using Factor = std::pair<Var, int>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) { normalize(); }
  static Monomial of(Var v, int power = 1) { return Monomial({{v, power}}); }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  int exponent(const Var& v) const {
    for (const auto& [w, e] : factors_)
      if (w == v) return e;
    return 0;
  }
  int degree() const {
    int d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }
  int degree(Family fam) const {
    int d = 0;
    for (const auto& [v, e] : factors_)
      if (v.family == fam) d += e;
    return d;
  }

  /// Part of the monomial in one family, and the complement.
  Monomial restrict_to(Family fam) const {
    Monomial m;
    for (const auto& f : factors_)
      if (f.first.family == fam) m.factors_.push_back(f);
    return m;
  }
  Monomial without(Family fam) const {
    Monomial m;
    for (const auto& f : factors_)
      if (f.first.family != fam) m.factors_.push_back(f);
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial m;
    m.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() || b != o.factors_.end()) {
      if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
        m.factors_.push_back(*a++);
      } else if (a == factors_.end() || b->first < a->first) {
        m.factors_.push_back(*b++);
      } else {
        m.factors_.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    return m;
  }

  /// Lowers the power of v by one; the caller checks exponent(v) > 0.
  Monomial reduced(const Var& v) const {
    Monomial m = *this;
    for (auto it = m.factors_.begin(); it != m.factors_.end(); ++it) {
      if (it->first == v) {
        if (--it->second == 0) m.factors_.erase(it);
        return m;
      }
    }
    throw std::logic_error("reduced: variable absent");
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [v, e] : factors_) {
      if (!out.empty()) out += " * ";
      out += v.to_string();
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  bool operator==(const Monomial& o) const {
    if (factors_.size() != o.factors_.size()) return false;
    for (std::size_t k = 0; k < factors_.size(); ++k)
      if (!(factors_[k].first == o.factors_[k].first) || factors_[k].second != o.factors_[k].second)
        return false;
    return true;
  }
  bool operator<(const Monomial& o) const {
    const std::size_t len = std::min(factors_.size(), o.factors_.size());
    for (std::size_t k = 0; k < len; ++k) {
      const auto ka = factors_[k].first.key(), kb = o.factors_[k].first.key();
      if (ka != kb) return ka < kb;
      if (factors_[k].second != o.factors_[k].second)
        return factors_[k].second < o.factors_[k].second;
    }
    return factors_.size() < o.factors_.size();
  }

 private:
  void normalize() {
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    std::vector<Factor> merged;
    for (const auto& f : factors_) {
      if (f.second < 0) throw std::invalid_argument("negative exponent");
      if (!merged.empty() && merged.back().first == f.first)
        merged.back().second += f.second;
      else
        merged.push_back(f);
    }
    std::erase_if(merged, [](const Factor& f) { return f.second == 0; });
    factors_ = std::move(merged);
  }

  std::vector<Factor> factors_;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Monomial(), c);
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial term(const Rational& c, const Monomial& m) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }
  static Polynomial variable(const Var& v) { return term(1, Monomial::of(v)); }
  static Polynomial z(int i, int j) { return variable(Var::z(i, j)); }
  static Polynomial q(int i, int j) { return variable(Var::q(i, j)); }
  static Polynomial big_n() { return variable(Var::big_n()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of the empty monomial.
  Rational constant_term() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? Rational(0) : it->second;
  }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(int k) const {
    Polynomial out(1);
    for (int t = 0; t < k; ++t) out *= *this;
    return out;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Maximal total degree in a family (0 for the zero polynomial).
  int degree(Family fam) const {
    int d = 0;
    for (const auto& kv : terms_) d = std::max(d, kv.first.degree(fam));
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& kv : terms_) d = std::max(d, kv.first.degree());
    return d;
  }
  bool uses_only(Family fam) const {
    for (const auto& kv : terms_)
      for (const auto& f : kv.first.factors())
        if (f.first.family != fam) return false;
    return true;
  }

  /// Terms whose z-degree equals d.
  Polynomial homogeneous_part(Family fam, int d) const {
    Polynomial out;
    for (const auto& [m, c] : terms_)
      if (m.degree(fam) == d) out.terms_.emplace(m, c);
    return out;
  }

  Polynomial derivative(const Var& v) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      const int e = m.exponent(v);
      if (e > 0) out.add_term(m.reduced(v), c * e);
    }
    return out;
  }

  /// Substitutes each variable accepted by `pick` with the returned value.
  Polynomial substitute(const std::function<bool(const Var&)>& pick,
                        const std::function<Rational(const Var&)>& value) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      Rational coeff = c;
      std::vector<Monomial::Factor> kept;
      for (const auto& [v, e] : m.factors()) {
        if (pick(v))
          coeff *= rpow(value(v), static_cast<unsigned long>(e));
        else
          kept.emplace_back(v, e);
      }
      out.add_term(Monomial(std::move(kept)), coeff);
    }
    return out;
  }

  /// Substitutes q[i,j] := Q(i,j) for a full symmetric matrix.
  Polynomial evaluate_q(const std::vector<std::vector<Rational>>& Q) const {
    return substitute([](const Var& v) { return v.family == Family::Q; },
                      [&](const Var& v) { return Q[v.i][v.j]; });
  }
  Polynomial evaluate_n(long n_value) const {
    return substitute([](const Var& v) { return v.family == Family::N; },
                      [&](const Var&) { return Rational(n_value); });
  }

  /// Value when every variable has been substituted; throws otherwise.
  Rational value() const {
    if (!is_constant()) throw std::logic_error("polynomial still has free variables");
    return constant_term();
  }

  /// One "c * z[1,0]^2 * q[1,2]" line per term; "0" for the zero polynomial.
  std::string to_string() const {
    if (terms_.empty()) return "0\n";
    std::string out;
    for (const auto& [m, c] : terms_) {
      out += c.get_str();
      if (!m.is_one()) out += " * " + m.to_string();
      out += "\n";
    }
    return out;
  }

 private:
  Terms terms_;
};

/// D_e = Σ_j ∂²/∂z_{ij}∂z_{i'j} for a bond e = {i,i'}.
inline Polynomial d_edge(const Polynomial& g, int i, int ip) {
  if (i == ip) throw std::invalid_argument("d_edge needs two distinct points");
  Polynomial out;
  for (const auto& [m, c] : g.terms()) {
    // Copy indices j with both z[i,j] and z[i',j] present.
    for (const auto& [v, e] : m.factors()) {
      if (v.family != Family::Z || v.i != i) continue;
      const Var w = Var::z(ip, v.j);
      const int f = m.exponent(w);
      if (f == 0) continue;
      out.add_term(m.reduced(v).reduced(w), c * e * f);
    }
  }
  return out;
}

/// ∂_e on polynomial functions of a symmetric matrix: d/dq[i,j].
inline Polynomial partial_sym(const Polynomial& f, int i, int j) {
  return f.derivative(Var::q(i, j));
}

}  // namespace tribkar
