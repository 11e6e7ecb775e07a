#pragma once

/**
 * @file perm.hpp
 * @brief Permutations of ⟨n⟩, numerical partitions, cycle-cuttings, strike.
 *
 * Points are 0-based internally; every text form (cycle notation, reports)
 * is 1-based. Composition is right-to-left: (p*q)(i) = p(q(i)).
 */

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tribkar {

/// Weakly decreasing sequence of positive parts, Macdonald-style bookkeeping.
class NumericalPartition {
 public:
  NumericalPartition() = default;
  explicit NumericalPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p <= 0) throw std::invalid_argument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }

  /// Parses "4,2,2" or "(4,2,2)" (whitespace ignored).
  static NumericalPartition parse(std::string_view text) {
    std::vector<int> parts;
    std::string digits;
    auto flush = [&] {
      if (!digits.empty()) parts.push_back(std::stoi(digits));
      digits.clear();
    };
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
      } else if (c == ',' || std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
                 c == ')' || c == '[' || c == ']') {
        flush();
      } else {
        throw std::invalid_argument("bad character in partition: " + std::string(text));
      }
    }
    flush();
    if (parts.empty()) throw std::invalid_argument("empty partition");
    return NumericalPartition(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }
  int multiplicity(int part) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
  }
  /// z_λ = ∏ i^{m_i} m_i!
  Integer z() const {
    Integer out = 1;
    for (int i = 1; i <= size(); ++i) {
      int m = multiplicity(i);
      if (m > 0) out *= ipow(Integer(i), m) * factorial(m);
    }
    return out;
  }
  /// 𝐦(λ) = ∏ λ_i, the number of cycle-cuttings of any σ ∼ λ.
  Integer part_product() const {
    Integer out = 1;
    for (int p : parts_) out *= p;
    return out;
  }
  bool is_eulerian() const {
    return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p % 2 == 0; });
  }
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(parts_[k]);
    }
    return out + ")";
  }

  auto operator<=>(const NumericalPartition&) const = default;

 private:
  std::vector<int> parts_;
};

/// All λ ⊢ n in reverse lexicographic order: (n), (n-1,1), ...
inline std::vector<NumericalPartition> partitions_of(int n) {
  std::vector<NumericalPartition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  if (n > 0) rec(rec, n, n);
  return out;
}

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = size();
    std::vector<char> seen(n, 0);
    for (int v : images_) {
      if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("images are not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  /// Cycles given with 1-based labels; unlisted points are fixed.
  static Permutation from_cycles(const std::vector<std::vector<int>>& cycles, int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::vector<char> used(n, 0);
    for (const auto& cyc : cycles) {
      for (int label : cyc) {
        if (label < 1 || label > n)
          throw std::invalid_argument("cycle entry " + std::to_string(label) + " outside <" +
                                      std::to_string(n) + ">");
        if (used[label - 1])
          throw std::invalid_argument("repeated letter " + std::to_string(label) +
                                      " in cycle notation");
        used[label - 1] = 1;
      }
      for (std::size_t k = 0; k < cyc.size(); ++k)
        im[cyc[k] - 1] = cyc[(k + 1) % cyc.size()] - 1;
    }
    return Permutation(std::move(im));
  }

  /// Parses "(1,8,6)(2,3,9,5)"; entries may also be space-separated.
  static Permutation parse(std::string_view text, int n) {
    std::vector<std::vector<int>> cycles;
    std::vector<int> current;
    std::string digits;
    bool open = false;
    auto flush = [&] {
      if (!digits.empty()) {
        if (!open) throw std::invalid_argument("number outside parentheses in cycle notation");
        current.push_back(std::stoi(digits));
      }
      digits.clear();
    };
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
      } else if (c == '(') {
        if (open) throw std::invalid_argument("nested '(' in cycle notation");
        open = true;
      } else if (c == ')') {
        flush();
        if (!open) throw std::invalid_argument("unmatched ')' in cycle notation");
        open = false;
        if (!current.empty()) cycles.push_back(current);
        current.clear();
      } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        throw std::invalid_argument("bad character in cycle notation: '" + std::string(1, c) +
                                    "'");
      }
    }
    if (open || !digits.empty()) throw std::invalid_argument("unterminated cycle notation");
    return from_cycles(cycles, n);
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
  }

  /// All orbits (fixed points included), each listed in cycle order from its
  /// least element; orbits sorted by least element.
  std::vector<std::vector<int>> orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(size(), 0);
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::vector<int> orb;
      for (int j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        orb.push_back(j);
      }
      out.push_back(std::move(orb));
    }
    return out;
  }

  /// Canonical factorization: orbits of length at least two.
  std::vector<std::vector<int>> cycles() const {
    auto orbs = orbits();
    std::erase_if(orbs, [](const auto& o) { return o.size() < 2; });
    return orbs;
  }

  /// ℓ(σ): number of orbits, singletons included.
  int num_orbits() const {
    std::vector<char> seen(size(), 0);
    int count = 0;
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      ++count;
      for (int j = i; !seen[j]; j = images_[j]) seen[j] = 1;
    }
    return count;
  }

  /// Orbit id for each point, ids numbered by least element.
  std::vector<int> orbit_index() const {
    std::vector<int> idx(size(), -1);
    int next = 0;
    for (int i = 0; i < size(); ++i) {
      if (idx[i] >= 0) continue;
      for (int j = i; idx[j] < 0; j = images_[j]) idx[j] = next;
      ++next;
    }
    return idx;
  }

  /// Length of the orbit containing i, written 𝐦(σ,i).
  int orbit_length(int i) const {
    int len = 1;
    for (int j = images_[i]; j != i; j = images_[j]) ++len;
    return len;
  }

  std::vector<int> support() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (images_[i] != i) out.push_back(i);
    return out;
  }

  bool in_support(int i) const { return images_[i] != i; }

  NumericalPartition cycle_type() const {
    std::vector<int> parts;
    for (const auto& o : orbits()) parts.push_back(static_cast<int>(o.size()));
    return NumericalPartition(std::move(parts));
  }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  bool is_fixed_point_free_involution() const {
    for (int i = 0; i < size(); ++i)
      if (images_[i] == i || images_[images_[i]] != i) return false;
    return true;
  }

  /// "(1,8,6)(2,3,9,5)"; the identity prints as "()".
  std::string to_string() const {
    std::string out;
    for (const auto& c : cycles()) {
      out += "(";
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(c[k] + 1);
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// (p*q)(i) = p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> im(p.size());
  for (int i = 0; i < p.size(); ++i) im[i] = p(q(i));
  return Permutation(std::move(im));
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

inline Permutation conjugate(const Permutation& rho, const Permutation& sigma) {
  return rho * sigma * rho.inverse();
}

/// Canonical representative of the class λ: (1..λ1)(λ1+1..λ1+λ2)...
inline Permutation class_representative(const NumericalPartition& lambda) {
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int p : lambda.parts()) {
    std::vector<int> cyc;
    for (int k = 0; k < p; ++k) cyc.push_back(next++);
    if (p > 1) cycles.push_back(std::move(cyc));
  }
  return Permutation::from_cycles(cycles, lambda.size());
}

/// Visits every permutation of ⟨n⟩ in lexicographic order of image lists.
template <typename Visitor>
void for_each_permutation(int n, Visitor&& visit) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  do {
    visit(Permutation(im));
  } while (std::next_permutation(im.begin(), im.end()));
}

/// A permutation of a subset D ⊂ ⟨n⟩, stored as a permutation of ⟨n⟩ that
/// fixes every point outside D. Orbits are counted over D only.
struct PermutationOn {
  Permutation perm;
  std::vector<int> domain;  // sorted, 0-based

  int num_orbits() const {
    std::vector<char> seen(perm.size(), 0);
    int count = 0;
    for (int i : domain) {
      if (seen[i]) continue;
      ++count;
      for (int j = i; !seen[j]; j = perm(j)) seen[j] = 1;
    }
    return count;
  }
  std::string to_string() const { return perm.to_string(); }
  bool operator==(const PermutationOn&) const = default;
};

inline PermutationOn on_full_domain(const Permutation& p) {
  std::vector<int> dom(p.size());
  std::iota(dom.begin(), dom.end(), 0);
  return {p, std::move(dom)};
}

/// τ\X: each surviving point maps to the first later point of its cycle
/// outside X. Cycles wholly inside X disappear.
inline PermutationOn strike(const PermutationOn& tau, std::span<const int> removed) {
  const int n = tau.perm.size();
  std::vector<char> gone(n, 1);
  for (int i : tau.domain) gone[i] = 0;
  for (int x : removed) {
    if (x < 0 || x >= n) throw std::invalid_argument("strike: point outside ground set");
    gone[x] = 1;
  }
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<int> dom;
  for (int i : tau.domain) {
    if (gone[i]) continue;
    dom.push_back(i);
    int j = tau.perm(i);
    while (gone[j]) j = tau.perm(j);
    im[i] = j;
  }
  return {Permutation(std::move(im)), std::move(dom)};
}

inline PermutationOn strike(const Permutation& tau, std::span<const int> removed) {
  return strike(on_full_domain(tau), removed);
}

/// One point chosen from each nontrivial orbit of `base`.
struct CycleCutting {
  Permutation base;
  std::vector<int> points;  // sorted, 0-based
  bool operator==(const CycleCutting&) const = default;
};

inline bool is_cycle_cutting(const Permutation& sigma, std::span<const int> points) {
  auto cycles = sigma.cycles();
  auto idx = sigma.orbit_index();
  std::vector<int> hits(sigma.size(), 0);
  for (int a : points) {
    if (a < 0 || a >= sigma.size() || !sigma.in_support(a)) return false;
    if (hits[idx[a]]++) return false;
  }
  return static_cast<int>(points.size()) == static_cast<int>(cycles.size());
}

/// All 𝐦(σ) cycle-cuttings of σ (the product over nontrivial orbits).
inline std::vector<CycleCutting> cycle_cuttings(const Permutation& sigma) {
  const auto cycles = sigma.cycles();
  std::vector<CycleCutting> out;
  std::vector<int> pick;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == cycles.size()) {
      std::vector<int> pts = pick;
      std::sort(pts.begin(), pts.end());
      out.push_back({sigma, std::move(pts)});
      return;
    }
    for (int a : cycles[k]) {
      pick.push_back(a);
      self(self, k + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(),
            [](const CycleCutting& a, const CycleCutting& b) { return a.points < b.points; });
  return out;
}

/// Parses "{1,2,5}" or "1,2,5" into sorted 0-based points.
inline std::vector<int> parse_point_set(std::string_view text, int n) {
  std::vector<int> pts;
  std::string digits;
  auto flush = [&] {
    if (!digits.empty()) {
      int v = std::stoi(digits);
      if (v < 1 || v > n) throw std::invalid_argument("point outside ground set");
      pts.push_back(v - 1);
    }
    digits.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      digits.push_back(c);
    else if (c == ',' || c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      throw std::invalid_argument("bad character in point set");
  }
  flush();
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw std::invalid_argument("repeated point in set");
  return pts;
}

inline std::string format_point_set(std::span<const int> pts) {
  std::string out = "{";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(pts[k] + 1);
  }
  return out + "}";
}

}  // namespace tribkar
