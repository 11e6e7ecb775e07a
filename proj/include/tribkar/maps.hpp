#pragma once

/**
 * @file maps.hpp
 * @brief Permutation-pair planar maps, rooted-map counts, Tutte's closed
 *        forms and the exact GUE joint-cumulant polynomial of traces.
 */

#include "perm.hpp"
#include "set_partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tribkar {

/// Visits each fixed-point-free involution of `points` (pairing the least
/// unmatched point first), as a permutation of ⟨n⟩ fixing everything else.
template <typename Visitor>
void for_each_fpf_involution(int n, const std::vector<int>& points, Visitor&& visit) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i;
  for_each_pairing(points, [&](const std::vector<std::pair<int, int>>& pairs) {
    for (auto [a, b] : pairs) {
      im[a] = b;
      im[b] = a;
    }
    visit(static_cast<const std::vector<int>&>(im));
    for (auto [a, b] : pairs) im[a] = a, im[b] = b;
  });
}

template <typename Visitor>
void for_each_fpf_involution(int n, Visitor&& visit) {
  std::vector<int> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = i;
  for_each_fpf_involution(n, pts, std::forward<Visitor>(visit));
}

inline bool generates_transitive(const Permutation& a, const Permutation& b) {
  const int n = a.size();
  if (n == 0) return true;
  DisjointSets ds(n);
  int parts = n;
  for (int i = 0; i < n; ++i) {
    if (ds.unite(i, a(i))) --parts;
    if (ds.unite(i, b(i))) --parts;
  }
  return parts == 1;
}

/// Number of cycles of a∘b restricted to image arrays (fixed points counted).
inline int orbits_of_product(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  std::vector<char> seen(n, 0);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++count;
    for (int j = i; !seen[j]; j = a[b[j]]) seen[j] = 1;
  }
  return count;
}

inline bool is_map(const Permutation& theta, const Permutation& iota) {
  if (theta.size() != iota.size() || theta.size() == 0) return false;
  if (!iota.is_fixed_point_free_involution()) return false;
  if (theta.num_orbits() - iota.num_orbits() + (theta * iota).num_orbits() != 2) return false;
  return generates_transitive(theta, iota);
}

/// All ι with (θ,ι) ∈ Map_n, sorted by image list.
inline std::vector<Permutation> enumerate_maps(const Permutation& theta) {
  std::vector<Permutation> out;
  const int n = theta.size();
  if (n == 0 || n % 2) return out;
  const int l_theta = theta.num_orbits();
  const int l_iota = n / 2;
  for_each_fpf_involution(n, [&](const std::vector<int>& im) {
    if (l_theta - l_iota + orbits_of_product(theta.images(), im) != 2) return;
    Permutation iota(im);
    if (generates_transitive(theta, iota)) out.push_back(std::move(iota));
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline long count_maps(const Permutation& theta) {
  return static_cast<long>(enumerate_maps(theta).size());
}

/// Relabels ⟨θ,ι⟩ by breadth-first discovery from `root`, which keeps its
/// label; two pairs lie in one S_{n−1}-orbit (root = n) iff their codes agree.
inline std::vector<int> rooted_code(const Permutation& theta, const Permutation& iota, int root) {
  const int n = theta.size();
  std::vector<int> label(n, -1);
  std::vector<int> queue{root};
  label[root] = root;
  int next = 0;
  auto fresh = [&] {
    if (next == root) ++next;
    return next++;
  };
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (int v : {theta(queue[h]), iota(queue[h])}) {
      if (label[v] >= 0) continue;
      label[v] = fresh();
      queue.push_back(v);
    }
  }
  if (static_cast<int>(queue.size()) != n) throw std::invalid_argument("pair is not transitive");
  std::vector<int> code(2 * n);
  for (int i = 0; i < n; ++i) {
    code[label[i]] = label[theta(i)];
    code[n + label[i]] = label[iota(i)];
  }
  return code;
}

/// Every ρ commuting with θ and ι. Transitivity pins ρ down from ρ(0), so
/// each candidate image of 0 is propagated and checked.
inline std::vector<Permutation> map_automorphisms(const Permutation& theta,
                                                  const Permutation& iota) {
  const int n = theta.size();
  std::vector<Permutation> out;
  for (int t = 0; t < n; ++t) {
    std::vector<int> rho(n, -1);
    rho[0] = t;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t h = 0; h < queue.size() && ok; ++h) {
      const int v = queue[h];
      for (const Permutation* g : {&theta, &iota}) {
        const int w = (*g)(v);
        const int img = (*g)(rho[v]);
        if (rho[w] < 0) {
          rho[w] = img;
          queue.push_back(w);
        } else if (rho[w] != img) {
          ok = false;
          break;
        }
      }
    }
    if (!ok || static_cast<int>(queue.size()) != n) continue;
    std::vector<char> hit(n, 0);
    for (int v : rho) {
      if (hit[v]) ok = false;
      hit[v] = 1;
    }
    if (ok) out.emplace_back(std::move(rho));
  }
  return out;
}

/// |Map_{λ⊢n}/S_{n−1}| by running over the whole conjugacy class and
/// counting distinct rooted codes.
inline long rooted_map_count_bruteforce(const NumericalPartition& lambda) {
  const int n = lambda.size();
  if (n % 2) return 0;
  std::set<std::vector<int>> codes;
  for_each_permutation(n, [&](const Permutation& theta) {
    if (theta.cycle_type() != lambda) return;
    for (const auto& iota : enumerate_maps(theta)) codes.insert(rooted_code(theta, iota, n - 1));
  });
  return static_cast<long>(codes.size());
}

struct TutteCounts {
  Rational mstar;  ///< rooted maps with degree distribution λ
  Rational m;      ///< |Map_n(θ)| for θ of type λ
};

inline TutteCounts tutte(const NumericalPartition& lambda) {
  if (!lambda.is_eulerian()) throw std::invalid_argument("Tutte's formula needs all parts even");
  const long half = lambda.size() / 2;
  const long ell = lambda.length();
  const long top = half - ell + 2;
  if (top < 0) return {0, 0};
  Rational mstar = Rational(2 * factorial(half)) / Rational(factorial(top));
  std::map<int, int> mult;
  for (int p : lambda.parts()) ++mult[p];
  for (auto [part, m] : mult) {
    const int i = part / 2;
    mstar *= Rational(ipow(binomial(2 * i - 1, i), static_cast<unsigned long>(m))) /
             Rational(factorial(m));
  }
  Rational m = Rational(factorial(half - 1)) / Rational(factorial(top));
  for (int p : lambda.parts()) m *= Rational(binomial(p, p / 2) * p) / 2;
  return {mstar, m};
}

/// Exact polynomial in N with integer coefficients, coeffs[k] multiplying N^k.
class CumulantPolynomial {
 public:
  CumulantPolynomial() = default;
  explicit CumulantPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Integer coefficient(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Integer(0);
  }

  Integer evaluate(long n) const {
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
    return acc;
  }

  /// (exponent, coefficient) pairs, highest exponent first, zeros skipped.
  std::vector<std::pair<int, Integer>> terms() const {
    std::vector<std::pair<int, Integer>> out;
    for (int k = degree(); k >= 0; --k)
      if (coeffs_[k] != 0) out.emplace_back(k, coeffs_[k]);
    return out;
  }

  /// "2N^3 + N", "0" for the zero polynomial.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : terms()) {
      Integer mag = abs(c);
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      if (mag != 1 || k == 0) out += mag.get_str();
      if (k >= 1) out += "N";
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

  CumulantPolynomial& operator+=(const CumulantPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  friend CumulantPolynomial operator*(const CumulantPolynomial& a, const CumulantPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return CumulantPolynomial(std::move(c));
  }
  friend CumulantPolynomial operator*(const Integer& s, const CumulantPolynomial& p) {
    auto c = p.coeffs_;
    for (auto& v : c) v *= s;
    return CumulantPolynomial(std::move(c));
  }
  bool operator==(const CumulantPolynomial&) const = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Integer> coeffs_;
};

/// E ∏_{A⊂B} tr Ξ^{|A|} = Σ_ι N^{ℓ(θ_B ι)} over pairings ι of the points of B.
inline CumulantPolynomial trace_moment(const Permutation& theta, const std::vector<int>& points) {
  const int n = theta.size();
  std::vector<Integer> coeffs(points.size() + 1, 0);
  if (points.size() % 2) return {};
  std::vector<char> inside(n, 0);
  for (int p : points) inside[p] = 1;
  std::vector<char> seen(n, 0);
  for_each_fpf_involution(n, points, [&](const std::vector<int>& iota) {
    int cycles = 0;
    for (int p : points) seen[p] = 0;
    for (int p : points) {
      if (seen[p]) continue;
      ++cycles;
      for (int j = p; !seen[j]; j = theta(iota[j])) seen[j] = 1;
    }
    ++coeffs[cycles];
  });
  return CumulantPolynomial(std::move(coeffs));
}

/// κ(tr Ξ^{λ_1}, …, tr Ξ^{λ_ℓ}) for a standard N×N GUE matrix, exactly.
inline CumulantPolynomial cumulant_polynomial(const NumericalPartition& lambda) {
  const int n = lambda.size();
  if (n % 2) return {};
  if (n > 14) throw std::length_error("cumulant_polynomial is capped at n = 14");
  const Permutation theta = class_representative(lambda);
  const auto orbits = theta.orbits();
  std::vector<int> orbit_of(n);
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (int p : orbits[o]) orbit_of[p] = static_cast<int>(o);
  const SetPartition orb(orbit_of);

  std::map<std::vector<int>, CumulantPolynomial> cache;
  auto block_moment = [&](const std::vector<int>& pts) -> const CumulantPolynomial& {
    auto it = cache.find(pts);
    if (it == cache.end()) it = cache.emplace(pts, trace_moment(theta, pts)).first;
    return it->second;
  };
  CumulantPolynomial total;
  const auto top = SetPartition::coarsest(n);
  for_each_in_interval(orb, top, [&](const SetPartition& p) {
    CumulantPolynomial prod({Integer(1)});
    for (const auto& block : p.blocks()) {
      prod = prod * block_moment(block);
      if (prod.is_zero()) return;
    }
    total += moebius(p, top) * prod;
  });
  return total;
}

/// Coefficient of N^{n/2+2−ℓ}; zero when that exponent is negative.
inline Integer thooft_leading(const NumericalPartition& lambda) {
  const int e = lambda.size() / 2 + 2 - lambda.length();
  if (lambda.size() % 2 || e < 0) return 0;
  return cumulant_polynomial(lambda).coefficient(e);
}

}  // namespace tribkar
