#pragma once

/**
 * @file set_partition.hpp
 * @brief The lattice Part_n: refinement, joins, Möbius function, intervals,
 *        joint cumulants and perfect matchings.
 */

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace tribkar {

/// Plain union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

/// Partition of ⟨n⟩ stored as a restricted growth string: label[0] = 0 and
/// each new block gets the next unused label, so blocks are ordered by their
/// least element and equality is plain vector equality.
class SetPartition {
 public:
  SetPartition() = default;

  /// Any labelling is accepted and canonicalized.
  explicit SetPartition(const std::vector<int>& labels) : labels_(labels.size()) {
    std::vector<std::pair<int, int>> remap;
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto it = std::find_if(remap.begin(), remap.end(),
                             [&](const auto& p) { return p.first == labels[i]; });
      if (it == remap.end()) {
        remap.emplace_back(labels[i], next);
        labels_[i] = next++;
      } else {
        labels_[i] = it->second;
      }
    }
    num_blocks_ = next;
  }

  static SetPartition finest(int n) {
    std::vector<int> l(n);
    std::iota(l.begin(), l.end(), 0);
    return SetPartition(l);
  }
  static SetPartition coarsest(int n) { return SetPartition(std::vector<int>(n, 0)); }

  /// Blocks with 0-based points; must cover ⟨n⟩ exactly once.
  static SetPartition from_blocks(const std::vector<std::vector<int>>& blocks, int n) {
    std::vector<int> l(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw std::invalid_argument("empty block");
      for (int i : blocks[b]) {
        if (i < 0 || i >= n) throw std::invalid_argument("block entry outside ground set");
        if (l[i] >= 0) throw std::invalid_argument("blocks are not disjoint");
        l[i] = static_cast<int>(b);
      }
    }
    for (int v : l)
      if (v < 0) throw std::invalid_argument("blocks do not cover the ground set");
    return SetPartition(l);
  }

  /// Parses "{1,2|3,4,5|6}" (1-based).
  static SetPartition parse(std::string_view text, int n) {
    std::vector<std::vector<int>> blocks(1);
    std::string digits;
    auto flush = [&] {
      if (!digits.empty()) blocks.back().push_back(std::stoi(digits) - 1);
      digits.clear();
    };
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
      } else if (c == '|') {
        flush();
        blocks.emplace_back();
      } else if (c == ',' || c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        throw std::invalid_argument("bad character in set partition");
      }
    }
    flush();
    if (n == 0 && blocks.size() == 1 && blocks[0].empty()) return SetPartition();
    return from_blocks(blocks, n);
  }

  int n() const { return static_cast<int>(labels_.size()); }
  int num_blocks() const { return num_blocks_; }
  int block_of(int i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  bool same_block(int i, int j) const { return labels_[i] == labels_[j]; }

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(num_blocks_);
    for (int i = 0; i < n(); ++i) out[labels_[i]].push_back(i);
    return out;
  }

  /// True when every block of *this sits inside a block of `coarser`.
  bool refines(const SetPartition& coarser) const {
    if (coarser.n() != n()) return false;
    std::vector<int> image(num_blocks_, -1);
    for (int i = 0; i < n(); ++i) {
      int& slot = image[labels_[i]];
      if (slot < 0)
        slot = coarser.labels_[i];
      else if (slot != coarser.labels_[i])
        return false;
    }
    return true;
  }

  /// Least upper bound in the refinement order.
  SetPartition join(const SetPartition& other) const {
    if (other.n() != n()) throw std::invalid_argument("join: size mismatch");
    DisjointSets ds(n());
    std::vector<int> first_a(num_blocks_, -1), first_b(other.num_blocks_, -1);
    for (int i = 0; i < n(); ++i) {
      int& fa = first_a[labels_[i]];
      if (fa < 0) fa = i; else ds.unite(fa, i);
      int& fb = first_b[other.labels_[i]];
      if (fb < 0) fb = i; else ds.unite(fb, i);
    }
    std::vector<int> l(n());
    for (int i = 0; i < n(); ++i) l[i] = ds.find(i);
    return SetPartition(l);
  }

  /// [Π](i,j) = 1 when i and j share a block.
  std::vector<std::vector<int>> matrix() const {
    std::vector<std::vector<int>> m(n(), std::vector<int>(n(), 0));
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) m[i][j] = same_block(i, j) ? 1 : 0;
    return m;
  }

  std::string to_string() const {
    std::string out = "{";
    auto bl = blocks();
    for (std::size_t b = 0; b < bl.size(); ++b) {
      if (b) out += "|";
      for (std::size_t k = 0; k < bl[b].size(); ++k) {
        if (k) out += ",";
        out += std::to_string(bl[b][k] + 1);
      }
    }
    return out + "}";
  }

  bool operator==(const SetPartition& o) const { return labels_ == o.labels_; }
  bool operator<(const SetPartition& o) const { return labels_ < o.labels_; }

 private:
  std::vector<int> labels_;
  int num_blocks_ = 0;
};

/// μ(P1:P2) = ∏_{B∈P2} (−1)^{k_B−1}(k_B−1)! where k_B counts P1-blocks in B.
inline Integer moebius(const SetPartition& p1, const SetPartition& p2) {
  if (!p1.refines(p2)) throw std::invalid_argument("moebius: partitions are not comparable");
  std::vector<int> count(p2.num_blocks(), 0);
  std::vector<char> seen(p1.num_blocks(), 0);
  for (int i = 0; i < p1.n(); ++i) {
    if (seen[p1.block_of(i)]) continue;
    seen[p1.block_of(i)] = 1;
    ++count[p2.block_of(i)];
  }
  Integer out = 1;
  for (int k : count) {
    out *= factorial(k - 1);
    if ((k - 1) % 2) out = -out;
  }
  return out;
}

inline Integer bell_number(int k) {
  // Bell triangle.
  std::vector<Integer> row{1};
  for (int i = 1; i <= k; ++i) {
    std::vector<Integer> next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

/// Largest number of lower-end blocks for which intervals are enumerated.
inline constexpr int kDefaultIntervalCap = 10;

/// Visits every Π with lower ≤ Π ≤ upper. Enumeration is a restricted growth
/// string over the blocks of `lower`, pruned so merged blocks stay inside a
/// single block of `upper`.
template <typename Visitor>
void for_each_in_interval(const SetPartition& lower, const SetPartition& upper, Visitor&& visit,
                          int cap = kDefaultIntervalCap) {
  if (!lower.refines(upper)) throw std::invalid_argument("interval: lower does not refine upper");
  const int k = lower.num_blocks();
  if (k > cap)
    throw std::length_error("interval enumeration over " + std::to_string(k) +
                            " blocks exceeds the cap of " + std::to_string(cap));
  std::vector<int> rep(k);  // a point of each lower block
  for (int i = lower.n() - 1; i >= 0; --i) rep[lower.block_of(i)] = i;
  std::vector<int> outer(k);
  for (int b = 0; b < k; ++b) outer[b] = upper.block_of(rep[b]);

  std::vector<int> rgs(k, 0), group_outer;
  std::vector<int> labels(lower.n());
  auto rec = [&](auto&& self, int b) -> void {
    if (b == k) {
      for (int i = 0; i < lower.n(); ++i) labels[i] = rgs[lower.block_of(i)];
      visit(SetPartition(labels));
      return;
    }
    const int groups = static_cast<int>(group_outer.size());
    for (int g = 0; g < groups; ++g) {
      if (group_outer[g] != outer[b]) continue;
      rgs[b] = g;
      self(self, b + 1);
    }
    rgs[b] = groups;
    group_outer.push_back(outer[b]);
    self(self, b + 1);
    group_outer.pop_back();
  };
  rec(rec, 0);
}

inline std::vector<SetPartition> interval(const SetPartition& lower, const SetPartition& upper,
                                          int cap = kDefaultIntervalCap) {
  std::vector<SetPartition> out;
  for_each_in_interval(lower, upper, [&](const SetPartition& p) { out.push_back(p); }, cap);
  return out;
}

/// κ = Σ_{Π∈[Θ:𝟏]} μ(Π:𝟏)·moment(Π), where moment(Π) is the product over
/// blocks of Π of the mixed moments of the Θ-blocks they contain.
template <typename Scalar, typename Moment>
Scalar joint_cumulant(const SetPartition& theta, Moment&& moment, int cap = kDefaultIntervalCap) {
  const auto top = SetPartition::coarsest(theta.n());
  Scalar total{};
  for_each_in_interval(
      theta, top,
      [&](const SetPartition& p) {
        const Integer mu = moebius(p, top);
        Scalar term = moment(p);
        if constexpr (std::is_same_v<Scalar, Rational> || std::is_same_v<Scalar, Integer>)
          total += Scalar(mu) * term;
        else
          total += static_cast<Scalar>(mu.get_si()) * term;
      },
      cap);
  return total;
}

/// Visits each perfect matching of `points` as a list of pairs. Odd sizes
/// yield nothing; the empty set yields one empty matching.
template <typename Visitor>
void for_each_pairing(const std::vector<int>& points, Visitor&& visit) {
  if (points.size() % 2) return;
  std::vector<int> rest = points;
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> used(points.size(), 0);
  auto rec = [&](auto&& self) -> void {
    std::size_t first = 0;
    while (first < rest.size() && used[first]) ++first;
    if (first == rest.size()) {
      visit(static_cast<const std::vector<std::pair<int, int>>&>(pairs));
      return;
    }
    used[first] = 1;
    for (std::size_t j = first + 1; j < rest.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      pairs.emplace_back(rest[first], rest[j]);
      self(self);
      pairs.pop_back();
      used[j] = 0;
    }
    used[first] = 0;
  };
  rec(rec);
}

inline std::vector<std::vector<std::pair<int, int>>> pair_partitions(const std::vector<int>& points) {
  std::vector<std::vector<std::pair<int, int>>> out;
  for_each_pairing(points, [&](const auto& m) { out.push_back(m); });
  return out;
}

}  // namespace tribkar
