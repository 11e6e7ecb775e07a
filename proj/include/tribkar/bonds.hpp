#pragma once

/**
 * @file bonds.hpp
 * @brief Bond sets, the graph G(Θ,Γ), Tree_n(Θ), linear forests.
 */

#include "perm.hpp"
#include "set_partition.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tribkar {

/// Unordered pair {a,b}, stored with a < b (0-based).
struct Bond {
  int a = 0;
  int b = 0;
  static Bond of(int x, int y) {
    if (x == y) throw std::invalid_argument("a bond needs two distinct points");
    return x < y ? Bond{x, y} : Bond{y, x};
  }
  bool contains(int x) const { return a == x || b == x; }
  int other(int x) const { return x == a ? b : a; }
  bool operator==(const Bond&) const = default;
  auto operator<=>(const Bond&) const = default;
};

class BondSet {
 public:
  BondSet() = default;
  BondSet(int n, std::vector<Bond> bonds) : n_(n), bonds_(std::move(bonds)) {
    for (const auto& e : bonds_)
      if (e.a < 0 || e.b >= n_ || e.a >= e.b) throw std::invalid_argument("bond outside ground set");
    std::sort(bonds_.begin(), bonds_.end());
    bonds_.erase(std::unique(bonds_.begin(), bonds_.end()), bonds_.end());
  }

  /// Parses "{1-5,4-6,5-7}" (1-based endpoints).
  static BondSet parse(std::string_view text, int n) {
    std::vector<Bond> out;
    std::vector<int> nums;
    std::string digits;
    auto flush = [&] {
      if (!digits.empty()) nums.push_back(std::stoi(digits) - 1);
      digits.clear();
    };
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
      } else if (c == '-') {
        flush();
      } else if (c == ',' || c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c))) {
        flush();
        if (c != '-' && nums.size() == 2) {
          out.push_back(Bond::of(nums[0], nums[1]));
          nums.clear();
        }
      } else {
        throw std::invalid_argument("bad character in bond set");
      }
    }
    flush();
    if (nums.size() == 2) out.push_back(Bond::of(nums[0], nums[1]));
    else if (!nums.empty()) throw std::invalid_argument("dangling endpoint in bond set");
    return BondSet(n, std::move(out));
  }

  int n() const { return n_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  std::size_t size() const { return bonds_.size(); }
  bool empty() const { return bonds_.empty(); }
  bool contains(const Bond& e) const { return std::binary_search(bonds_.begin(), bonds_.end(), e); }

  /// Number of bonds at each point.
  std::vector<int> degrees() const {
    std::vector<int> d(n_, 0);
    for (const auto& e : bonds_) {
      ++d[e.a];
      ++d[e.b];
    }
    return d;
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < bonds_.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(bonds_[k].a + 1) + "-" + std::to_string(bonds_[k].b + 1);
    }
    return out + "}";
  }

  bool operator==(const BondSet&) const = default;
  bool operator<(const BondSet& o) const { return bonds_ < o.bonds_; }

 private:
  int n_ = 0;
  std::vector<Bond> bonds_;
};

/// Γ∨Θ: the finest partition above Θ in which every bond lies in one block.
inline SetPartition join_bonds(const SetPartition& theta, const BondSet& gamma) {
  if (gamma.n() != theta.n()) throw std::invalid_argument("join_bonds: size mismatch");
  DisjointSets ds(theta.n());
  std::vector<int> first(theta.num_blocks(), -1);
  for (int i = 0; i < theta.n(); ++i) {
    int& f = first[theta.block_of(i)];
    if (f < 0) f = i; else ds.unite(f, i);
  }
  for (const auto& e : gamma.bonds()) ds.unite(e.a, e.b);
  std::vector<int> l(theta.n());
  for (int i = 0; i < theta.n(); ++i) l[i] = ds.find(i);
  return SetPartition(l);
}

/// Γ ∈ Tree_n(Θ): G(Θ,Γ) is a tree on the blocks of Θ.
inline bool is_tree(const SetPartition& theta, const BondSet& gamma) {
  if (gamma.size() + 1 != static_cast<std::size_t>(theta.num_blocks())) return false;
  return join_bonds(theta, gamma).num_blocks() == 1;
}

/// All of Tree_n(Θ), sorted. Candidate bonds run between distinct blocks
/// and a union-find over blocks rejects circuits as they form.
inline std::vector<BondSet> enumerate_trees(const SetPartition& theta) {
  const int n = theta.n();
  const int k = theta.num_blocks();
  std::vector<Bond> cand;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!theta.same_block(a, b)) cand.push_back({a, b});
  std::vector<BondSet> out;
  std::vector<Bond> chosen;
  auto rec = [&](auto&& self, std::size_t start, std::vector<int> comp) -> void {
    if (static_cast<int>(chosen.size()) == k - 1) {
      out.emplace_back(n, chosen);
      return;
    }
    const std::size_t needed = static_cast<std::size_t>(k - 1) - chosen.size();
    for (std::size_t c = start; c + needed <= cand.size(); ++c) {
      const int ca = comp[theta.block_of(cand[c].a)];
      const int cb = comp[theta.block_of(cand[c].b)];
      if (ca == cb) continue;
      std::vector<int> next = comp;
      for (int& x : next)
        if (x == cb) x = ca;
      chosen.push_back(cand[c]);
      self(self, c + 1, std::move(next));
      chosen.pop_back();
    }
  };
  std::vector<int> comp(k);
  for (int b = 0; b < k; ++b) comp[b] = b;
  rec(rec, 0, comp);
  std::sort(out.begin(), out.end());
  return out;
}

/// n^{k−2} ∏_{A∈Θ} |A| for k ≥ 2, and 1 for a single block.
inline Integer tree_count(const SetPartition& theta) {
  const int k = theta.num_blocks();
  if (k == 1) return 1;
  Integer out = ipow(Integer(theta.n()), static_cast<unsigned long>(k - 2));
  for (const auto& b : theta.blocks()) out *= static_cast<long>(b.size());
  return out;
}

/// Circuitless with every point of degree at most two in G(𝟎_n,Γ).
inline bool is_linear_forest(const BondSet& gamma) {
  for (int d : gamma.degrees())
    if (d > 2) return false;
  DisjointSets ds(gamma.n());
  for (const auto& e : gamma.bonds())
    if (!ds.unite(e.a, e.b)) return false;
  return true;
}

struct LinearForest {
  BondSet bonds;
  std::vector<std::vector<int>> paths;  // vertex sequences, each starting at its smaller end
  std::vector<Bond> boundary;           // endpoint pair of each path, same order as paths

  /// The bonds of the i-th component.
  BondSet component(std::size_t c) const {
    std::vector<Bond> out;
    for (std::size_t k = 0; k + 1 < paths[c].size(); ++k)
      out.push_back(Bond::of(paths[c][k], paths[c][k + 1]));
    return BondSet(bonds.n(), std::move(out));
  }
};

/// Decomposes a linear forest into paths and computes its boundary.
inline LinearForest decompose_linear_forest(const BondSet& gamma) {
  if (!is_linear_forest(gamma)) throw std::invalid_argument("bond set is not a linear forest");
  const int n = gamma.n();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : gamma.bonds()) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  LinearForest lf{gamma, {}, {}};
  std::vector<char> seen(n, 0);
  for (int v = 0; v < n; ++v) {
    if (seen[v] || adj[v].size() != 1) continue;
    std::vector<int> path{v};
    seen[v] = 1;
    int prev = -1, cur = v;
    while (true) {
      int next = -1;
      for (int w : adj[cur])
        if (w != prev) next = w;
      if (next < 0) break;
      path.push_back(next);
      seen[next] = 1;
      prev = cur;
      cur = next;
    }
    lf.boundary.push_back(Bond::of(path.front(), path.back()));
    lf.paths.push_back(std::move(path));
  }
  return lf;
}

/// LF(σ,A) = {{i,σ(i)} : i ∈ supp σ ∖ A}.
inline BondSet linear_forest_bonds(const Permutation& sigma, std::span<const int> cut) {
  if (!is_cycle_cutting(sigma, cut)) throw std::invalid_argument("not a cycle-cutting");
  std::vector<char> in_cut(sigma.size(), 0);
  for (int a : cut) in_cut[a] = 1;
  std::vector<Bond> out;
  for (int i : sigma.support())
    if (!in_cut[i]) out.push_back(Bond::of(i, sigma(i)));
  return BondSet(sigma.size(), std::move(out));
}

inline LinearForest linear_forest_of(const Permutation& sigma, std::span<const int> cut) {
  return decompose_linear_forest(linear_forest_bonds(sigma, cut));
}

inline LinearForest linear_forest_of(const CycleCutting& c) {
  return linear_forest_of(c.base, c.points);
}

/// Cycle-cut permutations (σ,A) with LF(σ,A) = Γ, one per orientation of
/// each path: σ runs along the path towards the chosen end, then jumps back.
inline std::vector<CycleCutting> cycle_cuts_of_forest(const LinearForest& lf) {
  const int n = lf.bonds.n();
  std::vector<CycleCutting> out;
  const std::size_t k = lf.paths.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::vector<int> cut;
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<int> p = lf.paths[c];
      if (mask >> c & 1) std::reverse(p.begin(), p.end());
      for (std::size_t t = 0; t + 1 < p.size(); ++t) im[p[t]] = p[t + 1];
      im[p.back()] = p.front();
      cut.push_back(p.back());
    }
    std::sort(cut.begin(), cut.end());
    out.push_back({Permutation(std::move(im)), std::move(cut)});
  }
  return out;
}

/// Bonds of Γ on the geodesic joining the Θ-blocks of i and j in G(Θ,Γ).
inline BondSet geodesic(const SetPartition& theta, const BondSet& gamma, int i, int j) {
  const int k = theta.num_blocks();
  std::vector<std::vector<std::pair<int, int>>> adj(k);  // (block, bond index)
  for (std::size_t e = 0; e < gamma.size(); ++e) {
    const int ba = theta.block_of(gamma.bonds()[e].a), bb = theta.block_of(gamma.bonds()[e].b);
    adj[ba].emplace_back(bb, static_cast<int>(e));
    adj[bb].emplace_back(ba, static_cast<int>(e));
  }
  const int src = theta.block_of(i), dst = theta.block_of(j);
  std::vector<int> via(k, -2);
  std::vector<int> from(k, -1);
  std::deque<int> queue{src};
  via[src] = -1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (auto [w, e] : adj[u]) {
      if (via[w] != -2) continue;
      via[w] = e;
      from[w] = u;
      queue.push_back(w);
    }
  }
  if (via[dst] == -2) throw std::invalid_argument("geodesic: blocks are not connected");
  std::vector<Bond> path;
  for (int u = dst; u != src; u = from[u]) path.push_back(gamma.bonds()[via[u]]);
  return BondSet(theta.n(), std::move(path));
}

/// DOT rendering of G(Θ,Γ): one box per block, one edge per bond.
inline std::string graph_dot(const SetPartition& theta, const BondSet& gamma) {
  std::ostringstream os;
  os << "graph G {\n  node [shape=box];\n";
  const auto blocks = theta.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    os << "  B" << b << " [label=\"";
    for (std::size_t t = 0; t < blocks[b].size(); ++t) os << (t ? "," : "") << blocks[b][t] + 1;
    os << "\"];\n";
  }
  for (const auto& e : gamma.bonds())
    os << "  B" << theta.block_of(e.a) << " -- B" << theta.block_of(e.b) << " [label=\""
       << e.a + 1 << "-" << e.b + 1 << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace tribkar
