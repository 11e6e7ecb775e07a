#pragma once

/**
 * @file trees.hpp
 * @brief Edge-labeled bipartite planar trees for Goulden–Jackson pairs, their
 *        four-colored GJdM refinement, green-leaf snipping and labeled mobiles.
 *
 * A vertex stores the labels of its incident edges in counterclockwise order.
 * White vertices are θ-orbits and the other vertices are σ-orbits, so the
 * ccw lists are exactly the cycles of θ and σ.
 */

#include "goulden_jackson.hpp"
#include "perm.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tribkar {

enum class Color { White, Black, Blue, Green, Red };

inline const char* color_name(Color c) {
  switch (c) {
    case Color::White: return "white";
    case Color::Black: return "black";
    case Color::Blue: return "blue";
    case Color::Green: return "green";
    case Color::Red: return "red";
  }
  return "?";
}

inline Color parse_color(const std::string& s) {
  for (Color c : {Color::White, Color::Black, Color::Blue, Color::Green, Color::Red})
    if (s == color_name(c)) return c;
  throw std::invalid_argument("unknown color " + s);
}

struct TreeVertex {
  Color color = Color::Black;
  std::optional<int> label;
  std::vector<int> ccw;  ///< incident edge labels, counterclockwise
  bool operator==(const TreeVertex&) const = default;
};

/// A flag on edge `edge` pointing in the positive (+1) or negative (−1)
/// direction around its white end, carrying an integer value.
struct Flag {
  int edge = 0;
  int direction = 1;
  int value = 0;
  auto operator<=>(const Flag&) const = default;
};

class ColoredTree {
 public:
  ColoredTree() = default;
  explicit ColoredTree(int n) : n_(n), ends_(n, {-1, -1}) {}

  int n() const { return n_; }
  const std::vector<TreeVertex>& vertices() const { return vertices_; }
  const TreeVertex& vertex(int v) const { return vertices_[v]; }
  const std::vector<Flag>& flags() const { return flags_; }
  bool has_edge(int label) const { return ends_[label][0] >= 0; }
  /// {white end, other end}.
  const std::array<int, 2>& ends(int label) const { return ends_[label]; }

  std::vector<int> edge_labels() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (has_edge(i)) out.push_back(i);
    return out;
  }
  int num_edges() const { return static_cast<int>(edge_labels().size()); }
  int degree(int v) const { return static_cast<int>(vertices_[v].ccw.size()); }

  int add_vertex(Color c, std::vector<int> ccw, std::optional<int> label = std::nullopt) {
    const int id = static_cast<int>(vertices_.size());
    for (int e : ccw) {
      auto& slot = ends_.at(e)[c == Color::White ? 0 : 1];
      if (slot >= 0) throw std::invalid_argument("edge label used twice on one side");
      slot = id;
    }
    vertices_.push_back({c, label, std::move(ccw)});
    return id;
  }
  void set_color(int v, Color c) { vertices_[v].color = c; }
  void set_label(int v, std::optional<int> label) { vertices_[v].label = label; }
  void add_flag(Flag f) {
    flags_.push_back(f);
    std::sort(flags_.begin(), flags_.end());
  }
  void clear_flags() { flags_.clear(); }

  /// Removes edge `label` together with its non-white end, which must be a leaf.
  void remove_leaf_edge(int label) {
    const auto [w, b] = ends_[label];
    if (degree(b) != 1) throw std::invalid_argument("edge does not end in a leaf");
    auto& ccw = vertices_[w].ccw;
    ccw.erase(std::find(ccw.begin(), ccw.end(), label));
    vertices_[b].ccw.clear();
    ends_[label] = {-1, -1};
    compact();
  }

  /// Inserts a new leaf edge at white vertex w immediately before `before`
  /// in ccw order.
  void insert_leaf_edge(int w, int before, int label, Color leaf_color) {
    if (has_edge(label)) throw std::invalid_argument("edge label already present");
    auto& ccw = vertices_[w].ccw;
    auto it = std::find(ccw.begin(), ccw.end(), before);
    if (it == ccw.end()) throw std::invalid_argument("anchor edge not at this vertex");
    ccw.insert(it, label);
    ends_[label][0] = w;
    add_vertex(leaf_color, {label});
  }

  /// Vertices listed from a breadth-first walk rooted at the white end of the
  /// largest edge label, each vertex's ccw list rotated to start at the edge
  /// it was reached by. Two trees are equivalent iff their codes agree.
  std::vector<long> canonical_code() const {
    const auto labels = edge_labels();
    std::vector<long> code;
    code.push_back(n_);
    if (labels.empty()) {
      for (const auto& v : vertices_) code.push_back(static_cast<long>(v.color));
      return code;
    }
    const int root_edge = labels.back();
    std::vector<std::pair<int, int>> queue{{ends_[root_edge][0], root_edge}};
    std::vector<char> seen(vertices_.size(), 0);
    seen[queue[0].first] = 1;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      const auto [v, entry] = queue[k];
      const auto& vx = vertices_[v];
      code.push_back(-1);
      code.push_back(static_cast<long>(vx.color));
      code.push_back(vx.label ? *vx.label : -1000000);
      const auto start = std::find(vx.ccw.begin(), vx.ccw.end(), entry) - vx.ccw.begin();
      for (std::size_t t = 0; t < vx.ccw.size(); ++t) {
        const int e = vx.ccw[(start + t) % vx.ccw.size()];
        code.push_back(e);
        const int other = ends_[e][0] == v ? ends_[e][1] : ends_[e][0];
        if (!seen[other]) {
          seen[other] = 1;
          queue.emplace_back(other, e);
        }
      }
    }
    code.push_back(-2);
    for (const auto& f : flags_) {
      code.push_back(f.edge);
      code.push_back(f.direction);
      code.push_back(f.value);
    }
    return code;
  }

  bool operator==(const ColoredTree& o) const { return canonical_code() == o.canonical_code(); }

 private:
  /// Drops vertices left with no edges (never the only vertex).
  void compact() {
    std::vector<int> remap(vertices_.size(), -1);
    std::vector<TreeVertex> kept;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (vertices_[v].ccw.empty() && vertices_[v].color != Color::White) continue;
      remap[v] = static_cast<int>(kept.size());
      kept.push_back(std::move(vertices_[v]));
    }
    vertices_ = std::move(kept);
    for (auto& e : ends_)
      if (e[0] >= 0) e = {remap[e[0]], remap[e[1]]};
  }

  int n_ = 0;
  std::vector<TreeVertex> vertices_;
  std::vector<std::array<int, 2>> ends_;
  std::vector<Flag> flags_;
};

namespace detail {

inline std::vector<std::vector<int>> orbits_on(const PermutationOn& p) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(p.perm.size(), 0);
  for (int i : p.domain) {
    if (seen[i]) continue;
    std::vector<int> orb;
    for (int j = i; !seen[j]; j = p.perm(j)) {
      seen[j] = 1;
      orb.push_back(j);
    }
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace detail

/// GJ_A membership for permutations of a common domain A ⊂ ⟨n⟩.
inline bool is_gj_on(const PermutationOn& theta, const PermutationOn& sigma) {
  if (theta.domain != sigma.domain) return false;
  const int m = static_cast<int>(theta.domain.size());
  if (m == 0) return false;
  const PermutationOn prod{theta.perm * sigma.perm, theta.domain};
  return theta.num_orbits() + sigma.num_orbits() == m + 1 && prod.num_orbits() == 1;
}

/// The bipartite planar tree of a GJ pair over its domain: one white vertex
/// per θ-orbit, one black vertex per σ-orbit, edge i joining the two orbits of i.
inline ColoredTree sv_tree(const PermutationOn& theta, const PermutationOn& sigma) {
  if (!is_gj_on(theta, sigma)) throw std::invalid_argument("pair is not Goulden-Jackson");
  ColoredTree t(theta.perm.size());
  for (auto& orb : detail::orbits_on(theta)) t.add_vertex(Color::White, orb);
  for (auto& orb : detail::orbits_on(sigma)) t.add_vertex(Color::Black, orb);
  return t;
}

inline ColoredTree sv_tree(const Permutation& theta, const Permutation& sigma) {
  return sv_tree(on_full_domain(theta), on_full_domain(sigma));
}

/// Recovers (θ_𝔗, σ_𝔗) from the ccw orders.
inline std::pair<PermutationOn, PermutationOn> read_off(const ColoredTree& t) {
  const int n = t.n();
  std::vector<int> th(n), si(n);
  for (int i = 0; i < n; ++i) th[i] = si[i] = i;
  for (const auto& v : t.vertices()) {
    auto& im = v.color == Color::White ? th : si;
    for (std::size_t k = 0; k < v.ccw.size(); ++k) im[v.ccw[k]] = v.ccw[(k + 1) % v.ccw.size()];
  }
  const auto dom = t.edge_labels();
  return {{Permutation(th), dom}, {Permutation(si), dom}};
}

inline Color color_of_value(int g) {
  if (g == 0) return Color::Blue;
  return g < 0 ? Color::Green : Color::Red;
}

/// Paints each σ-orbit vertex blue, green or red for g = 0, −1, +1.
inline ColoredTree color_tree(const Permutation& theta, const Permutation& sigma, const DMotz& g) {
  if (!is_gj(theta, sigma) || !is_dmotz(theta, sigma, g))
    throw std::invalid_argument("triple is not in GJdM");
  ColoredTree t = sv_tree(theta, sigma);
  for (int v = 0; v < static_cast<int>(t.vertices().size()); ++v)
    if (t.vertex(v).color != Color::White) t.set_color(v, color_of_value(g[t.vertex(v).ccw[0]]));
  return t;
}

/// Checks the four-color rules; returns a description of the first failure.
inline std::optional<std::string> coloring_violation(const ColoredTree& t) {
  const int nv = static_cast<int>(t.vertices().size());
  for (int v = 0; v < nv; ++v) {
    const auto& vx = t.vertex(v);
    if (vx.color == Color::Black) return "vertex " + std::to_string(v) + " is unpainted";
    if (vx.color == Color::Green && t.degree(v) != 1) return "green vertex that is not a leaf";
    if (vx.color == Color::Blue && t.degree(v) != 2) return "blue vertex without degree two";
    if (vx.color == Color::White) {
      int red = 0, green = 0;
      for (int e : vx.ccw) {
        const Color c = t.vertex(t.ends(e)[1]).color;
        if (c == Color::White) return "adjacent white vertices";
        red += c == Color::Red;
        green += c == Color::Green;
      }
      if (red != green) return "white vertex with unequal red and green neighbors";
    }
  }
  return std::nullopt;
}

struct GJdMTriple {
  Permutation theta;
  Permutation sigma;
  DMotz g;
};

/// Inverse of color_tree on full-domain trees.
inline GJdMTriple decode_colored(const ColoredTree& t) {
  if (auto why = coloring_violation(t)) throw std::invalid_argument(*why);
  auto [th, si] = read_off(t);
  DMotz g(t.n(), 0);
  for (const auto& v : t.vertices()) {
    if (v.color == Color::White) continue;
    const int val = v.color == Color::Red ? 1 : (v.color == Color::Green ? -1 : 0);
    for (int e : v.ccw) g[e] = val;
  }
  return {th.perm, si.perm, g};
}

/// Maximal runs of green edges, each stored with the first non-green edge
/// following it counterclockwise.
struct Stem {
  int anchor = 0;
  std::vector<int> run;
  bool operator==(const Stem&) const = default;
};

struct SnipResult {
  ColoredTree tree;          ///< SV tree over ⟨n⟩ ∖ X
  std::vector<Stem> stems;   ///< reattachment data
  std::vector<int> removed;  ///< X, sorted
};

/// Cuts off every green leaf with its edge and blackens red vertices. Needs a
/// tree without blue vertices in which each white vertex keeps an edge.
inline SnipResult snip(const ColoredTree& t) {
  if (auto why = coloring_violation(t)) throw std::invalid_argument(*why);
  SnipResult r{t, {}, {}};
  for (const auto& v : t.vertices()) {
    if (v.color == Color::Blue) throw std::invalid_argument("snip needs a tree without blue vertices");
    if (v.color != Color::White) continue;
    const auto& ccw = v.ccw;
    const std::size_t d = ccw.size();
    std::size_t start = d;
    for (std::size_t k = 0; k < d; ++k)
      if (t.vertex(t.ends(ccw[k])[1]).color != Color::Green) {
        start = k;
        break;
      }
    if (start == d) {
      if (d == 0) continue;
      throw std::invalid_argument("white vertex with only green neighbors");
    }
    std::vector<int> run;
    for (std::size_t s = 1; s <= d; ++s) {
      const int e = ccw[(start + s) % d];
      if (t.vertex(t.ends(e)[1]).color == Color::Green) {
        run.push_back(e);
      } else {
        if (!run.empty()) r.stems.push_back({e, run});
        run.clear();
      }
    }
  }
  for (const auto& s : r.stems)
    for (int x : s.run) {
      r.removed.push_back(x);
      r.tree.remove_leaf_edge(x);
    }
  std::sort(r.removed.begin(), r.removed.end());
  for (int v = 0; v < static_cast<int>(r.tree.vertices().size()); ++v)
    if (r.tree.vertex(v).color == Color::Red) r.tree.set_color(v, Color::Black);
  return r;
}

inline ColoredTree unsnip(const SnipResult& r) {
  ColoredTree t = r.tree;
  for (int v = 0; v < static_cast<int>(t.vertices().size()); ++v)
    if (t.vertex(v).color == Color::Black) t.set_color(v, Color::Red);
  for (const auto& s : r.stems) {
    const int w = t.ends(s.anchor)[0];
    for (int x : s.run) t.insert_leaf_edge(w, s.anchor, x, Color::Green);
  }
  return t;
}

/// Labeled mobile: h normalized to min 0; each edge i at a green or blue
/// vertex gets a positive flag h(θ(i)) and a negative flag h(i); each red
/// vertex is labeled h(θ(i)) for an incident i; then all non-white vertices
/// are painted black.
inline ColoredTree mobile(const Permutation& theta, const Permutation& sigma, const DMotz& g) {
  ColoredTree t = color_tree(theta, sigma, g);
  const auto h = antiderivative(theta, sigma, g, HeightNormalization::MinIsZero);
  for (int v = 0; v < static_cast<int>(t.vertices().size()); ++v) {
    const auto& vx = t.vertex(v);
    if (vx.color == Color::White) continue;
    if (vx.color == Color::Red) {
      t.set_label(v, h[theta(vx.ccw[0])]);
    } else {
      for (int e : vx.ccw) {
        t.add_flag({e, +1, h[theta(e)]});
        t.add_flag({e, -1, h[e]});
      }
    }
    t.set_color(v, Color::Black);
  }
  return t;
}

/// Labeled black vertices turn red, unlabeled ones green (degree 1) or blue
/// (degree 2); labels and flags are dropped.
inline ColoredTree colored_from_mobile(const ColoredTree& m) {
  ColoredTree t = m;
  t.clear_flags();
  for (int v = 0; v < static_cast<int>(t.vertices().size()); ++v) {
    const auto& vx = t.vertex(v);
    if (vx.color == Color::White) continue;
    if (vx.color != Color::Black) throw std::invalid_argument("mobile vertex is neither white nor black");
    if (vx.label) {
      t.set_color(v, Color::Red);
      t.set_label(v, std::nullopt);
    } else if (t.degree(v) == 1) {
      t.set_color(v, Color::Green);
    } else if (t.degree(v) == 2) {
      t.set_color(v, Color::Blue);
    } else {
      throw std::invalid_argument("unlabeled black vertex of degree above two");
    }
  }
  return t;
}

/// Smallest value among flags and vertex labels.
inline std::optional<int> mobile_min_label(const ColoredTree& m) {
  std::optional<int> lo;
  auto see = [&](int v) { lo = lo ? std::min(*lo, v) : v; };
  for (const auto& f : m.flags()) see(f.value);
  for (const auto& v : m.vertices())
    if (v.label) see(*v.label);
  return lo;
}

/// {"vertices":[{"id","color","label"}],"edges":[{"label","ends"}],
///  "cyclic_order":{id:[labels]},"flags":[...]}; edge labels 1-based.
inline nlohmann::json to_json(const ColoredTree& t) {
  nlohmann::json j;
  j["n"] = t.n();
  j["vertices"] = nlohmann::json::array();
  j["cyclic_order"] = nlohmann::json::object();
  for (int v = 0; v < static_cast<int>(t.vertices().size()); ++v) {
    const auto& vx = t.vertex(v);
    nlohmann::json jv{{"id", v}, {"color", color_name(vx.color)}};
    jv["label"] = vx.label ? nlohmann::json(*vx.label) : nlohmann::json(nullptr);
    j["vertices"].push_back(jv);
    auto& order = j["cyclic_order"][std::to_string(v)] = nlohmann::json::array();
    for (int e : vx.ccw) order.push_back(e + 1);
  }
  j["edges"] = nlohmann::json::array();
  for (int e : t.edge_labels())
    j["edges"].push_back({{"label", e + 1}, {"ends", {t.ends(e)[0], t.ends(e)[1]}}});
  j["flags"] = nlohmann::json::array();
  for (const auto& f : t.flags())
    j["flags"].push_back({{"edge", f.edge + 1},
                          {"direction", f.direction > 0 ? "positive" : "negative"},
                          {"value", f.value}});
  return j;
}

inline ColoredTree tree_from_json(const nlohmann::json& j) {
  ColoredTree t(j.at("n").get<int>());
  for (const auto& jv : j.at("vertices")) {
    const int id = jv.at("id").get<int>();
    if (id != static_cast<int>(t.vertices().size())) throw std::invalid_argument("vertex ids must be 0..V-1 in order");
    std::vector<int> ccw;
    for (const auto& e : j.at("cyclic_order").at(std::to_string(id))) ccw.push_back(e.get<int>() - 1);
    std::optional<int> label;
    if (jv.contains("label") && !jv.at("label").is_null()) label = jv.at("label").get<int>();
    t.add_vertex(parse_color(jv.at("color").get<std::string>()), ccw, label);
  }
  if (j.contains("flags"))
    for (const auto& f : j.at("flags"))
      t.add_flag({f.at("edge").get<int>() - 1, f.at("direction").get<std::string>() == "positive" ? 1 : -1,
                  f.at("value").get<int>()});
  return t;
}

/// Graphviz rendering; flags appear in the edge label as "+v" / "-v".
inline std::string tree_dot(const ColoredTree& t) {
  std::ostringstream os;
  os << "graph tree {\n  node [style=filled];\n";
  for (int v = 0; v < static_cast<int>(t.vertices().size()); ++v) {
    const auto& vx = t.vertex(v);
    const char* fill = vx.color == Color::White ? "white" : color_name(vx.color);
    os << "  v" << v << " [shape=" << (vx.color == Color::White ? "circle" : "box") << ", fillcolor=" << fill
       << (vx.color == Color::Black ? ", fontcolor=white" : "") << ", label=\""
       << (vx.label ? std::to_string(*vx.label) : "") << "\"];\n";
  }
  for (int e : t.edge_labels()) {
    std::string text = std::to_string(e + 1);
    for (const auto& f : t.flags())
      if (f.edge == e) text += std::string(" ") + (f.direction > 0 ? "+" : "-") + std::to_string(f.value);
    os << "  v" << t.ends(e)[0] << " -- v" << t.ends(e)[1] << " [label=\"" << text << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

/// Relabels a permutation of a domain onto ⟨m⟩ in increasing order.
inline Permutation compress(const PermutationOn& p) {
  const int m = static_cast<int>(p.domain.size());
  std::vector<int> pos(p.perm.size(), -1);
  for (int k = 0; k < m; ++k) pos[p.domain[k]] = k;
  std::vector<int> im(m);
  for (int k = 0; k < m; ++k) im[k] = pos[p.perm(p.domain[k])];
  return Permutation(std::move(im));
}

/// GJdM_n(θ,X): pairs (σ,g) with {g = −1} = X.
inline std::vector<std::pair<Permutation, DMotz>> gjdm_with_green_set(const Permutation& theta,
                                                                      const std::vector<int>& X) {
  std::vector<std::pair<Permutation, DMotz>> out;
  for (const auto& sigma : enumerate_gj(theta))
    for (const auto& g : enumerate_dmotz(theta, sigma)) {
      std::vector<int> minus;
      for (int i = 0; i < theta.size(); ++i)
        if (g[i] == -1) minus.push_back(i);
      if (minus == X) out.emplace_back(sigma, g);
    }
  return out;
}

/// (n/2−1)!/(n/2−ℓ+1)! · ∏ λ_i/2 for Eulerian λ.
inline Integer green_set_count_formula(const NumericalPartition& lambda) {
  const long half = lambda.size() / 2;
  const long ell = lambda.length();
  if (half - ell + 1 < 0) return 0;
  Integer out = factorial(half - 1);
  for (int p : lambda.parts()) out *= p / 2;
  return out / factorial(half - ell + 1);
}

}  // namespace tribkar
