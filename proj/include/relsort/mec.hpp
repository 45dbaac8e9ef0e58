#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relsort/dag.hpp"
#include "relsort/sortability.hpp"

namespace relsort {

/// Partially directed graph: disjoint sets of directed and undirected edges.
class Pdag {
 public:
  explicit Pdag(std::size_t n) : n_(n), directed_(n, NodeSet(n)), undirected_(n, NodeSet(n)) {}

  std::size_t size() const noexcept { return n_; }

  bool is_directed(Node a, Node b) const { return directed_.at(a).contains(b); }
  bool is_undirected(Node a, Node b) const { return undirected_.at(a).contains(b); }
  bool adjacent(Node a, Node b) const {
    return is_directed(a, b) || is_directed(b, a) || is_undirected(a, b);
  }

  void add_directed(Node a, Node b) {
    check_pair(a, b);
    if (adjacent(a, b)) throw std::invalid_argument("Pdag: nodes are already adjacent");
    directed_[a].insert(b);
  }

  void add_undirected(Node a, Node b) {
    check_pair(a, b);
    if (adjacent(a, b)) throw std::invalid_argument("Pdag: nodes are already adjacent");
    undirected_[a].insert(b);
    undirected_[b].insert(a);
  }

  /// Turns the undirected edge a - b into a -> b.
  void orient(Node a, Node b) {
    if (!is_undirected(a, b)) throw std::logic_error("Pdag: orienting a non-undirected edge");
    undirected_[a].erase(b);
    undirected_[b].erase(a);
    directed_[a].insert(b);
  }

  const NodeSet& directed_out(Node a) const { return directed_.at(a); }
  const NodeSet& undirected_neighbors(Node a) const { return undirected_.at(a); }

  std::size_t undirected_count() const {
    std::size_t total = 0;
    for (const auto& r : undirected_) total += r.size();
    return total / 2;
  }

  std::size_t directed_count() const {
    std::size_t total = 0;
    for (const auto& r : directed_) total += r.size();
    return total;
  }

  std::vector<Edge> directed_edges() const {
    std::vector<Edge> out;
    for (Node a = 0; a < n_; ++a) directed_[a].for_each([&](Node b) { out.push_back({a, b}); });
    return out;
  }

  /// Undirected edges as pairs with from < to.
  std::vector<Edge> undirected_edges() const {
    std::vector<Edge> out;
    for (Node a = 0; a < n_; ++a)
      undirected_[a].for_each([&](Node b) {
        if (a < b) out.push_back({a, b});
      });
    return out;
  }

  friend bool operator==(const Pdag& a, const Pdag& b) {
    return a.n_ == b.n_ && a.directed_ == b.directed_ && a.undirected_ == b.undirected_;
  }

 private:
  void check_pair(Node a, Node b) const {
    if (a >= n_ || b >= n_) throw std::invalid_argument("Pdag: node out of range");
    if (a == b) throw std::invalid_argument("Pdag: self-loops are not allowed");
  }

  std::size_t n_;
  std::vector<NodeSet> directed_;
  std::vector<NodeSet> undirected_;
};

/// Every edge of g, undirected.
inline Pdag skeleton(const Dag& g) {
  Pdag out(g.size());
  for (const auto& e : g.edges()) out.add_undirected(e.from, e.to);
  return out;
}

/// a -> center <- c with a, c non-adjacent; stored with a < c.
struct UnshieldedCollider {
  Node a;
  Node center;
  Node c;
  friend auto operator<=>(const UnshieldedCollider&, const UnshieldedCollider&) = default;
};

/// Sorted by (a, center, c).
inline std::vector<UnshieldedCollider> unshielded_colliders(const Dag& g) {
  std::vector<UnshieldedCollider> out;
  for (Node b = 0; b < g.size(); ++b) {
    const auto pa = g.parents(b).members();
    for (std::size_t i = 0; i < pa.size(); ++i)
      for (std::size_t j = i + 1; j < pa.size(); ++j)
        if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], b, pa[j]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff x -> y is an endpoint edge of some unshielded collider centered at y.
inline bool in_unshielded_collider(const Dag& g, Node x, Node y) {
  if (!g.has_edge(x, y)) return false;
  bool found = false;
  g.parents(y).for_each([&](Node z) {
    if (z != x && !g.adjacent(x, z)) found = true;
  });
  return found;
}

/// Applies Meek's rules 1-4 until no rule fires. Only undirected edges are
/// ever oriented.
inline void meek_closure(Pdag& p) {
  const std::size_t n = p.size();
  bool changed = true;
  auto try_orient = [&](Node a, Node b) {
    // Rule 1: c -> a, a - b, c and b non-adjacent.
    for (Node c = 0; c < n; ++c)
      if (p.is_directed(c, a) && !p.adjacent(c, b)) return true;
    // Rule 2: a -> c -> b.
    for (Node c = 0; c < n; ++c)
      if (p.is_directed(a, c) && p.is_directed(c, b)) return true;
    // Rule 3: a - c -> b, a - d -> b, c and d non-adjacent.
    const auto nb = p.undirected_neighbors(a).members();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Node c = nb[i];
      if (c == b || !p.is_directed(c, b)) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const Node d = nb[j];
        if (d != b && p.is_directed(d, b) && !p.adjacent(c, d)) return true;
      }
    }
    // Rule 4: a - c -> d -> b, c and b non-adjacent, a adjacent to d.
    for (Node c : nb) {
      if (c == b || p.adjacent(c, b)) continue;
      for (Node d = 0; d < n; ++d)
        if (d != b && p.is_directed(c, d) && p.is_directed(d, b) && p.adjacent(a, d)) return true;
    }
    return false;
  };
  while (changed) {
    changed = false;
    for (const auto& e : p.undirected_edges()) {
      if (!p.is_undirected(e.from, e.to)) continue;
      if (try_orient(e.from, e.to)) {
        p.orient(e.from, e.to);
        changed = true;
      } else if (try_orient(e.to, e.from)) {
        p.orient(e.to, e.from);
        changed = true;
      }
    }
  }
}

/// Completed PDAG of g's Markov equivalence class: skeleton, unshielded
/// colliders oriented, then Meek closure.
inline Pdag cpdag(const Dag& g) {
  Pdag p = skeleton(g);
  for (const auto& v : unshielded_colliders(g)) {
    if (p.is_undirected(v.a, v.center)) p.orient(v.a, v.center);
    if (p.is_undirected(v.c, v.center)) p.orient(v.c, v.center);
  }
  meek_closure(p);
  return p;
}

inline constexpr std::size_t kMecEnumerationLimit = 10;

/// All DAGs with g's skeleton and unshielded colliders, by exhaustive
/// orientation search. Edges inside g's colliders are fixed; a free edge
/// may never create a new collider or a cycle.
inline std::vector<Dag> enumerate_mec(const Dag& g) {
  const std::size_t n = g.size();
  if (n > kMecEnumerationLimit)
    throw std::invalid_argument("enumerate_mec is limited to graphs with at most " +
                                std::to_string(kMecEnumerationLimit) + " nodes");

  std::vector<NodeSet> out_edges(n, NodeSet(n));
  std::vector<NodeSet> in_edges(n, NodeSet(n));
  std::vector<Edge> free_edges;
  for (const auto& e : g.edges()) {
    if (in_unshielded_collider(g, e.from, e.to)) {
      out_edges[e.from].insert(e.to);
      in_edges[e.to].insert(e.from);
    } else {
      free_edges.push_back(e);
    }
  }

  auto reaches = [&](Node from, Node to) {
    NodeSet seen(n);
    std::vector<Node> stack{from};
    seen.insert(from);
    while (!stack.empty()) {
      const Node v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      (out_edges[v] - seen).for_each([&](Node w) {
        seen.insert(w);
        stack.push_back(w);
      });
    }
    return false;
  };
  auto creates_collider = [&](Node u, Node v) {
    bool found = false;
    in_edges[v].for_each([&](Node w) {
      if (w != u && !g.adjacent(u, w)) found = true;
    });
    return found;
  };

  std::vector<Dag> members;
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    if (k == free_edges.size()) {
      std::vector<Edge> edges;
      for (Node a = 0; a < n; ++a) out_edges[a].for_each([&](Node b) { edges.push_back({a, b}); });
      members.emplace_back(n, edges);
      return;
    }
    const auto [a, b] = free_edges[k];
    for (const auto [u, v] : {Edge{std::min(a, b), std::max(a, b)}, Edge{std::max(a, b), std::min(a, b)}}) {
      if (creates_collider(u, v) || reaches(v, u)) continue;
      out_edges[u].insert(v);
      in_edges[v].insert(u);
      self(self, k + 1);
      out_edges[u].erase(v);
      in_edges[v].erase(u);
    }
  };
  dfs(dfs, 0);
  return members;
}

/// Witnesses for the argument that a DAG with rel-sortability 1 is the only
/// member of its equivalence class.
struct OrientationWitnessReport {
  struct ColliderWitness {
    Node node;
    UnshieldedCollider collider;
  };
  /// c in C_y (parent of y on no collider into y) with child d in D_y.
  struct RuleThreeWitness {
    Node node;
    Node c;
    Node d;
  };
  std::vector<ColliderWitness> collider_centers;
  std::vector<RuleThreeWitness> rule_three;
  std::vector<Node> missing_collider;              // non-roots that are no collider center
  std::vector<std::pair<Node, Node>> missing_rule_three;  // (y, c) without a d

  bool complete() const noexcept { return missing_collider.empty() && missing_rule_three.empty(); }
};

/// Requires rel-sortability exactly 1; throws std::invalid_argument otherwise.
inline OrientationWitnessReport orientation_witnesses(const Dag& g) {
  if (g.edge_count() == 0 || sortability(g, rel_criterion(g)) != 1.0)
    throw std::invalid_argument("orientation_witnesses requires a DAG with rel-sortability exactly 1");
  OrientationWitnessReport report;
  for (Node y = 0; y < g.size(); ++y) {
    const NodeSet& pa = g.parents(y);
    if (pa.empty()) continue;
    const auto parents = pa.members();
    std::optional<UnshieldedCollider> first;
    for (std::size_t i = 0; i < parents.size() && !first; ++i)
      for (std::size_t j = i + 1; j < parents.size() && !first; ++j)
        if (!g.adjacent(parents[i], parents[j])) first = UnshieldedCollider{parents[i], y, parents[j]};
    if (first)
      report.collider_centers.push_back({y, *first});
    else
      report.missing_collider.push_back(y);

    NodeSet d_set(g.size());
    std::vector<Node> c_set;
    for (Node x : parents) {
      if (in_unshielded_collider(g, x, y))
        d_set.insert(x);
      else
        c_set.push_back(x);
    }
    for (Node c : c_set) {
      const NodeSet hits = g.children(c) & d_set;
      if (hits.empty())
        report.missing_rule_three.emplace_back(y, c);
      else
        report.rule_three.push_back({y, c, hits.members().front()});
    }
  }
  return report;
}

/// Edge list with markers: "i j d" for i -> j, "i j u" for i - j.
inline void write_pdag(std::ostream& out, const Pdag& p) {
  out << p.size() << '\n';
  for (const auto& e : p.directed_edges()) out << e.from << ' ' << e.to << " d\n";
  for (const auto& e : p.undirected_edges()) out << e.from << ' ' << e.to << " u\n";
}

inline Pdag read_pdag(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> Pdag {
    throw std::invalid_argument("pdag line " + std::to_string(line_no) + ": " + what);
  };
  if (!next()) return fail("missing node count");
  long long n = 0;
  if (!(std::istringstream(line) >> n) || n < 1) return fail("node count must be a positive integer");
  Pdag p(static_cast<std::size_t>(n));
  while (next()) {
    std::istringstream fields(line);
    long long i = -1, j = -1;
    std::string kind;
    if (!(fields >> i >> j >> kind) || (kind != "d" && kind != "u")) return fail("expected 'i j d' or 'i j u'");
    if (i < 0 || j < 0 || i >= n || j >= n) return fail("node index out of range");
    if (kind == "d")
      p.add_directed(static_cast<Node>(i), static_cast<Node>(j));
    else
      p.add_undirected(static_cast<Node>(i), static_cast<Node>(j));
  }
  return p;
}

}  // namespace relsort
