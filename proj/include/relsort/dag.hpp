#pragma once

#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relsort/node_set.hpp"

namespace relsort {

struct Edge {
  Node from;
  Node to;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable directed acyclic graph over nodes 0..n-1.
///
/// Parent and child rows, a topological order and the full reachability
/// closure are computed once at construction, so a Dag can be shared
/// between threads freely. Ancestors and descendants include the node
/// itself; parents and children do not.
class Dag {
 public:
  /// Empty graph on n nodes.
  explicit Dag(std::size_t n) : Dag(n, {}) {}

  /// Throws std::invalid_argument on self-loops, out-of-range endpoints or
  /// directed cycles. Duplicate edges are merged.
  Dag(std::size_t n, const std::vector<Edge>& edges) : n_(n) {
    if (n == 0) throw std::invalid_argument("Dag needs at least one node");
    parents_.assign(n, NodeSet(n));
    children_.assign(n, NodeSet(n));
    for (const auto& e : edges) {
      if (e.from >= n || e.to >= n)
        throw std::invalid_argument("edge " + std::to_string(e.from) + "->" +
                                    std::to_string(e.to) + " outside graph of size " +
                                    std::to_string(n));
      if (e.from == e.to)
        throw std::invalid_argument("self-loop on node " + std::to_string(e.from));
      children_[e.from].insert(e.to);
      parents_[e.to].insert(e.from);
    }
    for (const auto& row : children_) edge_count_ += row.size();
    build_order();
    build_closure();
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool has_edge(Node from, Node to) const {
    check_node(from);
    check_node(to);
    return children_[from].contains(to);
  }

  bool adjacent(Node a, Node b) const { return has_edge(a, b) || has_edge(b, a); }

  /// All edges, sorted by (from, to).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Node i = 0; i < n_; ++i) children_[i].for_each([&](Node j) { out.push_back({i, j}); });
    return out;
  }

  const NodeSet& parents(Node y) const {
    check_node(y);
    return parents_[y];
  }

  const NodeSet& children(Node x) const {
    check_node(x);
    return children_[x];
  }

  const NodeSet& ancestors(Node y) const {
    check_node(y);
    return ancestors_[y];
  }

  const NodeSet& descendants(Node x) const {
    check_node(x);
    return descendants_[x];
  }

  /// Ancestors of y that have no parents.
  NodeSet roots(Node y) const {
    check_node(y);
    NodeSet out(n_);
    ancestors_[y].for_each([&](Node a) {
      if (parents_[a].empty()) out.insert(a);
    });
    return out;
  }

  /// desc(anc(y)). Every ancestor descends from a root ancestor, so the
  /// union only needs to run over roots(y).
  NodeSet relatives(Node y) const {
    check_node(y);
    NodeSet out(n_);
    ancestors_[y].for_each([&](Node a) {
      if (parents_[a].empty()) out |= descendants_[a];
    });
    return out;
  }

  /// Kahn's algorithm, smallest available index first.
  const std::vector<Node>& topological_order() const noexcept { return order_; }

  /// Position of each node in topological_order().
  const std::vector<std::size_t>& topological_position() const noexcept { return position_; }

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.n_ == b.n_ && a.children_ == b.children_;
  }

  void check_node(Node v) const {
    if (v >= n_)
      throw std::invalid_argument("node " + std::to_string(v) + " out of range for graph of size " +
                                  std::to_string(n_));
  }

 private:
  void build_order() {
    std::vector<std::size_t> indegree(n_);
    for (Node v = 0; v < n_; ++v) indegree[v] = parents_[v].size();
    std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
    for (Node v = 0; v < n_; ++v)
      if (indegree[v] == 0) ready.push(v);
    order_.reserve(n_);
    while (!ready.empty()) {
      const Node v = ready.top();
      ready.pop();
      order_.push_back(v);
      children_[v].for_each([&](Node c) {
        if (--indegree[c] == 0) ready.push(c);
      });
    }
    if (order_.size() != n_) throw std::invalid_argument("graph contains a directed cycle");
    position_.assign(n_, 0);
    for (std::size_t k = 0; k < n_; ++k) position_[order_[k]] = k;
  }

  void build_closure() {
    ancestors_.assign(n_, NodeSet(n_));
    descendants_.assign(n_, NodeSet(n_));
    for (Node v : order_) {
      ancestors_[v].insert(v);
      parents_[v].for_each([&](Node p) { ancestors_[v] |= ancestors_[p]; });
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const Node v = *it;
      descendants_[v].insert(v);
      children_[v].for_each([&](Node c) { descendants_[v] |= descendants_[c]; });
    }
  }

  std::size_t n_;
  std::size_t edge_count_ = 0;
  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
  std::vector<NodeSet> ancestors_;
  std::vector<NodeSet> descendants_;
  std::vector<Node> order_;
  std::vector<std::size_t> position_;
};

}  // namespace relsort
