#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "relsort/dag.hpp"
#include "relsort/rng.hpp"

namespace relsort {

struct EdgeProbability {
  double p;
  bool clamped;  // 2c/(n-1) exceeded 1
};

/// ER edge probability 2c/(n-1), clamped to 1.
inline EdgeProbability er_edge_probability(std::size_t n, double c) {
  if (n < 2) throw std::invalid_argument("ER graphs need n >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("ER density c must be positive");
  const double p = 2.0 * c / static_cast<double>(n - 1);
  return p > 1.0 ? EdgeProbability{1.0, true} : EdgeProbability{p, false};
}

struct OrderedDag {
  Dag dag;
  std::vector<Node> order;  // the causal order the edges were drawn along
};

/// ER DAG: a uniformly random causal order, then every forward pair is an
/// edge independently with probability min(2c/(n-1), 1).
inline OrderedDag sample_er_dag_with_order(std::size_t n, double c, Rng& rng) {
  const double p = er_edge_probability(n, c).p;
  auto order = rng.permutation(n);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rng.bernoulli(p)) edges.push_back({order[a], order[b]});
  return {Dag(n, edges), std::move(order)};
}

inline Dag sample_er_dag(std::size_t n, double c, Rng& rng) { return sample_er_dag_with_order(n, c, rng).dag; }

/// Scale-free DAG from Barabási-Albert growth.
///
/// Starts from a star on c+1 nodes; each later node attaches to c distinct
/// existing nodes with probability proportional to degree + 1. The skeleton
/// is then oriented along a uniformly random node order.
inline Dag sample_sf_dag(std::size_t n, std::size_t c, Rng& rng) {
  if (n < 2) throw std::invalid_argument("SF graphs need n >= 2");
  if (c < 1 || c >= n) throw std::invalid_argument("SF attachment count must satisfy 1 <= c < n");

  std::vector<std::pair<Node, Node>> undirected;
  std::vector<std::size_t> degree(n, 0);
  const std::size_t star = c + 1;
  for (Node leaf = 1; leaf < star; ++leaf) {
    undirected.emplace_back(0, leaf);
    ++degree[0];
    ++degree[leaf];
  }
  std::vector<Node> targets;
  for (Node v = star; v < n; ++v) {
    targets.clear();
    double total = 0.0;
    for (Node u = 0; u < v; ++u) total += static_cast<double>(degree[u] + 1);
    while (targets.size() < c) {
      double draw = rng.uniform(0.0, total);
      Node pick = 0;
      for (; pick + 1 < v; ++pick) {
        draw -= static_cast<double>(degree[pick] + 1);
        if (draw < 0.0) break;
      }
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) targets.push_back(pick);
    }
    for (Node u : targets) {
      undirected.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
  }

  const auto order = rng.permutation(n);
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;
  std::vector<Edge> edges;
  edges.reserve(undirected.size());
  for (auto [a, b] : undirected)
    edges.push_back(position[a] < position[b] ? Edge{a, b} : Edge{b, a});
  return Dag(n, edges);
}

/// Possibly cyclic directed graph with a self-loop on every node.
class SummaryGraph {
 public:
  /// `edges` may omit self-loops when `add_self_loops` is set.
  SummaryGraph(std::size_t p, const std::vector<Edge>& edges, bool add_self_loops = false)
      : p_(p), rows_(p, NodeSet(p)) {
    if (p < 2) throw std::invalid_argument("summary graph needs p >= 2");
    for (const auto& e : edges) {
      if (e.from >= p || e.to >= p)
        throw std::invalid_argument("summary edge outside graph of size " + std::to_string(p));
      rows_[e.from].insert(e.to);
    }
    for (Node v = 0; v < p; ++v) {
      if (add_self_loops) rows_[v].insert(v);
      if (!rows_[v].contains(v))
        throw std::invalid_argument("summary graph is missing the self-loop on node " + std::to_string(v));
    }
  }

  /// Directed path 0 -> 1 -> ... -> p-1 plus self-loops.
  static SummaryGraph chain(std::size_t p) {
    std::vector<Edge> edges;
    for (Node v = 0; v + 1 < p; ++v) edges.push_back({v, v + 1});
    return SummaryGraph(p, edges, true);
  }

  std::size_t size() const noexcept { return p_; }
  bool has_edge(Node i, Node j) const { return rows_.at(i).contains(j); }
  const NodeSet& successors(Node i) const { return rows_.at(i); }

  /// Edge count including self-loops.
  std::size_t edge_count() const {
    std::size_t count = 0;
    for (const auto& r : rows_) count += r.size();
    return count;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Node i = 0; i < p_; ++i) rows_[i].for_each([&](Node j) { out.push_back({i, j}); });
    return out;
  }

  friend bool operator==(const SummaryGraph& a, const SummaryGraph& b) { return a.rows_ == b.rows_; }

 private:
  std::size_t p_;
  std::vector<NodeSet> rows_;
};

/// Time-unrolled DAG over horizon T: node v at time t (1-based) has index
/// (t-1)*p + v, and each summary edge (i, j) becomes i^(t) -> j^(t+1).
inline Dag unroll(const SummaryGraph& s, std::size_t horizon) {
  if (horizon <= 1) throw std::invalid_argument("unroll needs a horizon T > 1");
  const std::size_t p = s.size();
  const auto summary_edges = s.edges();
  std::vector<Edge> edges;
  edges.reserve(summary_edges.size() * (horizon - 1));
  for (std::size_t t = 0; t + 1 < horizon; ++t)
    for (const auto& e : summary_edges) edges.push_back({t * p + e.from, (t + 1) * p + e.to});
  return Dag(p * horizon, edges);
}

/// Labels "v^(t)" for the nodes of unroll(s, T); `names` defaults to 0..p-1.
inline std::vector<std::string> unrolled_labels(std::size_t p, std::size_t horizon,
                                                const std::vector<std::string>& names = {}) {
  std::vector<std::string> out;
  out.reserve(p * horizon);
  for (std::size_t t = 1; t <= horizon; ++t)
    for (std::size_t v = 0; v < p; ++v)
      out.push_back((names.empty() ? std::to_string(v) : names.at(v)) + "^(" + std::to_string(t) + ")");
  return out;
}

/// True iff every weakly connected component of s is strongly connected,
/// i.e. i ~> j implies j ~> i for all node pairs.
inline bool strong_and_weak_components_coincide(const SummaryGraph& s) {
  const std::size_t p = s.size();
  std::vector<NodeSet> reach(p, NodeSet(p));
  for (Node i = 0; i < p; ++i) reach[i] = s.successors(i);
  for (Node k = 0; k < p; ++k)
    for (Node i = 0; i < p; ++i)
      if (reach[i].contains(k)) reach[i] |= reach[k];

  // Strong components: mutual reachability classes.
  std::vector<std::size_t> strong(p, p);
  std::size_t strong_count = 0;
  for (Node i = 0; i < p; ++i) {
    if (strong[i] != p) continue;
    for (Node j = i; j < p; ++j)
      if (j == i || (reach[i].contains(j) && reach[j].contains(i))) strong[j] = strong_count;
    ++strong_count;
  }

  // Weak components via union-find over the underlying undirected graph.
  std::vector<std::size_t> parent(p);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : s.edges()) parent[find(e.from)] = find(e.to);
  std::size_t weak_count = 0;
  for (Node v = 0; v < p; ++v)
    if (find(v) == v) ++weak_count;

  return strong_count == weak_count;
}

/// Symmetric summary graph: an undirected ER(p, min(2c/(p-1), 1)) draw with
/// each kept pair added in both directions, plus all self-loops.
inline SummaryGraph sample_symmetric_summary(std::size_t p, double c, Rng& rng) {
  if (p < 2) throw std::invalid_argument("summary graph needs p >= 2");
  const double prob = er_edge_probability(p, c).p;
  std::vector<Edge> edges;
  for (Node i = 0; i < p; ++i)
    for (Node j = i + 1; j < p; ++j)
      if (rng.bernoulli(prob)) {
        edges.push_back({i, j});
        edges.push_back({j, i});
      }
  return SummaryGraph(p, edges, true);
}

}  // namespace relsort
