#pragma once

// Shared fixtures and brute-force oracles for the test suites. Nothing here
// reuses the library's closure, d-separation or adjustment code.

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "relsort/dag.hpp"
#include "relsort/rng.hpp"
#include "relsort/samplers.hpp"

namespace relsort::testing {

// Collider A -> C <- B with A=0, B=1, C=2.
inline Dag collider() { return Dag(3, {{0, 2}, {1, 2}}); }

// Chain a -> b -> c.
inline Dag chain3() { return Dag(3, {{0, 1}, {1, 2}}); }

inline Dag complete_dag(std::size_t n) {
  std::vector<Edge> edges;
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Dag(n, edges);
}

// Every labelled DAG on n nodes: each unordered pair is absent, i->j or j->i,
// cyclic assignments are dropped.
inline std::vector<Dag> all_dags(std::size_t n) {
  std::vector<std::pair<Node, Node>> pairs;
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<Dag> out;
  std::vector<int> state(pairs.size(), 0);
  while (true) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (state[k] == 1) edges.push_back({pairs[k].first, pairs[k].second});
      if (state[k] == 2) edges.push_back({pairs[k].second, pairs[k].first});
    }
    try {
      out.emplace_back(n, edges);
    } catch (const std::invalid_argument&) {
    }
    std::size_t k = 0;
    while (k < state.size() && state[k] == 2) state[k++] = 0;
    if (k == state.size()) break;
    ++state[k];
  }
  return out;
}

// Mixed ER / SF corpus with n in [2, max_n] and c in (0, max_c].
inline std::vector<Dag> random_corpus(std::size_t count, std::size_t max_n, double max_c, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Dag> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = 2 + rng.index(max_n - 1);
    if (k % 2 == 0) {
      const double c = rng.uniform(0.1, max_c);
      out.push_back(sample_er_dag(n, c, rng));
    } else {
      const std::size_t c = 1 + rng.index(std::min<std::size_t>(static_cast<std::size_t>(max_c), n - 1));
      out.push_back(sample_sf_dag(n, c, rng));
    }
  }
  return out;
}

inline bool has_edge(const Dag& g, Node a, Node b) { return g.has_edge(a, b); }

// Reachability by explicit DFS over child lists.
inline std::set<Node> reachable_forward(const Dag& g, Node from) {
  std::set<Node> seen{from};
  std::vector<Node> stack{from};
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    for (Node w = 0; w < g.size(); ++w)
      if (has_edge(g, v, w) && seen.insert(w).second) stack.push_back(w);
  }
  return seen;
}

inline std::set<Node> reachable_backward(const Dag& g, Node to) {
  std::set<Node> seen{to};
  std::vector<Node> stack{to};
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    for (Node w = 0; w < g.size(); ++w)
      if (has_edge(g, w, v) && seen.insert(w).second) stack.push_back(w);
  }
  return seen;
}

// rel(y) straight from the definition desc(anc(y)).
inline std::set<Node> relatives_by_definition(const Dag& g, Node y) {
  std::set<Node> out;
  for (Node a : reachable_backward(g, y))
    for (Node d : reachable_forward(g, a)) out.insert(d);
  return out;
}

inline std::set<Node> to_set(const NodeSet& s) {
  auto m = s.members();
  return {m.begin(), m.end()};
}

// All simple paths between x and y in the skeleton, as node sequences.
inline std::vector<std::vector<Node>> simple_paths(const Dag& g, Node x, Node y) {
  std::vector<std::vector<Node>> out;
  std::vector<Node> path{x};
  std::vector<bool> on(g.size(), false);
  on[x] = true;
  std::function<void(Node)> walk = [&](Node v) {
    if (v == y) {
      out.push_back(path);
      return;
    }
    for (Node w = 0; w < g.size(); ++w) {
      if (on[w] || !(has_edge(g, v, w) || has_edge(g, w, v))) continue;
      on[w] = true;
      path.push_back(w);
      walk(w);
      path.pop_back();
      on[w] = false;
    }
  };
  walk(x);
  return out;
}

// Textbook blocking rule for one path given conditioning set z.
inline bool path_blocked(const Dag& g, const std::vector<Node>& path, const std::set<Node>& z) {
  for (std::size_t k = 1; k + 1 < path.size(); ++k) {
    const Node prev = path[k - 1], mid = path[k], next = path[k + 1];
    const bool collider = has_edge(g, prev, mid) && has_edge(g, next, mid);
    if (collider) {
      bool opened = false;
      for (Node d : reachable_forward(g, mid))
        if (z.count(d)) opened = true;
      if (!opened) return true;
    } else if (z.count(mid)) {
      return true;
    }
  }
  return false;
}

inline bool d_separated_by_paths(const Dag& g, Node x, Node y, const std::set<Node>& z) {
  for (const auto& p : simple_paths(g, x, y))
    if (!path_blocked(g, p, z)) return false;
  return true;
}

// Adjustment validity by path enumeration: z may not contain any node on a
// causal path from x to y (other than x) or a descendant of one, and every
// non-causal path must be blocked.
inline bool valid_adjustment_by_paths(const Dag& g, Node x, Node y, const std::set<Node>& z) {
  std::set<Node> forbidden;
  std::vector<std::vector<Node>> non_causal;
  for (const auto& p : simple_paths(g, x, y)) {
    bool causal = true;
    for (std::size_t k = 0; k + 1 < p.size(); ++k)
      if (!has_edge(g, p[k], p[k + 1])) causal = false;
    if (causal) {
      for (std::size_t k = 1; k < p.size(); ++k)
        for (Node d : reachable_forward(g, p[k])) forbidden.insert(d);
    } else {
      non_causal.push_back(p);
    }
  }
  for (Node v : z)
    if (forbidden.count(v)) return false;
  for (const auto& p : non_causal)
    if (!path_blocked(g, p, z)) return false;
  return true;
}

// SID by brute force over paths.
inline std::size_t sid_by_paths(const Dag& truth, const Dag& estimate) {
  std::size_t count = 0;
  for (Node i = 0; i < truth.size(); ++i) {
    std::set<Node> z;
    for (Node p = 0; p < truth.size(); ++p)
      if (has_edge(estimate, p, i)) z.insert(p);
    const auto desc = reachable_forward(truth, i);
    for (Node j = 0; j < truth.size(); ++j) {
      if (j == i) continue;
      const bool wrong = z.count(j) ? desc.count(j) > 0 : !valid_adjustment_by_paths(truth, i, j, z);
      if (wrong) ++count;
    }
  }
  return count;
}

}  // namespace relsort::testing
