#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "relsort/d_separation.hpp"
#include "relsort/dag.hpp"
#include "relsort/discovery.hpp"

namespace relsort {

namespace detail {

inline void same_size(const Dag& a, const Dag& b, const char* what) {
  if (a.size() != b.size()) throw std::invalid_argument(std::string(what) + ": graphs differ in node count");
}

}  // namespace detail

/// Node pairs whose edge status (absent, i -> j, j -> i) differs.
inline std::size_t shd(const Dag& truth, const EstimatedGraph& estimate) {
  detail::same_size(truth, estimate, "shd");
  std::size_t count = 0;
  for (Node i = 0; i < truth.size(); ++i)
    for (Node j = i + 1; j < truth.size(); ++j)
      if (truth.has_edge(i, j) != estimate.has_edge(i, j) || truth.has_edge(j, i) != estimate.has_edge(j, i)) ++count;
  return count;
}

/// Whether z is a valid adjustment set for the effect of x on y in g.
///
/// z must avoid every descendant of a node on a proper causal path from x
/// to y, and must d-separate x and y once the first edge of each such path
/// is removed.
inline bool valid_adjustment_set(const Dag& g, Node x, Node y, const NodeSet& z) {
  if (x == y) throw std::invalid_argument("valid_adjustment_set: x and y must differ");
  if (z.contains(x) || z.contains(y)) throw std::invalid_argument("valid_adjustment_set: z must exclude x and y");
  const std::size_t n = g.size();
  NodeSet self(n, {x});
  const NodeSet on_causal_paths = (g.descendants(x) - self) & g.ancestors(y);
  NodeSet forbidden(n);
  on_causal_paths.for_each([&](Node w) { forbidden |= g.descendants(w); });
  if (z.intersects(forbidden)) return false;
  if (on_causal_paths.empty()) return d_separated(g, x, y, z);

  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (const auto& e : g.edges())
    if (!(e.from == x && on_causal_paths.contains(e.to))) kept.push_back(e);
  return d_separated(Dag(n, kept), x, y, z);
}

/// Structural intervention distance: ordered pairs (i, j) whose effect
/// would be inferred wrongly by adjusting for the estimated parents of i.
/// When j is itself an estimated parent of i, the estimate claims no
/// effect, which is wrong iff j descends from i in the truth.
inline std::size_t sid(const Dag& truth, const EstimatedGraph& estimate) {
  detail::same_size(truth, estimate, "sid");
  const std::size_t n = truth.size();
  std::size_t count = 0;
  for (Node i = 0; i < n; ++i) {
    const NodeSet& z = estimate.parents(i);
    for (Node j = 0; j < n; ++j) {
      if (j == i) continue;
      const bool wrong = z.contains(j) ? truth.descendants(i).contains(j) : !valid_adjustment_set(truth, i, j, z);
      if (wrong) ++count;
    }
  }
  return count;
}

/// Edges of g pointing backwards in `order`.
inline std::size_t order_divergence(const Dag& g, const Ordering& order) {
  if (order.size() != g.size()) throw std::invalid_argument("order_divergence: ordering size does not match the graph");
  std::size_t count = 0;
  for (const auto& e : g.edges())
    if (order.position(e.from) > order.position(e.to)) ++count;
  return count;
}

}  // namespace relsort
