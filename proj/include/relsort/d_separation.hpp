#pragma once

#include <stdexcept>
#include <vector>

#include "relsort/dag.hpp"

namespace relsort {

/// True iff x and y are d-separated by z in g.
///
/// Checked as graph separation in the moral graph of the ancestral set of
/// {x, y} ∪ z, with z removed.
inline bool d_separated(const Dag& g, Node x, Node y, const NodeSet& z) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw std::invalid_argument("d_separated: x and y must differ");
  if (z.capacity() != g.size()) throw std::invalid_argument("d_separated: conditioning set capacity mismatch");
  if (z.contains(x) || z.contains(y))
    throw std::invalid_argument("d_separated: x and y must not be in the conditioning set");

  const std::size_t n = g.size();
  NodeSet ancestral = g.ancestors(x) | g.ancestors(y);
  z.for_each([&](Node v) { ancestral |= g.ancestors(v); });

  NodeSet visited(n);
  visited.insert(x);
  std::vector<Node> stack{x};
  while (!stack.empty()) {
    const Node v = stack.back();
    stack.pop_back();
    NodeSet moral = g.parents(v) | (g.children(v) & ancestral);
    (g.children(v) & ancestral).for_each([&](Node c) { moral |= g.parents(c); });
    moral -= z;
    moral -= visited;
    if (moral.contains(y)) return false;
    moral.for_each([&](Node w) {
      visited.insert(w);
      stack.push_back(w);
    });
  }
  return true;
}

}  // namespace relsort
