#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relsort/dag.hpp"
#include "relsort/samplers.hpp"

namespace relsort {

// Edge-list text format: a line holding the node count, then one "i j" line
// per edge i -> j. Summary graphs start with a "# summary" line and list
// their self-loops explicitly.

namespace detail {

inline bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] inline void parse_error(std::size_t line_no, const std::string& what) {
  throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + what);
}

struct RawEdgeList {
  std::size_t n = 0;
  bool summary = false;
  std::vector<Edge> edges;
};

inline RawEdgeList read_raw(std::istream& source) {
  RawEdgeList out;
  std::stringstream in;
  in << source.rdbuf();
  std::string line;
  std::size_t line_no = 0;
  if (in.str().rfind("# summary", 0) == 0) {
    out.summary = true;
    std::getline(in, line);
    line_no = 1;
  }
  if (!next_content_line(in, line, line_no)) parse_error(line_no, "missing node count");
  {
    std::istringstream header(line);
    long long n = 0;
    if (!(header >> n) || n < 1) parse_error(line_no, "node count must be a positive integer");
    out.n = static_cast<std::size_t>(n);
  }
  while (next_content_line(in, line, line_no)) {
    std::istringstream fields(line);
    long long i = -1, j = -1;
    if (!(fields >> i >> j)) parse_error(line_no, "expected two node indices");
    std::string extra;
    if (fields >> extra) parse_error(line_no, "unexpected trailing field '" + extra + "'");
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= out.n || static_cast<std::size_t>(j) >= out.n)
      parse_error(line_no, "node index out of range");
    out.edges.push_back({static_cast<Node>(i), static_cast<Node>(j)});
  }
  return out;
}

}  // namespace detail

/// Throws std::invalid_argument on malformed input, self-loops or cycles.
inline Dag read_dag(std::istream& in) {
  auto raw = detail::read_raw(in);
  if (raw.summary) throw std::invalid_argument("expected a DAG edge list, found a summary graph");
  return Dag(raw.n, raw.edges);
}

inline void write_dag(std::ostream& out, const Dag& g) {
  out << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.from << ' ' << e.to << '\n';
}

inline SummaryGraph read_summary_graph(std::istream& in) {
  auto raw = detail::read_raw(in);
  if (!raw.summary) throw std::invalid_argument("summary graph files must start with '# summary'");
  return SummaryGraph(raw.n, raw.edges);
}

inline void write_summary_graph(std::ostream& out, const SummaryGraph& s) {
  out << "# summary\n" << s.size() << '\n';
  for (const auto& e : s.edges()) out << e.from << ' ' << e.to << '\n';
}

}  // namespace relsort
