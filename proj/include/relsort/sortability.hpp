#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relsort/dag.hpp"
#include "relsort/scm.hpp"

namespace relsort {

/// Per-node sorting criterion rho(v).
struct NodeCriterion {
  std::vector<double> values;
  /// Set when a ridge term had to be added to a singular covariance.
  bool regularized = false;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](Node v) const { return values.at(v); }
};

/// Raised for graphs without edges, where sortability is not defined.
class UndefinedSortability : public std::domain_error {
 public:
  UndefinedSortability() : std::domain_error("sortability is undefined for a graph without edges") {}
};

/// Score of a single edge x -> y: 0, 1/2 or 1 for rho(x) >, =, < rho(y).
inline double edge_score(double rho_x, double rho_y) noexcept {
  if (rho_x < rho_y) return 1.0;
  if (rho_x == rho_y) return 0.5;
  return 0.0;
}

/// Mean edge score over all edges of g. Values are compared exactly.
inline double sortability(const Dag& g, const NodeCriterion& rho) {
  if (rho.size() != g.size())
    throw std::invalid_argument("criterion has " + std::to_string(rho.size()) + " entries for a graph of " +
                                std::to_string(g.size()) + " nodes");
  for (double v : rho.values)
    if (!std::isfinite(v)) throw std::invalid_argument("criterion contains a non-finite value");
  if (g.edge_count() == 0) throw UndefinedSortability();
  double total = 0.0;
  for (const auto& e : g.edges()) total += edge_score(rho.values[e.from], rho.values[e.to]);
  return total / static_cast<double>(g.edge_count());
}

/// rho(v) = |rel(v)|.
inline NodeCriterion rel_criterion(const Dag& g) {
  NodeCriterion out;
  out.values.reserve(g.size());
  for (Node v = 0; v < g.size(); ++v) out.values.push_back(static_cast<double>(g.relatives(v).size()));
  return out;
}

/// Sample variance of every column, denominator m - 1.
inline NodeCriterion var_criterion(const DataMatrix& data) {
  const auto m = data.values.rows();
  if (m < 2) throw std::invalid_argument("var_criterion needs at least 2 samples");
  NodeCriterion out;
  out.values.reserve(static_cast<std::size_t>(data.values.cols()));
  for (Eigen::Index j = 0; j < data.values.cols(); ++j) {
    const auto col = data.values.col(j).array();
    out.values.push_back((col - col.mean()).square().sum() / static_cast<double>(m - 1));
  }
  return out;
}

/// R^2 of the least-squares regression (with intercept) of each column on
/// all remaining columns, read off the inverse sample covariance:
/// R^2_j = 1 - 1 / (S_jj * (S^{-1})_jj).
inline NodeCriterion r2_criterion(const DataMatrix& data) {
  const auto m = data.values.rows();
  const auto n = data.values.cols();
  if (m <= n) throw std::invalid_argument("r2_criterion needs more samples than variables");
  NodeCriterion out;
  if (n == 1) {
    out.values = {0.0};
    return out;
  }
  const Eigen::MatrixXd centered = data.values.rowwise() - data.values.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(m - 1);
  for (Eigen::Index j = 0; j < n; ++j)
    if (!(cov(j, j) > 0.0))
      throw std::invalid_argument("r2_criterion: column x" + std::to_string(j) + " is constant");

  Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.rcond() < 1e-12) {
    cov += 1e-8 * Eigen::MatrixXd::Identity(n, n);
    ldlt.compute(cov);
    out.regularized = true;
  }
  const Eigen::MatrixXd precision = ldlt.solve(Eigen::MatrixXd::Identity(n, n));
  out.values.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const double r2 = 1.0 - 1.0 / (cov(j, j) * precision(j, j));
    out.values.push_back(std::clamp(r2, 0.0, 1.0));
  }
  return out;
}

/// Asymptotic lower bound on Pr(s(x, y) = 1) for an ER edge whose
/// endpoints sit at causal-order quantiles q_x < q_y: the chance that y has
/// a root parent ranked strictly between them.
inline double lower_bound_quantile_term(double c, double q_x, double q_y) {
  if (!(c > 0.0)) throw std::invalid_argument("lower_bound_edge: c must be positive");
  if (!(q_x >= 0.0 && q_y <= 1.0)) throw std::invalid_argument("lower_bound_edge: quantiles must lie in [0, 1]");
  if (!(q_x < q_y)) throw std::invalid_argument("lower_bound_edge: requires q_x < q_y");
  return 1.0 - std::exp(std::exp(-2.0 * c * q_y) - std::exp(-2.0 * c * q_x));
}

/// max(1 - exp(e^{-2c q_y} - e^{-2c q_x}), 1/2). The floor of 1/2 is a
/// bound on the expected edge score E[s(x, y)], which never drops below
/// 1/2; it does not bound Pr(s(x, y) = 1), which ties can pull lower.
inline double lower_bound_edge(double c, double q_x, double q_y) {
  return std::max(lower_bound_quantile_term(c, q_x, q_y), 0.5);
}

}  // namespace relsort
