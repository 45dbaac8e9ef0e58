#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relsort/dag.hpp"
#include "relsort/scm.hpp"
#include "relsort/sortability.hpp"
#include "relsort/stats.hpp"

namespace relsort {

/// Permutation of 0..n-1; position k holds the k-th node in ascending
/// criterion order.
class Ordering {
 public:
  explicit Ordering(std::vector<Node> sequence) : s_(std::move(sequence)), position_(s_.size(), s_.size()) {
    for (std::size_t k = 0; k < s_.size(); ++k) {
      if (s_[k] >= s_.size() || position_[s_[k]] != s_.size())
        throw std::invalid_argument("ordering is not a permutation of 0..n-1");
      position_[s_[k]] = k;
    }
  }

  static Ordering identity(std::size_t n) {
    std::vector<Node> s(n);
    std::iota(s.begin(), s.end(), Node{0});
    return Ordering(std::move(s));
  }

  std::size_t size() const noexcept { return s_.size(); }
  Node operator[](std::size_t k) const { return s_.at(k); }
  std::size_t position(Node v) const { return position_.at(v); }
  const std::vector<Node>& sequence() const noexcept { return s_; }

  friend bool operator==(const Ordering& a, const Ordering& b) { return a.s_ == b.s_; }

 private:
  std::vector<Node> s_;
  std::vector<std::size_t> position_;
};

/// Estimated structures are plain DAGs; acyclicity is enforced on construction.
using EstimatedGraph = Dag;

/// Stable ascending argsort; equal values keep index order.
inline Ordering criterion_order(const NodeCriterion& values) {
  std::vector<Node> s(values.size());
  std::iota(s.begin(), s.end(), Node{0});
  std::stable_sort(s.begin(), s.end(), [&](Node a, Node b) { return values.values[a] < values.values[b]; });
  return Ordering(std::move(s));
}

/// Pearson correlation matrix of the columns.
inline Eigen::MatrixXd correlation_matrix(const DataMatrix& data) {
  const auto m = data.values.rows();
  const auto n = data.values.cols();
  if (m < 2) throw std::invalid_argument("correlation_matrix needs at least 2 samples");
  Eigen::MatrixXd centered = data.values.rowwise() - data.values.colwise().mean();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double norm = centered.col(j).norm();
    if (!(norm > 0.0)) throw std::invalid_argument("correlation_matrix: column x" + std::to_string(j) + " is constant");
    centered.col(j) /= norm;
  }
  Eigen::MatrixXd c = centered.transpose() * centered;
  for (Eigen::Index i = 0; i < n; ++i) {
    c(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::clamp(0.5 * (c(i, j) + c(j, i)), -1.0, 1.0);
      c(i, j) = c(j, i) = v;
    }
  }
  return c;
}

/// Smallest |r| significant at level alpha under the two-sided test whose
/// statistic r * sqrt((m-2) / (1-r^2)) is t-distributed with m-2 degrees
/// of freedom: eps = t / sqrt(m - 2 + t^2).
inline double correlation_threshold(std::size_t m, double alpha) {
  if (m < 4) throw std::invalid_argument("correlation_threshold needs m >= 4");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const double df = static_cast<double>(m - 2);
  const double t = stats::student_t_quantile(1.0 - alpha / 2.0, df);
  return t / std::sqrt(df + t * t);
}

/// Number of entries per column of the correlation matrix with |C_ij| > eps,
/// diagonal included.
inline NodeCriterion estimate_relative_counts(const DataMatrix& data, double alpha) {
  const double eps = correlation_threshold(data.samples(), alpha);
  const Eigen::MatrixXd c = correlation_matrix(data);
  NodeCriterion counts;
  counts.values.reserve(data.variables());
  for (Eigen::Index j = 0; j < c.cols(); ++j)
    counts.values.push_back(static_cast<double>((c.col(j).array().abs() > eps).count()));
  return counts;
}

/// Order by the estimated number of relatives, ascending.
inline Ordering estimate_relative_order(const DataMatrix& data, double alpha) {
  return criterion_order(estimate_relative_counts(data, alpha));
}

struct OlsFit {
  Eigen::VectorXd beta;
  bool ridge = false;  // rank-deficient design, solved with a 1e-10 ridge
};

/// Least squares without intercept.
inline OlsFit ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) throw std::invalid_argument("ols: predictor and target lengths differ");
  OlsFit fit;
  if (x.cols() == 0) return fit;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() == x.cols()) {
    fit.beta = qr.solve(y);
    return fit;
  }
  const auto k = x.cols();
  const Eigen::MatrixXd gram = x.transpose() * x + 1e-10 * Eigen::MatrixXd::Identity(k, k);
  fit.beta = gram.ldlt().solve(x.transpose() * y);
  fit.ridge = true;
  return fit;
}

namespace detail {

// Coordinate descent for ||y - Z g||^2 + lambda ||g||_1 in Gram form,
// warm-started from g. Returns the number of sweeps used.
inline int lasso_descent(const Eigen::MatrixXd& gram, const Eigen::VectorXd& zty, double lambda,
                         Eigen::VectorXd& g, double tol = 1e-8, int max_sweeps = 10000) {
  const auto k = gram.rows();
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (!(gram(i, i) > 0.0)) {
        g(i) = 0.0;
        continue;
      }
      const double partial = zty(i) - gram.row(i).dot(g) + gram(i, i) * g(i);
      const double shrunk = std::copysign(std::max(std::fabs(partial) - 0.5 * lambda, 0.0), partial);
      const double next = shrunk / gram(i, i);
      max_change = std::max(max_change, std::fabs(next - g(i)));
      g(i) = next;
    }
    if (max_change < tol) return sweep;
  }
  return max_sweeps;
}

inline void require_finite(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta_ols) {
  if (!x.allFinite() || !y.allFinite() || !beta_ols.allFinite())
    throw std::invalid_argument("adaptive lasso inputs must be finite");
  if (x.rows() != y.size() || x.cols() != beta_ols.size())
    throw std::invalid_argument("adaptive lasso: dimension mismatch");
}

struct AdaptiveDesign {
  std::vector<Eigen::Index> active;  // predictors with nonzero OLS coefficient
  Eigen::VectorXd scale;             // |beta_ols| on the active set
  Eigen::MatrixXd gram;              // Z^T Z with Z = X_active * diag(scale)
  Eigen::VectorXd zty;
  double yty = 0.0;
};

inline AdaptiveDesign adaptive_design(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                      const Eigen::VectorXd& beta_ols) {
  AdaptiveDesign d;
  for (Eigen::Index i = 0; i < beta_ols.size(); ++i)
    if (beta_ols(i) != 0.0) d.active.push_back(i);
  const auto k = static_cast<Eigen::Index>(d.active.size());
  Eigen::MatrixXd z(x.rows(), k);
  d.scale.resize(k);
  for (Eigen::Index a = 0; a < k; ++a) {
    d.scale(a) = std::fabs(beta_ols(d.active[static_cast<std::size_t>(a)]));
    z.col(a) = x.col(d.active[static_cast<std::size_t>(a)]) * d.scale(a);
  }
  d.gram = z.transpose() * z;
  d.zty = z.transpose() * y;
  d.yty = y.squaredNorm();
  return d;
}

inline Eigen::VectorXd expand(const AdaptiveDesign& d, const Eigen::VectorXd& g, Eigen::Index p) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (std::size_t a = 0; a < d.active.size(); ++a) {
    const auto ai = static_cast<Eigen::Index>(a);
    beta(d.active[a]) = g(ai) * d.scale(ai);
  }
  return beta;
}

}  // namespace detail

/// Weighted L1 fit at a fixed penalty:
/// argmin ||y - X b||^2 + lambda * sum_i |b_i| / |beta_ols_i|.
/// Predictors with beta_ols_i == 0 are held at zero.
inline Eigen::VectorXd adaptive_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                      const Eigen::VectorXd& beta_ols, double lambda) {
  detail::require_finite(x, y, beta_ols);
  if (!(lambda >= 0.0)) throw std::invalid_argument("adaptive lasso penalty must be non-negative");
  const auto d = detail::adaptive_design(x, y, beta_ols);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d.active.size()));
  detail::lasso_descent(d.gram, d.zty, lambda, g);
  return detail::expand(d, g, x.cols());
}

/// Smallest penalty at which adaptive_lasso returns the zero vector.
inline double adaptive_lasso_lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& beta_ols) {
  detail::require_finite(x, y, beta_ols);
  const auto d = detail::adaptive_design(x, y, beta_ols);
  return d.zty.size() == 0 ? 0.0 : 2.0 * d.zty.cwiseAbs().maxCoeff();
}

/// Adaptive lasso with the penalty picked by BIC = m ln(RSS/m) + k ln(m)
/// over 50 log-spaced values in [1e-4 lambda_max, lambda_max]. Ties go to
/// the larger penalty.
inline Eigen::VectorXd adaptive_lasso_bic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                          const Eigen::VectorXd& beta_ols) {
  detail::require_finite(x, y, beta_ols);
  const auto p = x.cols();
  const auto d = detail::adaptive_design(x, y, beta_ols);
  const auto k = static_cast<Eigen::Index>(d.active.size());
  if (k == 0) return Eigen::VectorXd::Zero(p);

  const double m = static_cast<double>(x.rows());
  const double lambda_max = 2.0 * d.zty.cwiseAbs().maxCoeff();
  if (!(lambda_max > 0.0)) return Eigen::VectorXd::Zero(p);

  auto bic = [&](const Eigen::VectorXd& g) {
    const double rss = std::max(d.yty - 2.0 * g.dot(d.zty) + g.dot(d.gram * g), 1e-300 * m);
    const auto nonzero = static_cast<double>((g.array() != 0.0).count());
    return m * std::log(rss / m) + nonzero * std::log(m);
  };

  constexpr int grid = 50;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd best = g;
  double best_score = std::numeric_limits<double>::infinity();
  for (int step = 0; step < grid; ++step) {
    const double lambda = lambda_max * std::pow(1e-4, static_cast<double>(step) / (grid - 1));
    detail::lasso_descent(d.gram, d.zty, lambda, g);
    const double score = bic(g);
    if (score < best_score) {
      best_score = score;
      best = g;
    }
  }
  return detail::expand(d, best, p);
}

/// Regress every variable on its predecessors in `order` (standardized
/// data, OLS then BIC-tuned adaptive lasso); nonzero coefficients become
/// edges predecessor -> target.
inline EstimatedGraph sort_n_regress(const DataMatrix& data, const Ordering& order) {
  const std::size_t n = data.variables();
  if (n < 1) throw std::invalid_argument("sort_n_regress needs at least one variable");
  if (order.size() != n) throw std::invalid_argument("ordering size does not match the data");
  DataMatrix z = data;
  standardize(z);
  std::vector<Edge> edges;
  for (std::size_t j = 1; j < n; ++j) {
    const Node target = order[j];
    Eigen::MatrixXd x(z.values.rows(), static_cast<Eigen::Index>(j));
    for (std::size_t l = 0; l < j; ++l) x.col(static_cast<Eigen::Index>(l)) = z.values.col(static_cast<Eigen::Index>(order[l]));
    const Eigen::VectorXd y = z.values.col(static_cast<Eigen::Index>(target));
    const auto fit = ols(x, y);
    const Eigen::VectorXd beta = adaptive_lasso_bic(x, y, fit.beta);
    for (std::size_t l = 0; l < j; ++l)
      if (beta(static_cast<Eigen::Index>(l)) != 0.0) edges.push_back({order[l], target});
  }
  return EstimatedGraph(n, edges);
}

/// Sort by the estimated number of relatives, then regress in that order.
inline EstimatedGraph rel_sort_n_regress(const DataMatrix& data, double alpha) {
  return sort_n_regress(data, estimate_relative_order(data, alpha));
}

}  // namespace relsort
