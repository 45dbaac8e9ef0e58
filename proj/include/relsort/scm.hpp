#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "relsort/dag.hpp"
#include "relsort/rng.hpp"

namespace relsort {

/// m x n table of observations; column j holds node j.
struct DataMatrix {
  Eigen::MatrixXd values;

  std::size_t samples() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t variables() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

enum class Regime { raw, sscm, iscm };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::raw: return "raw";
    case Regime::sscm: return "sscm";
    case Regime::iscm: return "iscm";
  }
  return "?";
}

inline Regime parse_regime(const std::string& s) {
  if (s == "raw") return Regime::raw;
  if (s == "sscm") return Regime::sscm;
  if (s == "iscm") return Regime::iscm;
  throw std::invalid_argument("unknown regime '" + s + "' (expected raw, sscm or iscm)");
}

/// Linear additive-Gaussian SCM. weights(i, j) is the coefficient of X_i in
/// the structural equation of X_j and is nonzero exactly on the DAG's edges.
class LinearScm {
 public:
  LinearScm(Dag dag, Eigen::MatrixXd weights, Eigen::VectorXd sigma)
      : dag_(std::move(dag)), weights_(std::move(weights)), sigma_(std::move(sigma)) {
    const auto n = static_cast<Eigen::Index>(dag_.size());
    if (weights_.rows() != n || weights_.cols() != n || sigma_.size() != n)
      throw std::invalid_argument("LinearScm: parameter dimensions do not match the graph");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(sigma_(i) > 0.0) || !std::isfinite(sigma_(i)))
        throw std::invalid_argument("LinearScm: noise scale of node " + std::to_string(i) + " must be positive");
      for (Eigen::Index j = 0; j < n; ++j) {
        const bool edge = dag_.has_edge(static_cast<Node>(i), static_cast<Node>(j));
        if (edge != (weights_(i, j) != 0.0) || !std::isfinite(weights_(i, j)))
          throw std::invalid_argument("LinearScm: weight support differs from the edge set at (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }

  const Dag& dag() const noexcept { return dag_; }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  const Eigen::VectorXd& sigma() const noexcept { return sigma_; }

  /// Population covariance (I - W)^{-T} diag(sigma^2) (I - W)^{-1}.
  Eigen::MatrixXd covariance() const {
    const auto n = weights_.rows();
    const Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(n, n) - weights_).inverse();
    return inv.transpose() * sigma_.array().square().matrix().asDiagonal() * inv;
  }

 private:
  Dag dag_;
  Eigen::MatrixXd weights_;
  Eigen::VectorXd sigma_;
};

/// Edge weights and noise scales drawn independently from Unif(0.5, 1).
/// With `signed_weights` each weight also gets a fair random sign.
inline LinearScm sample_params(const Dag& dag, Rng& rng, bool signed_weights = false) {
  const auto n = static_cast<Eigen::Index>(dag.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : dag.edges()) {
    double value = rng.uniform(0.5, 1.0);
    if (signed_weights && rng.bernoulli(0.5)) value = -value;
    w(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to)) = value;
  }
  Eigen::VectorXd sigma(n);
  for (Eigen::Index j = 0; j < n; ++j) sigma(j) = rng.uniform(0.5, 1.0);
  return LinearScm(dag, std::move(w), std::move(sigma));
}

namespace detail {

inline void standardize_column(Eigen::MatrixXd& x, Eigen::Index j) {
  const auto m = x.rows();
  if (m < 2) throw std::runtime_error("cannot standardize column x" + std::to_string(j) + " with fewer than 2 samples");
  auto col = x.col(j);
  const double mean = col.mean();
  col.array() -= mean;
  const double var = col.squaredNorm() / static_cast<double>(m - 1);
  if (!(var > 0.0)) throw std::runtime_error("column x" + std::to_string(j) + " is constant and cannot be standardized");
  col /= std::sqrt(var);
}

}  // namespace detail

/// Zero sample mean, unit sample variance (denominator m - 1) per column.
inline void standardize(DataMatrix& data) {
  for (Eigen::Index j = 0; j < data.values.cols(); ++j) detail::standardize_column(data.values, j);
}

/// Draws m observations in topological order.
///
/// raw: as generated. sscm: every column standardized after generation.
/// iscm: each variable standardized right after it is generated, before its
/// children consume it.
inline DataMatrix sample_observations(const LinearScm& scm, std::size_t m, Regime regime, Rng& rng) {
  if (m < 1) throw std::invalid_argument("sample_observations needs m >= 1");
  const Dag& g = scm.dag();
  const auto rows = static_cast<Eigen::Index>(m);
  DataMatrix data{Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(g.size()))};
  auto& x = data.values;
  for (Node v : g.topological_order()) {
    const auto j = static_cast<Eigen::Index>(v);
    auto col = x.col(j);
    for (Eigen::Index r = 0; r < rows; ++r) col(r) = scm.sigma()(j) * rng.normal();
    g.parents(v).for_each([&](Node p) {
      const auto i = static_cast<Eigen::Index>(p);
      col += scm.weights()(i, j) * x.col(i);
    });
    if (regime == Regime::iscm) detail::standardize_column(x, j);
  }
  if (regime == Regime::sscm) standardize(data);
  return data;
}

/// Headered CSV (x0,...,x{n-1}) with 17 significant digits.
inline void write_csv(std::ostream& out, const DataMatrix& data) {
  const auto n = data.values.cols();
  for (Eigen::Index j = 0; j < n; ++j) out << (j ? "," : "") << 'x' << j;
  out << '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < data.values.rows(); ++r) {
    for (Eigen::Index j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", data.values(r, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace relsort
