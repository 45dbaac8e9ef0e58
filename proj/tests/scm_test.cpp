#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relsort/scm.hpp"
#include "support.hpp"

namespace relsort {
namespace {

Eigen::MatrixXd sample_covariance(const DataMatrix& d) {
  const Eigen::MatrixXd centered = d.values.rowwise() - d.values.colwise().mean();
  return centered.transpose() * centered / static_cast<double>(d.values.rows() - 1);
}

LinearScm chain_scm(double w, double sigma_x = 1.0, double sigma_y = 1.0) {
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(2, 2);
  weights(0, 1) = w;
  return LinearScm(Dag(2, {{0, 1}}), weights, Eigen::Vector2d(sigma_x, sigma_y));
}

TEST(LinearScm, ValidatesSupportAndScales) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 2);
  EXPECT_THROW(LinearScm(Dag(2, {{0, 1}}), w, Eigen::Vector2d(1, 1)), std::invalid_argument);
  w(1, 0) = 0.7;
  EXPECT_THROW(LinearScm(Dag(2, {{0, 1}}), w, Eigen::Vector2d(1, 1)), std::invalid_argument);
  EXPECT_THROW(chain_scm(0.5, 0.0, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(chain_scm(0.5));
}

TEST(SampleParams, EmptyGraph) {
  Rng rng(1);
  const auto scm = sample_params(Dag(4), rng);
  EXPECT_TRUE(scm.weights().isZero());
  for (Eigen::Index j = 0; j < 4; ++j) {
    EXPECT_GE(scm.sigma()(j), 0.5);
    EXPECT_LT(scm.sigma()(j), 1.0);
  }
}

TEST(SampleParams, RangesAndSupport) {
  Rng rng(2);
  for (const auto& g : testing::random_corpus(50, 20, 3.0, 2)) {
    const auto scm = sample_params(g, rng);
    for (const auto& e : g.edges()) {
      const double w = scm.weights()(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to));
      EXPECT_GE(w, 0.5);
      EXPECT_LE(w, 1.0);
    }
    EXPECT_GE(scm.sigma().minCoeff(), 0.5);
    EXPECT_LE(scm.sigma().maxCoeff(), 1.0);
  }
}

TEST(SampleParams, SignedWeightsFlag) {
  Rng rng(3);
  const auto scm = sample_params(testing::complete_dag(20), rng, true);
  EXPECT_LT(scm.weights().minCoeff(), -0.5 + 1e-12);
  EXPECT_GT(scm.weights().maxCoeff(), 0.5);
}

// Kolmogorov-Smirnov against Unif(0.5, 1); the 1% critical value is 1.628/sqrt(N).
TEST(SampleParams, WeightsAreUniform) {
  Rng rng(4);
  const Dag g = testing::complete_dag(448);
  const auto scm = sample_params(g, rng);
  std::vector<double> w;
  w.reserve(g.edge_count());
  for (const auto& e : g.edges())
    w.push_back(scm.weights()(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to)));
  std::sort(w.begin(), w.end());
  const double n = static_cast<double>(w.size());
  ASSERT_GE(n, 1e5);
  double d = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double cdf = (w[k] - 0.5) / 0.5;
    d = std::max({d, (k + 1) / n - cdf, cdf - k / n});
  }
  EXPECT_LT(d, 1.628 / std::sqrt(n));
}

TEST(SampleObservations, SingleNodeStdConverges) {
  Rng rng(5);
  const LinearScm scm(Dag(1), Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Constant(1, 0.7));
  constexpr std::size_t m = 100000;
  const auto data = sample_observations(scm, m, Regime::raw, rng);
  const double sd = std::sqrt(sample_covariance(data)(0, 0));
  EXPECT_NEAR(sd, 0.7, 3 * 0.7 / std::sqrt(2.0 * m));
}

TEST(SampleObservations, ChainVariancePropagates) {
  Rng rng(6);
  constexpr double w = 0.8;
  constexpr std::size_t m = 100000;
  const auto data = sample_observations(chain_scm(w), m, Regime::raw, rng);
  const double expected = w * w + 1.0;
  EXPECT_NEAR(sample_covariance(data)(1, 1), expected, 4 * expected * std::sqrt(2.0 / m));
}

TEST(SampleObservations, StandardizedRegimes) {
  Rng rng(7);
  for (Regime regime : {Regime::sscm, Regime::iscm}) {
    const Dag g = sample_er_dag(15, 2.0, rng);
    const auto data = sample_observations(sample_params(g, rng), 1000, regime, rng);
    const Eigen::RowVectorXd mean = data.values.colwise().mean();
    const Eigen::MatrixXd cov = sample_covariance(data);
    for (Eigen::Index j = 0; j < 15; ++j) {
      EXPECT_NEAR(mean(j), 0.0, 1e-9);
      EXPECT_NEAR(cov(j, j), 1.0, 1e-9);
    }
  }
}

TEST(SampleObservations, RawCovarianceMatchesPopulationFormula) {
  const Dag g(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = 0.9;
  w(0, 2) = 0.6;
  w(1, 3) = 0.7;
  w(2, 3) = 0.5;
  const LinearScm scm(g, w, Eigen::Vector4d(1.0, 0.6, 0.8, 0.5));
  const Eigen::MatrixXd pop = scm.covariance();
  // Var(X1) = 0.81 + 0.36 by hand.
  EXPECT_NEAR(pop(1, 1), 0.81 * 1.0 + 0.36, 1e-12);
  Rng rng(8);
  constexpr std::size_t m = 100000;
  const Eigen::MatrixXd est = sample_covariance(sample_observations(scm, m, Regime::raw, rng));
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      const double se = std::sqrt((pop(i, i) * pop(j, j) + pop(i, j) * pop(i, j)) / m);
      EXPECT_NEAR(est(i, j), pop(i, j), 4 * se) << i << "," << j;
    }
}

// With positive weights no cancellation can happen, so the population
// correlation is nonzero exactly between relatives.
TEST(LinearScm, CorrelationSupportEqualsRelatives) {
  Rng rng(9);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& g : testing::all_dags(n)) {
      const Eigen::MatrixXd cov = sample_params(g, rng).covariance();
      for (Node x = 0; x < n; ++x) {
        const NodeSet rel = g.relatives(x);
        for (Node y = 0; y < n; ++y)
          ASSERT_EQ(std::fabs(cov(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y))) > 1e-12, rel.contains(y));
      }
    }
}

LinearScm rescaled(const LinearScm& scm, const Eigen::VectorXd& node_scale, double noise_scale) {
  Eigen::MatrixXd w = scm.weights();
  Eigen::VectorXd s = scm.sigma() * noise_scale;
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    w.col(j) *= node_scale(j);
    s(j) *= node_scale(j);
  }
  return LinearScm(scm.dag(), w, s);
}

TEST(SampleObservations, SscmInvariantToGlobalNoiseScale) {
  Rng rng(10);
  const Dag g = sample_er_dag(10, 2.0, rng);
  const auto scm = sample_params(g, rng);
  Rng a(11), b(11);
  const auto base = sample_observations(scm, 500, Regime::sscm, a);
  const auto scaled = sample_observations(rescaled(scm, Eigen::VectorXd::Ones(10), 3.7), 500, Regime::sscm, b);
  EXPECT_LT((base.values - scaled.values).cwiseAbs().maxCoeff(), 1e-9);
}

// iSCM standardizes each equation's output, so scaling a whole structural
// equation (its weights and its noise) changes nothing downstream.
TEST(SampleObservations, IscmInvariantToPerEquationScale) {
  Rng rng(12);
  const Dag g = sample_er_dag(10, 2.0, rng);
  const auto scm = sample_params(g, rng);
  Eigen::VectorXd scale(10);
  for (Eigen::Index j = 0; j < 10; ++j) scale(j) = rng.uniform(0.1, 10.0);
  Rng a(13), b(13);
  const auto base = sample_observations(scm, 500, Regime::iscm, a);
  const auto scaled = sample_observations(rescaled(scm, scale, 1.0), 500, Regime::iscm, b);
  EXPECT_LT((base.values - scaled.values).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SampleObservations, StandardizingConstantColumnFails) {
  Rng rng(14);
  const auto scm = chain_scm(0.5);
  EXPECT_THROW(sample_observations(scm, 1, Regime::sscm, rng), std::runtime_error);
  DataMatrix constant{Eigen::MatrixXd::Ones(5, 2)};
  try {
    standardize(constant);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("x0"), std::string::npos);
  }
}

TEST(DataMatrixCsv, HeaderAndPrecision) {
  DataMatrix d{Eigen::MatrixXd(1, 2)};
  d.values << 0.1, -2.5;
  std::ostringstream out;
  write_csv(out, d);
  EXPECT_EQ(out.str(), "x0,x1\n0.10000000000000001,-2.5\n");
}

}  // namespace
}  // namespace relsort
