#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "relsort/discovery.hpp"
#include "relsort/stats.hpp"

namespace relsort {
namespace {

TEST(IncompleteBeta, MatchesBoost) {
  for (double a : {0.5, 1.0, 2.5, 17.0, 4999.0})
    for (double b : {0.5, 1.0, 3.0, 40.0})
      for (double x : {0.0, 1e-6, 0.1, 0.5, 0.77, 0.999, 1.0})
        EXPECT_NEAR(stats::incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-12) << a << " " << b << " " << x;
}

TEST(IncompleteBeta, RejectsBadArguments) {
  EXPECT_THROW(stats::incomplete_beta(0.0, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(stats::incomplete_beta(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST(StudentT, QuantileMatchesBoost) {
  for (double df : {1.0, 2.0, 5.0, 98.0, 9998.0})
    for (double p : {0.001, 0.1, 0.5, 0.9, 0.975, 0.995}) {
      const double expected = boost::math::quantile(boost::math::students_t(df), p);
      EXPECT_NEAR(stats::student_t_quantile(p, df), expected, 1e-9 * std::max(1.0, std::fabs(expected)));
    }
}

TEST(StudentT, CdfIsSymmetric) {
  for (double t : {0.3, 1.0, 4.0}) EXPECT_NEAR(stats::student_t_cdf(t, 7) + stats::student_t_cdf(-t, 7), 1.0, 1e-14);
}

// Reference values from an independent 40-digit incomplete-beta root solve.
TEST(CorrelationThreshold, FrozenValues) {
  EXPECT_NEAR(stats::student_t_quantile(0.975, 9998), 1.9602012873568364, 1e-10);
  EXPECT_NEAR(correlation_threshold(10000, 0.05), 0.019600207396313872, 1e-12);
  EXPECT_NEAR(stats::student_t_quantile(0.975, 2), 4.3026527297494618, 1e-10);
  EXPECT_NEAR(correlation_threshold(4, 0.05), 0.95, 1e-12);
  EXPECT_NEAR(correlation_threshold(100, 0.01), 0.25648345167075289, 1e-12);
}

TEST(CorrelationThreshold, Limits) {
  EXPECT_LT(correlation_threshold(1000, 1.0 - 1e-12), 1e-10);
  EXPECT_THROW(correlation_threshold(3, 0.05), std::invalid_argument);
  EXPECT_THROW(correlation_threshold(100, 0.0), std::invalid_argument);
  EXPECT_THROW(correlation_threshold(100, 1.0), std::invalid_argument);
}

TEST(CorrelationThreshold, InvertsTheTestStatistic) {
  for (std::size_t m : {10u, 200u, 10000u}) {
    const double eps = correlation_threshold(m, 0.05);
    const double stat = eps * std::sqrt((m - 2.0) / (1.0 - eps * eps));
    EXPECT_NEAR(stat, boost::math::quantile(boost::math::students_t(m - 2.0), 0.975), 1e-8);
  }
}

}  // namespace
}  // namespace relsort
