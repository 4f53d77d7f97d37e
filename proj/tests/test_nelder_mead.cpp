#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "polymono/nelder_mead.hpp"

TEST(NelderMead, Quadratic) {
  auto f = [](const std::vector<double>& x) { return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0); };
  const auto r = polymono::nelder_mead(f, {0.0, 0.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], -2.0, 1e-6);
  EXPECT_LT(r.fx, 1e-11);
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  polymono::NelderMeadOptions opts;
  opts.diameter_tol = 1e-10;
  const auto r = polymono::nelder_mead_multistart(f, {{-1.2, 1.0}}, opts);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

TEST(NelderMead, NonsmoothAbsoluteValue) {
  auto f = [](const std::vector<double>& x) { return std::abs(x[0] - 0.3) + 2.0 * std::abs(x[1]); };
  const auto r = polymono::nelder_mead_multistart(f, {{1.0, 1.0}, {-1.0, 0.5}});
  EXPECT_NEAR(r.x[0], 0.3, 1e-6);
  EXPECT_NEAR(r.x[1], 0.0, 1e-6);
}

TEST(NelderMead, OneDimensionAndEvaluationCap) {
  auto f = [](const std::vector<double>& x) { return std::cosh(x[0] - 2.0); };
  const auto r = polymono::nelder_mead(f, {0.0});
  EXPECT_NEAR(r.x[0], 2.0, 1e-6);

  polymono::NelderMeadOptions opts;
  opts.max_evaluations = 10;
  const auto capped = polymono::nelder_mead(f, {0.0}, opts);
  EXPECT_FALSE(capped.converged);
  EXPECT_LE(capped.evaluations, 12);
}
