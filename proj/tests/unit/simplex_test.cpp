#include <gtest/gtest.h>

#include <vector>

#include "ofdma/simplex.hpp"

namespace ofdma {
namespace {

using Status = DenseSimplex::Status;

// maximize x + y  s.t.  x + 2y <= 4,  3x + y <= 6  (slacks s1, s2)
DenseSimplex two_constraint_lp() {
  return DenseSimplex(2, 4, {1, 2, 1, 0, 3, 1, 0, 1}, {4, 6}, {1, 1, 0, 0}, {2, 3});
}

TEST(DenseSimplex, SolvesSmallLp) {
  auto lp = two_constraint_lp();
  ASSERT_EQ(lp.optimize(), Status::kOptimal);
  EXPECT_NEAR(lp.objective_value(), 2.8, 1e-12);
  const auto x = lp.primal();
  EXPECT_NEAR(x[0], 1.6, 1e-12);
  EXPECT_NEAR(x[1], 1.2, 1e-12);
  EXPECT_TRUE(lp.is_basic(0));
  EXPECT_FALSE(lp.is_basic(2));
  EXPECT_GE(lp.reduced_cost(2), 0.0);
}

TEST(DenseSimplex, FixAtZeroReoptimizes) {
  auto lp = two_constraint_lp();
  ASSERT_EQ(lp.optimize(), Status::kOptimal);
  ASSERT_EQ(lp.fix_at_zero(0), Status::kOptimal);
  EXPECT_TRUE(lp.is_forbidden(0));
  EXPECT_NEAR(lp.objective_value(), 2.0, 1e-12);
  EXPECT_NEAR(lp.primal()[0], 0.0, 1e-12);
  EXPECT_NEAR(lp.primal()[1], 2.0, 1e-12);
}

TEST(DenseSimplex, AddConstraintCutsOptimum) {
  auto lp = two_constraint_lp();
  ASSERT_EQ(lp.optimize(), Status::kOptimal);
  ASSERT_EQ(lp.add_constraint({1, 1}, 2.5, true), Status::kOptimal);
  EXPECT_EQ(lp.rows(), 3u);
  EXPECT_EQ(lp.cols(), 5u);
  EXPECT_NEAR(lp.objective_value(), 2.5, 1e-12);
  ASSERT_EQ(lp.add_constraint({1}, 1.0, false), Status::kOptimal);
  EXPECT_GE(lp.primal()[0], 1.0 - 1e-12);
  EXPECT_NEAR(lp.objective_value(), 2.5, 1e-12);
}

TEST(DenseSimplex, DetectsInfeasibleRow) {
  auto lp = two_constraint_lp();
  ASSERT_EQ(lp.optimize(), Status::kOptimal);
  EXPECT_EQ(lp.add_constraint({1}, 5.0, false), Status::kInfeasible);
}

TEST(DenseSimplex, FixingEveryUsefulColumnCanBeInfeasible) {
  // x + y = 1 with no slack: forcing both to zero leaves no solution.
  DenseSimplex lp(1, 3, {1, 1, 1}, {1}, {1, 2, -100}, {2});
  ASSERT_EQ(lp.optimize(), Status::kOptimal);
  EXPECT_NEAR(lp.objective_value(), 2.0, 1e-12);
  ASSERT_EQ(lp.fix_at_zero(1), Status::kOptimal);
  EXPECT_NEAR(lp.objective_value(), 1.0, 1e-12);
  ASSERT_EQ(lp.fix_at_zero(0), Status::kOptimal);
  EXPECT_NEAR(lp.objective_value(), -100.0, 1e-12);
  EXPECT_EQ(lp.fix_at_zero(2), Status::kInfeasible);
}

TEST(DenseSimplex, DetectsUnboundedness) {
  // maximize x  s.t.  -x + s = 1
  DenseSimplex lp(1, 2, {-1, 1}, {1}, {1, 0}, {1});
  EXPECT_EQ(lp.optimize(), Status::kUnbounded);
}

TEST(DenseSimplex, SetObjectiveSwitchesOptimum) {
  auto lp = two_constraint_lp();
  ASSERT_EQ(lp.optimize(), Status::kOptimal);
  lp.set_objective({0, 1, 0, 0});
  ASSERT_EQ(lp.optimize(), Status::kOptimal);
  EXPECT_NEAR(lp.objective_value(), 2.0, 1e-12);
}

TEST(DenseSimplex, DegenerateTransportationProblemTerminates) {
  // Three assignment rows with equal costs: heavy degeneracy.
  const std::size_t m = 3;
  const std::size_t n = 9 + m;
  std::vector<double> a(m * n, 0.0);
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      a[i * n + i * 3 + j] = 1.0;
      c[i * 3 + j] = 1.0;
    }
    a[i * n + 9 + i] = 1.0;
    c[9 + i] = 0.0;
  }
  DenseSimplex lp(m, n, a, {1, 1, 1}, c, {9, 10, 11});
  ASSERT_EQ(lp.optimize(), Status::kOptimal);
  EXPECT_NEAR(lp.objective_value(), 3.0, 1e-12);
}

}  // namespace
}  // namespace ofdma
