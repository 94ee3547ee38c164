// Copyright 2026 The Equity Auction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "equity_auction/simplex.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

namespace equity_auction {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

TEST(SimplexTest, TwoVariableTextbookProblem) {
  LinearProgram lp(2, 2);
  lp.AddEntry(0, 0, 1.0);
  lp.AddEntry(0, 1, 2.0);
  lp.AddEntry(1, 0, 3.0);
  lp.AddEntry(1, 1, 1.0);
  lp.SetRowBounds(0, -kInfinity, 4.0);
  lp.SetRowBounds(1, -kInfinity, 6.0);
  lp.SetObjective(0, -1.0);
  lp.SetObjective(1, -1.0);
  const LpResult r = SolveLinearProgram(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -14.0 / 5.0, 1e-12);
  EXPECT_NEAR(r.x[0], 8.0 / 5.0, 1e-12);
  EXPECT_NEAR(r.x[1], 6.0 / 5.0, 1e-12);
  EXPECT_NEAR(r.row_dual[0], -2.0 / 5.0, 1e-12);
  EXPECT_NEAR(r.row_dual[1], -1.0 / 5.0, 1e-12);
  EXPECT_TRUE(r.kkt.Within(1e-10));
}

TEST(SimplexTest, FreeColumnsAndEqualityRows) {
  LinearProgram lp(2, 2);
  for (int j = 0; j < 2; ++j) lp.SetColumnBounds(j, -kInfinity, kInfinity);
  lp.AddEntry(0, 0, 1.0);
  lp.AddEntry(0, 1, -1.0);
  lp.SetRowBounds(0, 1.0, 1.0);
  lp.AddEntry(1, 0, 1.0);
  lp.AddEntry(1, 1, 1.0);
  lp.SetRowBounds(1, 3.0, kInfinity);
  lp.SetObjective(0, 1.0);
  lp.SetObjective(1, 1.0);
  const LpResult r = SolveLinearProgram(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 3.0, 1e-12);
  EXPECT_NEAR(r.x[0], 2.0, 1e-12);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);
  EXPECT_TRUE(r.kkt.Within(1e-10));
}

TEST(SimplexTest, DetectsInfeasibility) {
  LinearProgram lp(1, 1);
  lp.SetColumnBounds(0, 0.0, 1.0);
  lp.AddEntry(0, 0, 1.0);
  lp.SetRowBounds(0, 2.0, kInfinity);
  EXPECT_EQ(SolveLinearProgram(lp).status, LpStatus::kInfeasible);
}

TEST(SimplexTest, DetectsUnboundedness) {
  LinearProgram lp(1, 2);
  lp.AddEntry(0, 0, 1.0);
  lp.AddEntry(0, 1, -1.0);
  lp.SetRowBounds(0, -kInfinity, 1.0);
  lp.SetObjective(0, -1.0);
  EXPECT_EQ(SolveLinearProgram(lp).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, HighlyDegenerateVertex) {
  // Many constraints active at the optimum (1, 1).
  const int rows = 40;
  LinearProgram lp(rows, 2);
  for (int i = 0; i < rows; ++i) {
    const double a = 1.0 + i, b = 1.0 + (rows - i);
    lp.AddEntry(i, 0, a);
    lp.AddEntry(i, 1, b);
    lp.SetRowBounds(i, -kInfinity, a + b);
  }
  lp.SetObjective(0, -1.0);
  lp.SetObjective(1, -1.0);
  const LpResult r = SolveLinearProgram(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -2.0, 1e-10);
  EXPECT_TRUE(r.kkt.Within(1e-9));
}

// Random feasible LPs with boxes and mixed row types, certified by the KKT
// residuals recomputed from scratch.
LinearProgram RandomProgram(int rows, int cols, double density,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LinearProgram lp(rows, cols);
  std::vector<double> feasible(cols);
  for (int j = 0; j < cols; ++j) {
    const double kind = unit(rng);
    if (kind < 0.6) {
      lp.SetColumnBounds(j, 0.0, 1.0 + 3.0 * unit(rng));
    } else if (kind < 0.85) {
      lp.SetColumnBounds(j, 0.0, kInfinity);
    } else {
      lp.SetColumnBounds(j, -2.0, 2.0);
    }
    feasible[j] = lp.col_lower()[j] + 0.5 * unit(rng);
    lp.SetObjective(j, unit(rng) - 0.7);
  }
  std::vector<double> activity(rows, 0.0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (unit(rng) < density) {
        const double a = 2.0 * unit(rng) - 0.5;
        lp.AddEntry(i, j, a);
        activity[i] += a * feasible[j];
      }
    }
    const double kind = unit(rng);
    if (kind < 0.7) {
      lp.SetRowBounds(i, -kInfinity, activity[i] + unit(rng));
    } else if (kind < 0.9) {
      lp.SetRowBounds(i, activity[i] - unit(rng), activity[i] + unit(rng));
    } else {
      lp.SetRowBounds(i, activity[i], activity[i]);
    }
  }
  return lp;
}

TEST(SimplexPropertyTest, RandomProgramsSatisfyKkt) {
  std::mt19937_64 rng(17);
  int optimal = 0;
  for (int t = 0; t < 60; ++t) {
    const int rows = 5 + t % 30, cols = 8 + (t * 7) % 40;
    LinearProgram lp = RandomProgram(rows, cols, 0.3, rng);
    const LpResult r = SolveLinearProgram(lp);
    ASSERT_TRUE(r.status == LpStatus::kOptimal ||
                r.status == LpStatus::kUnbounded)
        << "t=" << t << " status=" << ToString(r.status);
    if (r.status != LpStatus::kOptimal) continue;
    ++optimal;
    EXPECT_TRUE(r.kkt.Within(1e-9))
        << "t=" << t << " primal=" << r.kkt.primal << " dual=" << r.kkt.dual
        << " comp=" << r.kkt.complementarity;
  }
  EXPECT_GT(optimal, 30);
}

TEST(SimplexPropertyTest, LargerSparseProgram) {
  std::mt19937_64 rng(3);
  LinearProgram lp = RandomProgram(400, 600, 0.02, rng);
  // Bounded objective: all columns get finite boxes.
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (!std::isfinite(lp.col_upper()[j])) lp.SetColumnBounds(j, 0.0, 5.0);
  }
  const LpResult r = SolveLinearProgram(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_TRUE(r.kkt.Within(1e-9));
}

TEST(SimplexTest, WarmStartReachesSameOptimum) {
  std::mt19937_64 rng(29);
  LinearProgram lp = RandomProgram(120, 160, 0.05, rng);
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (!std::isfinite(lp.col_upper()[j])) lp.SetColumnBounds(j, 0.0, 5.0);
  }
  const LpResult first = SolveLinearProgram(lp);
  ASSERT_EQ(first.status, LpStatus::kOptimal);
  std::uniform_real_distribution<double> unit(-0.01, 0.01);
  for (int j = 0; j < lp.num_cols(); ++j) {
    lp.SetObjective(j, lp.objective()[j] + unit(rng));
  }
  const LpResult cold = SolveLinearProgram(lp);
  const LpResult warm = SolveLinearProgram(lp, {}, &first.basis);
  ASSERT_EQ(cold.status, LpStatus::kOptimal);
  ASSERT_EQ(warm.status, LpStatus::kOptimal);
  EXPECT_NEAR(warm.objective, cold.objective, 1e-9);
  EXPECT_LE(warm.iterations, cold.iterations);
  EXPECT_TRUE(warm.kkt.Within(1e-9));
}

TEST(SimplexTest, BlandRuleAloneSolves) {
  std::mt19937_64 rng(31);
  LinearProgram lp = RandomProgram(30, 40, 0.2, rng);
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (!std::isfinite(lp.col_upper()[j])) lp.SetColumnBounds(j, 0.0, 5.0);
  }
  SimplexOptions bland;
  bland.stall_limit = 0;
  bland.perturbation = 0.0;
  const LpResult a = SolveLinearProgram(lp, bland);
  const LpResult b = SolveLinearProgram(lp);
  ASSERT_EQ(a.status, LpStatus::kOptimal);
  EXPECT_NEAR(a.objective, b.objective, 1e-9);
  EXPECT_GT(a.bland_iterations, 0);
}

TEST(CheckKktTest, FlagsWrongSignedDuals) {
  LinearProgram lp(1, 1);
  lp.AddEntry(0, 0, 1.0);
  lp.SetRowBounds(0, -kInfinity, 1.0);
  lp.SetObjective(0, -1.0);
  // x = 1 with y = -1 is optimal; y = +1 has the wrong sign for a <= row.
  EXPECT_TRUE(CheckKkt(lp, {1.0}, {-1.0}).Within(1e-12));
  EXPECT_GT(CheckKkt(lp, {1.0}, {1.0}).dual, 0.5);
  EXPECT_GT(CheckKkt(lp, {0.5}, {-1.0}).complementarity, 0.4);
  EXPECT_GT(CheckKkt(lp, {1.5}, {-1.0}).primal, 0.4);
}

TEST(LinearProgramTest, TriplesDumpIsZeroBased) {
  LinearProgram lp(2, 2);
  lp.AddEntry(1, 0, 2.5);
  EXPECT_EQ(lp.ToTriples(), "row,col,coeff\n1,0,2.5\n");
  EXPECT_THROW(lp.AddEntry(2, 0, 1.0), std::out_of_range);
}

}  // namespace
}  // namespace equity_auction
