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

#include "equity_auction/bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "equity_auction/types.h"

namespace equity_auction {
namespace {

TEST(UStarTest, GammaZeroIsInverseE) {
  EXPECT_NEAR(UStar(0.0), kInvE, 1e-12);
  EXPECT_THROW(UStar(-1.0), std::invalid_argument);
}

TEST(UStarTest, ResidualVanishesAtRoot) {
  for (double gamma : {0.1, 1.0, 10.0, 100.0}) {
    const double u = UStar(gamma);
    EXPECT_GE(u, kInvE);
    EXPECT_LE(u, 1.0);
    EXPECT_LE(std::abs(UStarResidual(gamma, u)), 1e-10) << gamma;
  }
}

TEST(UStarTest, GammaOneMatchesIndependentBisection) {
  auto residual = [](double u) {
    return 0.5 * std::log((1.0 + u) / 2.0) - std::log(u) - 0.5;
  };
  double lo = 1.0 / std::numbers::e, hi = 1.0;
  ASSERT_GT(residual(lo), 0.0);
  ASSERT_LT(residual(hi), 0.0);
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  EXPECT_NEAR(UStar(1.0), lo, 1e-11);
}

TEST(UStarTest, RootMaximizesBoundObjective) {
  for (double gamma : {0.3, 0.91, 2.0, 25.0}) {
    const double at_root = BoundObjective(gamma, UStar(gamma));
    for (int k = 0; k < 256; ++k) {
      const double u = kInvE + (1.0 - kInvE) * k / 255.0;
      EXPECT_GE(at_root, BoundObjective(gamma, u) - 1e-12)
          << "gamma=" << gamma << " u=" << u;
    }
  }
}

TEST(ThetaTest, LimitsAndPeak) {
  EXPECT_NEAR(Theta(0.0), kInvE, 1e-12);
  EXPECT_NEAR(std::numbers::e * Theta(0.0), 1.0, 1e-12);
  EXPECT_NEAR(Theta(1e6), kInvE, 1e-3);
  EXPECT_NEAR(std::numbers::e * Theta(0.91), 1.31, 0.01);
  EXPECT_EQ(BetaStar(0.5), 1.0 / 1.5);
  EXPECT_EQ(BetaStar(3.0), kInvE);
}

TEST(ThetaTest, FactorDecreasesTowardOneForLargeGamma) {
  const double f2 = Bounds(1e2).factor;
  const double f3 = Bounds(1e3).factor;
  const double f4 = Bounds(1e4).factor;
  EXPECT_GT(f2, f3);
  EXPECT_GT(f3, f4);
  EXPECT_GT(f4, 1.0);
}

TEST(FactorCurveTest, LinearCurvePeaksNearPointNineOne) {
  const FactorCurve curve = ComputeFactorCurve(0.0, 10.0, 1001);
  ASSERT_EQ(curve.rows.size(), 1001u);
  EXPECT_NEAR(curve.max_factor, 1.31, 0.01);
  EXPECT_NEAR(curve.argmax_gamma, 0.91, 0.05);
  EXPECT_NEAR(curve.rows.front().factor, 1.0, 1e-12);
  for (const BoundsSummary& row : curve.rows) {
    EXPECT_GE(row.theta, kInvE - 1e-12);
    EXPECT_GE(row.factor, 1.0 - 1e-12);
    EXPECT_LE(row.factor, 1.32);
    EXPECT_NEAR(row.beta_star, std::max(1.0 / (1.0 + row.gamma), kInvE),
                1e-15);
  }
  const std::string csv = curve.ToCsv();
  EXPECT_EQ(csv.rfind("gamma,u_star,beta_star,theta,factor\n", 0), 0u);
}

TEST(FactorCurveTest, MixedSpacingCoversRange) {
  const FactorCurve curve =
      ComputeFactorCurve(0.0, 1000.0, 200, GammaSpacing::kMixed);
  ASSERT_EQ(curve.rows.size(), 200u);
  EXPECT_EQ(curve.rows.front().gamma, 0.0);
  EXPECT_EQ(curve.rows.back().gamma, 1000.0);
  for (std::size_t k = 1; k < curve.rows.size(); ++k) {
    EXPECT_GT(curve.rows[k].gamma, curve.rows[k - 1].gamma);
  }
}

TEST(FactorCurveTest, RejectsBadArguments) {
  EXPECT_THROW(ComputeFactorCurve(0.0, 10.0, 1), std::invalid_argument);
  EXPECT_THROW(ComputeFactorCurve(5.0, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(ComputeFactorCurve(-1.0, 1.0, 10), std::invalid_argument);
}

}  // namespace
}  // namespace equity_auction
