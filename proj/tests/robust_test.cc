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

#include "equity_auction/robust.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "equity_auction/bounds.h"
#include "equity_auction/mechanism.h"
#include "oracles.h"

namespace equity_auction {
namespace {

using ::equity_auction::testing::OraclePayment;

const GroupStructure kOneOne(1, 1);

TEST(EllTest, WeightedGroupTops) {
  EXPECT_NEAR(Ell(kOneOne, std::vector<double>{0.4, 0.8}, 0.25), 0.72, 1e-15);
  EXPECT_NEAR(Ell(kOneOne, std::vector<double>{0.4, 0.8}, 0.0), 0.8, 1e-15);
  EXPECT_NEAR(Ell(kOneOne, std::vector<double>{0.55, 0.55}, 3.0), 0.55,
              1e-15);
  EXPECT_THROW(Ell(GroupStructure(2, 0), std::vector<double>{0.1, 0.2}, 1.0),
               std::invalid_argument);
}

TEST(RobustAllocateTest, MajorityLeadsExample) {
  const RobustMechanism mech(kOneOne, 0.25);
  std::vector<double> q(2);
  mech.Allocate(std::vector<double>{0.4, 0.8}, q);
  // Long-double evaluation of (1 + log 0.72) split 1:4.
  const long double w = 1.0L + std::log(0.72L);
  EXPECT_NEAR(q[0], static_cast<double>(w * 0.2L), 1e-15);
  EXPECT_NEAR(q[1], static_cast<double>(w * 0.8L), 1e-15);
  EXPECT_NEAR(q[0], 0.134299, 1e-6);
  EXPECT_NEAR(q[1], 0.537197, 1e-6);
}

TEST(RobustAllocateTest, MinorityLeadsAndClampCases) {
  const RobustMechanism mech(GroupStructure(1, 2), 2.0);
  std::vector<double> q(3);
  mech.Allocate(std::vector<double>{1.0, 0.6, 0.9}, q);
  EXPECT_EQ(q, (std::vector<double>{1.0, 0.0, 0.0}));
  // Tie between group tops follows the minority branch.
  mech.Allocate(std::vector<double>{0.7, 0.7, 0.2}, q);
  EXPECT_NEAR(q[0], 1.0 + std::log(0.7), 1e-15);
  EXPECT_EQ(q[1], 0.0);
  // ell below 1/e clamps to zero.
  mech.Allocate(std::vector<double>{0.05, 0.3, 0.2}, q);
  EXPECT_EQ(q, (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(RobustPayTest, SingleBidderAtOneCollectsOneMinusInverseE) {
  const RobustMechanism mech(GroupStructure(1, 0), 0.5);
  std::vector<double> m(1);
  mech.Pay(std::vector<double>{1.0}, m);
  EXPECT_NEAR(m[0], 1.0 - kInvE, 1e-15);
}

TEST(RobustPayTest, ExampleProfileMatchesQuadrature) {
  const RobustMechanism mech(kOneOne, 0.25);
  const std::vector<double> v = {0.4, 0.8};
  std::vector<double> m(2);
  mech.Pay(v, m);
  EXPECT_NEAR(m[0], OraclePayment(mech, v, 0), 1e-9);
  EXPECT_NEAR(m[1], OraclePayment(mech, v, 1), 1e-9);
  // Hindsight revenue 0.72 minus the collected payments.
  EXPECT_NEAR(ExPostRegret(mech, v), 0.72 - m[0] - m[1], 1e-15);
}

TEST(RobustPayTest, NonTopBiddersPayNothing) {
  const RobustMechanism mech(GroupStructure(2, 2), 1.0);
  std::vector<double> m(4);
  mech.Pay(std::vector<double>{0.5, 0.9, 0.3, 0.95}, m);
  EXPECT_EQ(m[0], 0.0);
  EXPECT_EQ(m[2], 0.0);
  EXPECT_GT(m[1], 0.0);
  EXPECT_GT(m[3], 0.0);
}

TEST(RobustPropertyTest, ClosedFormPaymentsMatchQuadrature) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const GroupStructure groups(1 + t % 2, (t / 2) % 3);
    const double gamma = (t % 5 == 0) ? 0.0 : 5.0 * unit(rng);
    const RobustMechanism mech(groups, gamma);
    std::vector<double> v(groups.size()), q(groups.size()), m(groups.size());
    for (double& x : v) x = unit(rng);
    mech.Allocate(v, q);
    mech.Pay(v, m);
    for (int i = 0; i < groups.size(); ++i) {
      // Zero allocation at v_i means zero allocation below it.
      if (q[i] == 0.0) {
        ASSERT_EQ(m[i], 0.0);
        continue;
      }
      ASSERT_NEAR(m[i], OraclePayment(mech, v, i), 1e-9)
          << "t=" << t << " bidder=" << i;
    }
  }
}

TEST(RobustPropertyTest, MonotoneTotalAndEquity) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const GroupStructure groups(2, 1);
  for (int t = 0; t < 10000; ++t) {
    const double gamma = 4.0 * unit(rng);
    const RobustMechanism mech(groups, gamma);
    std::vector<double> v(3), q(3), q_low(3);
    for (double& x : v) x = unit(rng);
    mech.Allocate(v, q);

    const double top_min = std::max(v[0], v[1]);
    const bool majority_leads = v[2] > top_min;
    const double benchmark = HindsightRevenue(groups, v, gamma);
    const double total = q[0] + q[1] + q[2];
    ASSERT_NEAR(total, std::max(0.0, 1.0 + std::log(benchmark)), 1e-12);
    ASSERT_LE(total, 1.0 + 1e-15);
    if (majority_leads) {
      ASSERT_NEAR(q[0] + q[1], gamma * q[2], 1e-12);
    } else {
      ASSERT_EQ(q[2], 0.0);
    }

    const int i = t % 3;
    v[i] *= unit(rng);
    mech.Allocate(v, q_low);
    ASSERT_GE(q[i], q_low[i]);
  }
}

TEST(RobustDecomposeTest, RecompositionAndNamedProfiles) {
  const RobustMechanism mech(kOneOne, 0.25);
  SetAside split = mech.Decompose(std::vector<double>{0.4, 0.8});
  const double w = 1.0 + std::log(0.72);
  EXPECT_NEAR(split.all[1], w, 1e-15);
  EXPECT_EQ(split.all[0], 0.0);
  EXPECT_NEAR(split.minority[0], w, 1e-15);
  EXPECT_EQ(split.minority[1], 0.0);

  split = mech.Decompose(std::vector<double>{0.9, 0.5});
  EXPECT_NEAR(split.all[0], 1.0 + std::log(0.9), 1e-15);
  EXPECT_EQ(split.all, split.minority);

  split = mech.Decompose(std::vector<double>{0.1, 0.3});
  EXPECT_EQ(split.all, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(split.minority, (std::vector<double>{0.0, 0.0}));

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const GroupStructure groups(2, 2);
  for (int t = 0; t < 2000; ++t) {
    const double gamma = 4.0 * unit(rng);
    const RobustMechanism robust(groups, gamma);
    std::vector<double> v(4), q(4);
    for (double& x : v) x = unit(rng);
    robust.Allocate(v, q);
    const SetAside parts = robust.Decompose(v);
    for (int i = 0; i < 4; ++i) {
      EXPECT_DOUBLE_EQ(parts.all[i] / (1.0 + gamma) +
                           gamma * parts.minority[i] / (1.0 + gamma),
                       q[i]);
    }
  }
}

TEST(RobustRegretTest, GridRegretWithinTheoreticalBracket) {
  for (double gamma : {0.0, 0.25, 1.0, 4.0}) {
    const RobustMechanism mech(kOneOne, gamma);
    const Grid grid = Grid::FromStep(0.005, 2);
    std::vector<double> v(2);
    double worst = -kInf;
    for (std::int64_t p = 0; p < grid.size(); ++p) {
      grid.Point(p, v);
      const double regret = ExPostRegret(mech, v);
      ASSERT_GE(regret, -1e-9);
      worst = std::max(worst, regret);
    }
    EXPECT_LE(worst, Theta(gamma) + 1e-4) << "gamma=" << gamma;
    EXPECT_GE(worst, kInvE - 1e-4) << "gamma=" << gamma;
  }
}

TEST(RobustAuditTest, QuarterEquityIsFeasible) {
  const RobustMechanism mech(kOneOne, 0.25);
  const AuditReport report = AuditFeasibility(mech);
  EXPECT_TRUE(report.empty()) << report.ToCsv().substr(0, 500);
}

}  // namespace
}  // namespace equity_auction
