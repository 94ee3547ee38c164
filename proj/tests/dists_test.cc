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

#include "equity_auction/dists.h"
#include "equity_auction/types.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

namespace equity_auction {
namespace {

TEST(RegularMarginalTest, UniformVirtualValueIsAffine) {
  const RegularMarginal u = RegularMarginal::Uniform();
  for (double v : {0.0, 0.1, 0.5, 0.73, 1.0}) {
    EXPECT_NEAR(u.VirtualValue(v), 2.0 * v - 1.0, 1e-15);
  }
  EXPECT_NEAR(u.InverseVirtualValue(0.0), 0.5, 1e-12);
  EXPECT_NEAR(u.InverseVirtualValue(-0.4), 0.3, 1e-12);
  EXPECT_EQ(u.InverseVirtualValue(-5.0), 0.0);
  EXPECT_THROW(u.InverseVirtualValue(1.5), std::domain_error);
}

TEST(RegularMarginalTest, Beta22MatchesClosedForms) {
  const RegularMarginal b = RegularMarginal::Beta22();
  for (double v : {0.05, 0.3, 0.5, 0.9}) {
    const double cdf = 3 * v * v - 2 * v * v * v;
    const double pdf = 6 * v * (1 - v);
    EXPECT_NEAR(b.Cdf(v), cdf, 1e-15);
    EXPECT_NEAR(b.Density(v), pdf, 1e-15);
    EXPECT_NEAR(b.VirtualValue(v), v - (1 - cdf) / pdf, 1e-12);
    EXPECT_NEAR(b.Cdf(b.Quantile(cdf)), cdf, 1e-12);
  }
  EXPECT_EQ(b.VirtualValue(1.0), 1.0);
  EXPECT_EQ(b.VirtualValue(0.0), -kInf);
  EXPECT_THROW(b.VirtualValue(1.2), std::domain_error);
}

TEST(RegularMarginalTest, InverseVirtualValueRoundTrips) {
  const RegularMarginal b = RegularMarginal::Beta22();
  for (double y : {-3.0, -0.5, 0.0, 0.25, 0.9, 1.0}) {
    const double v = b.InverseVirtualValue(y);
    EXPECT_NEAR(b.VirtualValue(v), y, 1e-9) << "y=" << y;
  }
}

TEST(RegularMarginalTest, CustomTableRegularityIsEnforced) {
  const RegularMarginal flat = RegularMarginal::CustomTable({2.0, 2.0});
  EXPECT_NEAR(flat.Cdf(0.25), 0.25, 1e-15);
  EXPECT_NEAR(flat.VirtualValue(0.25), -0.5, 1e-12);
  EXPECT_EQ(CheckRegularity(flat), "");
  // A sharp density drop makes the virtual value fall at the bin edge.
  EXPECT_THROW(RegularMarginal::CustomTable({1.0, 1.0, 0.05, 2.0}),
               std::invalid_argument);
  EXPECT_THROW(RegularMarginal::CustomTable({1.0, 0.0}),
               std::invalid_argument);
}

TEST(GridTest, EncodeDecodeRoundTrip) {
  const Grid grid = Grid::FromStep(0.25, 3);
  EXPECT_EQ(grid.size(), 125);
  std::vector<int> coords(3);
  for (std::int64_t k = 0; k < grid.size(); ++k) {
    grid.Decode(k, coords);
    EXPECT_EQ(grid.Encode(coords), k);
  }
  grid.Decode(1, coords);
  EXPECT_EQ(coords, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(grid.Snap(0.125), 0);
  EXPECT_EQ(grid.Snap(0.126), 1);
  EXPECT_THROW(Grid::FromStep(0.3, 2), std::invalid_argument);
  EXPECT_THROW(Grid::FromStep(1.0, 2), std::invalid_argument);
}

TEST(DiscretizeTest, UniformHalfStepMatchesCdfDifferences) {
  const auto joint = JointValueDistribution::Product(
      {RegularMarginal::Uniform(), RegularMarginal::Uniform()});
  const auto table = Discretize(joint, 0.5).table();
  ASSERT_EQ(table.grid.size(), 9);
  // Cell of axis index k is (v_k - 1/2, v_k], the point {0} for k = 0.
  auto axis_mass = [](int k) { return k == 0 ? 0.0 : 0.5; };
  std::vector<int> c(2);
  for (std::int64_t p = 0; p < 9; ++p) {
    table.grid.Decode(p, c);
    EXPECT_NEAR(table.mass[p], axis_mass(c[0]) * axis_mass(c[1]), 1e-15);
  }
}

TEST(DiscretizeTest, CornerAtomsLandOnGridPoints) {
  const auto joint = JointValueDistribution::Contaminated(
      {RegularMarginal::Beta22(), RegularMarginal::Beta22()}, 1.0, 0.5);
  const auto table = Discretize(joint, 0.1).table();
  const std::vector<double> corners = BernoulliCornerMasses(0.5);
  EXPECT_NEAR(table.mass[table.grid.Encode(std::vector<int>{0, 0})],
              corners[0], 1e-15);
  EXPECT_NEAR(table.mass[table.grid.Encode(std::vector<int>{0, 10})],
              corners[1], 1e-15);
  EXPECT_NEAR(table.mass[table.grid.Encode(std::vector<int>{10, 0})],
              corners[2], 1e-15);
  EXPECT_NEAR(table.mass[table.grid.Encode(std::vector<int>{10, 10})],
              corners[3], 1e-15);
}

TEST(DiscretizeTest, MassesSumToOne) {
  for (double eps : {0.0, 0.3, 1.0}) {
    const auto joint = JointValueDistribution::Contaminated(
        {RegularMarginal::Beta22(), RegularMarginal::Uniform()}, eps, -0.5);
    const auto table = Discretize(joint, 0.02).table();
    const double total =
        std::accumulate(table.mass.begin(), table.mass.end(), 0.0);
    EXPECT_NEAR(total, 1.0, 1e-9);
    for (double m : table.mass) EXPECT_GE(m, 0.0);
  }
}

TEST(BernoulliCornerTest, MarginalsAreFairCoinsWithCorrelationRho) {
  for (double rho : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const auto p = BernoulliCornerMasses(rho);
    EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-15);
    EXPECT_NEAR(p[2] + p[3], 0.5, 1e-15);  // P[v1 = 1]
    EXPECT_NEAR(p[1] + p[3], 0.5, 1e-15);  // P[v2 = 1]
    const double cov = p[3] - 0.25;
    EXPECT_NEAR(cov / 0.25, rho, 1e-15);
  }
}

TEST(SampleJointTest, SeededDrawsAreReproducibleAndInRange) {
  const auto joint = JointValueDistribution::Contaminated(
      {RegularMarginal::Beta22(), RegularMarginal::Beta22()}, 0.2, 0.0);
  const ProfileSample a = SampleJoint(joint, 1000, 7);
  const ProfileSample b = SampleJoint(joint, 1000, 7);
  EXPECT_EQ(a.data, b.data);
  int corners = 0;
  for (std::int64_t r = 0; r < a.size(); ++r) {
    for (double v : a.Row(r)) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    const auto row = a.Row(r);
    if ((row[0] == 0.0 || row[0] == 1.0) && (row[1] == 0.0 || row[1] == 1.0)) {
      ++corners;
    }
  }
  // Binomial(1000, 0.2): 200 +- 4 sd.
  EXPECT_NEAR(corners, 200, 51);
}

TEST(SampleJointTest, EmpiricalMeanMatchesBeta22) {
  const auto joint = JointValueDistribution::Product(
      {RegularMarginal::Beta22()});
  const ProfileSample s = SampleJoint(joint, 200000, 3);
  double mean = 0.0, second = 0.0;
  for (double v : s.data) {
    mean += v;
    second += v * v;
  }
  mean /= s.size();
  second /= s.size();
  // Beta(2,2): mean 1/2, E[v^2] = 3/10; sd of the mean is 0.2236/sqrt(n).
  EXPECT_NEAR(mean, 0.5, 0.0025);
  EXPECT_NEAR(second, 0.3, 0.0025);
}

TEST(JointJsonTest, RoundTripPreservesDescription) {
  const auto joint = JointValueDistribution::FromJson(nlohmann::json::parse(
      R"({"marginals":[{"family":"beta22"},{"family":"uniform"}],
          "contamination":{"eps":0.1,"rho":-0.5}})"));
  EXPECT_EQ(joint.kind(), JointValueDistribution::Kind::kContaminated);
  const auto again = JointValueDistribution::FromJson(joint.ToJson());
  EXPECT_EQ(again.Describe(), joint.Describe());
  EXPECT_DOUBLE_EQ(again.eps(), 0.1);
  EXPECT_DOUBLE_EQ(again.rho(), -0.5);
  EXPECT_THROW(JointValueDistribution::FromJson(nlohmann::json::parse(
                   R"({"marginals":[{"family":"lognormal"}]})")),
               std::invalid_argument);
}

TEST(JointValueDistributionTest, RejectsBadContaminationParameters) {
  const std::vector<RegularMarginal> two = {RegularMarginal::Uniform(),
                                            RegularMarginal::Uniform()};
  EXPECT_THROW(JointValueDistribution::Contaminated(two, 1.5, 0.0),
               std::invalid_argument);
  EXPECT_THROW(JointValueDistribution::Contaminated(two, 0.5, 2.0),
               std::invalid_argument);
  EXPECT_THROW(JointValueDistribution::Contaminated(
                   {RegularMarginal::Uniform()}, 0.5, 0.0),
               std::invalid_argument);
}

}  // namespace
}  // namespace equity_auction
