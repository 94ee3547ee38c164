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

// Revenue-optimal equity-constrained mechanism for independent regular
// values. Allocation follows the highest virtual values; payments are the
// envelope payments, computed exactly from the allocation's step structure.

#ifndef EQUITY_AUCTION_STOCHASTIC_H_
#define EQUITY_AUCTION_STOCHASTIC_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "equity_auction/dists.h"
#include "equity_auction/mechanism.h"
#include "equity_auction/types.h"

namespace equity_auction {

// Jump of an own-value step allocation: the allocation rises by `size` at
// own value `at` (infimum of the higher region).
struct AllocationJump {
  double at;
  double size;
};

class StochasticMechanism : public Mechanism {
 public:
  // Throws std::invalid_argument on a marginal count mismatch, negative
  // gamma, or a marginal that fails the regularity check.
  StochasticMechanism(GroupStructure groups, double gamma,
                      std::vector<RegularMarginal> marginals);

  std::string name() const override { return "stochastic"; }
  const GroupStructure& groups() const override { return groups_; }
  double gamma() const override { return gamma_; }
  std::span<const RegularMarginal> marginals() const { return marginals_; }

  // Minority bidder: 1 if top virtual value overall and psi >= 0;
  // gamma/(1+gamma) if top minority, beaten by the top majority virtual
  // value, and max_maj psi + gamma * psi >= 0. Majority bidder:
  // 1/(1+gamma) if top overall and psi + gamma * max_min psi >= 0.
  // Ties go to the smallest index.
  void Allocate(std::span<const double> values,
                std::span<double> out) const override;

  // q_i(v) v_i - sum over jumps t < v_i of size * (v_i - t).
  void Pay(std::span<const double> values,
           std::span<double> out) const override;

  // Jumps of x -> q_i(x, v_-i) on [0,1], in increasing order.
  std::vector<AllocationJump> OwnValueJumps(std::span<const double> values,
                                            int bidder) const;

  // (q_all, q_min) with q = q_all/(1+gamma) + gamma q_min/(1+gamma).
  SetAside Decompose(std::span<const double> values) const;

  void VirtualValues(std::span<const double> values,
                     std::span<double> out) const;

 private:
  GroupStructure groups_;
  double gamma_;
  std::vector<RegularMarginal> marginals_;
};

enum class RevenueEstimator { kClosedGrid, kMonteCarlo };

struct RevenueEstimate {
  double revenue = 0.0;           // E[sum_i m_i]
  double virtual_surplus = 0.0;   // E[sum_i psi_i q_i]
  double revenue_se = 0.0;        // zero for the grid estimator
  double virtual_surplus_se = 0.0;
  double difference_se = 0.0;     // standard error of the paired difference
  double tolerance = 0.0;         // agreement tolerance that was applied
  bool identity_holds = false;
  std::int64_t evaluations = 0;
};

// Expected revenue of the mechanism under the product of its marginals,
// paired with the expected virtual surplus. kMonteCarlo draws `resolution`
// samples and accepts agreement within 3 standard errors of the paired
// difference; kClosedGrid uses a tensor grid of `resolution` quantile
// midpoints per axis and accepts agreement within 2 * I / resolution.
RevenueEstimate ExpectedRevenueStar(const StochasticMechanism& mechanism,
                                    RevenueEstimator estimator,
                                    std::int64_t resolution,
                                    std::uint64_t seed = 1);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_STOCHASTIC_H_
