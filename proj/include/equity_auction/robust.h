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

// Distribution-free regret-based mechanism with logarithmic allocations.

#ifndef EQUITY_AUCTION_ROBUST_H_
#define EQUITY_AUCTION_ROBUST_H_

#include <span>
#include <string>

#include "equity_auction/mechanism.h"
#include "equity_auction/types.h"

namespace equity_auction {

// gamma/(1+gamma) times the top minority value plus 1/(1+gamma) times the
// top majority value. Throws std::invalid_argument if either group is empty.
double Ell(const GroupStructure& groups, std::span<const double> values,
           double gamma);
double Ell(const ValueProfile& profile, double gamma);

// Antiderivative of (1 + log z)^+ vanishing at 0: z log z + 1/e on
// z >= 1/e, zero below.
double ClampedLogIntegral(double z);

class RobustMechanism : public Mechanism {
 public:
  // Throws std::invalid_argument for negative or non-finite gamma.
  RobustMechanism(GroupStructure groups, double gamma);

  std::string name() const override { return "robust"; }
  const GroupStructure& groups() const override { return groups_; }
  double gamma() const override { return gamma_; }

  // If the top majority value strictly exceeds the top minority value, the
  // top minority bidder gets gamma/(1+gamma) (1 + log ell)^+ and the top
  // majority bidder 1/(1+gamma) (1 + log ell)^+. Otherwise the top minority
  // bidder gets (1 + log v)^+ and nobody else is served.
  void Allocate(std::span<const double> values,
                std::span<double> out) const override;

  // Envelope payments from exact antiderivatives.
  void Pay(std::span<const double> values,
           std::span<double> out) const override;

  // Both parts carry the weight (1 + log of the hindsight revenue)^+.
  SetAside Decompose(std::span<const double> values) const;

 private:
  GroupStructure groups_;
  double gamma_;
};

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_ROBUST_H_
