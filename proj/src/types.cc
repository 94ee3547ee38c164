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

#include "equity_auction/types.h"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace equity_auction {

GroupStructure::GroupStructure(int num_minority, int num_majority)
    : num_minority_(num_minority), num_majority_(num_majority) {
  if (num_minority < 1) {
    throw std::invalid_argument("at least one minority bidder is required");
  }
  if (num_majority < 0) {
    throw std::invalid_argument("negative majority count");
  }
}

ValueProfile::ValueProfile(GroupStructure groups, std::vector<double> values)
    : groups_(groups), values_(std::move(values)) {
  CheckProfile(groups_, values_);
}

double Outcome::Revenue() const {
  return std::accumulate(payment.begin(), payment.end(), 0.0);
}

double Outcome::MinorityAllocation(const GroupStructure& groups) const {
  double total = 0.0;
  for (int i = 0; i < groups.num_minority(); ++i) total += allocation[i];
  return total;
}

double Outcome::MajorityAllocation(const GroupStructure& groups) const {
  double total = 0.0;
  for (int i = groups.num_minority(); i < groups.size(); ++i) {
    total += allocation[i];
  }
  return total;
}

int LexArgMax(std::span<const double> values, int begin, int end) {
  int best = -1;
  for (int i = begin; i < end; ++i) {
    if (best < 0 || values[i] > values[best]) best = i;
  }
  return best;
}

int TopMinority(const GroupStructure& groups, std::span<const double> values) {
  return LexArgMax(values, 0, groups.num_minority());
}

int TopMajority(const GroupStructure& groups, std::span<const double> values) {
  return LexArgMax(values, groups.num_minority(), groups.size());
}

void CheckProfile(const GroupStructure& groups,
                  std::span<const double> values) {
  if (static_cast<int>(values.size()) != groups.size()) {
    throw std::domain_error("profile length does not match group structure");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("bidder value outside [0,1]");
    }
  }
}

std::string FormatNumber(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

}  // namespace equity_auction
