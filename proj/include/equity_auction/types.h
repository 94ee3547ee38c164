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

#ifndef EQUITY_AUCTION_TYPES_H_
#define EQUITY_AUCTION_TYPES_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace equity_auction {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kInvE = 0.36787944117144233;  // 1/e

// Partition of the bidders {0, ..., I-1} into a minority block (indices
// [0, num_minority)) followed by a majority block.
class GroupStructure {
 public:
  GroupStructure(int num_minority, int num_majority);

  int num_minority() const { return num_minority_; }
  int num_majority() const { return num_majority_; }
  int size() const { return num_minority_ + num_majority_; }
  bool IsMinority(int bidder) const { return bidder < num_minority_; }

  bool operator==(const GroupStructure&) const = default;

 private:
  int num_minority_;
  int num_majority_;
};

// A point of [0,1]^I tagged with its group structure.
class ValueProfile {
 public:
  ValueProfile(GroupStructure groups, std::vector<double> values);

  const GroupStructure& groups() const { return groups_; }
  std::span<const double> values() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  GroupStructure groups_;
  std::vector<double> values_;
};

// Allocation probabilities and payments for one profile.
struct Outcome {
  std::vector<double> allocation;
  std::vector<double> payment;

  double Revenue() const;
  double MinorityAllocation(const GroupStructure& groups) const;
  double MajorityAllocation(const GroupStructure& groups) const;
};

// Lexicographic arg max (smallest index among maximizers) of `values` over
// the half-open index range [begin, end). Returns -1 for an empty range.
int LexArgMax(std::span<const double> values, int begin, int end);

// Same as LexArgMax restricted to a group's block.
int TopMinority(const GroupStructure& groups, std::span<const double> values);
int TopMajority(const GroupStructure& groups, std::span<const double> values);

// Throws std::domain_error unless every coordinate lies in [0,1] and the
// length matches the group structure.
void CheckProfile(const GroupStructure& groups, std::span<const double> values);

// Shortest round-trippable-enough text for CSV output (12 significant digits).
std::string FormatNumber(double x);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_TYPES_H_
