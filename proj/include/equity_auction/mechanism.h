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

// Direct single-good mechanisms with an equity level, the hindsight revenue
// benchmark, ex-post regret, and grid/sampled feasibility audits.

#ifndef EQUITY_AUCTION_MECHANISM_H_
#define EQUITY_AUCTION_MECHANISM_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equity_auction/dists.h"
#include "equity_auction/types.h"

namespace equity_auction {

// A deterministic rule pair (allocation, payment) over [0,1]^I.
// Implementations must be pure: equal profiles give equal outcomes.
class Mechanism {
 public:
  virtual ~Mechanism() = default;

  virtual std::string name() const = 0;
  virtual const GroupStructure& groups() const = 0;
  virtual double gamma() const = 0;

  // `values` and `out` have size groups().size().
  virtual void Allocate(std::span<const double> values,
                        std::span<double> out) const = 0;
  virtual void Pay(std::span<const double> values,
                   std::span<double> out) const = 0;

  // Set for mechanisms only defined on a grid (looked up by snapping).
  virtual std::optional<Grid> tabulation_grid() const { return std::nullopt; }

  Outcome Evaluate(const ValueProfile& profile) const;
  Outcome Evaluate(std::span<const double> values) const;
};

// Adapts two callables into a Mechanism; handy for baselines and tests.
class FunctionMechanism : public Mechanism {
 public:
  using Rule = std::function<void(std::span<const double>, std::span<double>)>;

  FunctionMechanism(std::string name, GroupStructure groups, double gamma,
                    Rule allocate, Rule pay);

  std::string name() const override { return name_; }
  const GroupStructure& groups() const override { return groups_; }
  double gamma() const override { return gamma_; }
  void Allocate(std::span<const double> values,
                std::span<double> out) const override;
  void Pay(std::span<const double> values,
           std::span<double> out) const override;

 private:
  std::string name_;
  GroupStructure groups_;
  double gamma_;
  Rule allocate_;
  Rule pay_;
};

// Set-aside split of an allocation, q = (all + gamma minority)/(1+gamma),
// where `all` competes over every bidder and `minority` over the minority
// group only.
struct SetAside {
  std::vector<double> all;
  std::vector<double> minority;
};

// Never allocates, never charges.
FunctionMechanism ZeroMechanism(GroupStructure groups, double gamma);

// (1/(1+gamma)) max_i v_i + (gamma/(1+gamma)) max_{i in minority} v_i.
double HindsightRevenue(const GroupStructure& groups,
                        std::span<const double> values, double gamma);
double HindsightRevenue(const ValueProfile& profile, double gamma);

// Hindsight revenue at the mechanism's gamma minus collected payments.
double ExPostRegret(const Mechanism& mechanism, std::span<const double> values);
double ExPostRegret(const Mechanism& mechanism, const ValueProfile& profile);

struct AuditOptions {
  double step = 0.02;
  double tolerance = 1e-6;
  // Composite Simpson panels per unit length of the own-value axis.
  int simpson_panels = 10000;
  // Profile count of sampled audits (used when I > max_exhaustive_bidders).
  std::int64_t sampled_profiles = 100000;
  // Sampled audits run the payment quadrature on this many profiles (corner
  // profiles first); every sampled profile gets the other checks.
  std::int64_t payment_check_profiles = 2000;
  int max_exhaustive_bidders = 3;
  std::uint64_t seed = 1;
  // Violations beyond this count are tallied but not stored.
  std::int64_t max_recorded = 100000;
};

struct Violation {
  std::string constraint;  // monotonicity, payment_identity, IC, AF, Eq, IR
  int bidder = -1;         // -1 for profile-level constraints
  std::vector<double> profile;
  double magnitude = 0.0;
};

struct AuditReport {
  std::vector<Violation> violations;
  std::int64_t total_violations = 0;
  std::int64_t profiles_checked = 0;
  bool exhaustive = true;

  bool empty() const { return total_violations == 0; }
  std::int64_t Count(const std::string& constraint) const;
  // Header `constraint,profile,magnitude`; per-bidder constraints carry a
  // 1-based `:i` suffix, profiles are `;`-separated.
  std::string ToCsv() const;
};

// Checks on a grid (exhaustive for I <= max_exhaustive_bidders, otherwise
// uniform samples plus all corners): (i) q_i non-decreasing in v_i,
// (ii) m_i(v) = q_i(v) v_i - int_0^{v_i} q_i(x, v_-i) dx by Simpson
// quadrature with jump localization, (iii) AF, (iv) Eq, (v) IR. Tabulated
// mechanisms are audited on their own grid with pairwise IC in place of (ii).
AuditReport AuditFeasibility(const Mechanism& mechanism,
                             const AuditOptions& options = {});

// Composite Simpson rule for a piecewise-smooth integrand on [a, b]. Panels
// whose samples change by more than `jump_threshold` are split at the jump,
// which is located by bisection, so step discontinuities do not degrade
// accuracy.
double PiecewiseSimpson(const std::function<double(double)>& f, double a,
                        double b, int panels, double jump_threshold = 1e-3);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_MECHANISM_H_
