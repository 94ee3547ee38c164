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

// Grid mechanism-design LPs and the tabulated mechanisms they produce.
//
// Variables are q_i(v) in [0,1] and free m_i(v) for every grid profile v and
// bidder i. The objective maximizes sum_v p(v) sum_i m_i(v) subject to IC
// along each own-value axis, IR, AF and either per-profile or aggregated
// equity. The program is stored in minimization form.

#ifndef EQUITY_AUCTION_LP_H_
#define EQUITY_AUCTION_LP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equity_auction/dists.h"
#include "equity_auction/mechanism.h"
#include "equity_auction/simplex.h"
#include "equity_auction/types.h"

namespace equity_auction {

enum class EquityMode { kExPost, kExpectation };
enum class IcMode { kFull, kAdjacent };

std::string ToString(EquityMode mode);
std::string ToString(IcMode mode);

struct LpOptions {
  IcMode ic = IcMode::kFull;
  // Keeps IR only at own value 0; with IC this implies IR everywhere.
  bool ir_at_zero_only = false;
  // Size guard on the total row count.
  std::int64_t max_rows = 2'000'000;
};

struct GridMechanismLp {
  GridMasses masses;
  GroupStructure groups;
  double gamma;
  EquityMode mode;
  IcMode ic;
  LinearProgram program;
  std::int64_t ic_rows = 0;
  std::int64_t ir_rows = 0;
  std::int64_t af_rows = 0;
  std::int64_t eq_rows = 0;

  int num_bidders() const { return groups.size(); }
  int QIndex(std::int64_t profile, int bidder) const {
    return static_cast<int>(profile * num_bidders() + bidder);
  }
  int MIndex(std::int64_t profile, int bidder) const {
    return static_cast<int>((masses.grid.size() + profile) * num_bidders() +
                            bidder);
  }
};

// Throws std::invalid_argument for I outside {1, 2, 3}, a group/grid size
// mismatch, masses not summing to one, or a row count above the cap.
GridMechanismLp AssembleLp(const GridMasses& masses,
                           const GroupStructure& groups, double gamma,
                           EquityMode mode, const LpOptions& options = {});

// Mechanism given by a table on a grid. Off-grid profiles snap to the nearest
// grid profile, ties toward lower coordinates.
class TabulatedMechanism : public Mechanism {
 public:
  TabulatedMechanism(std::string name, Grid grid, GroupStructure groups,
                     double gamma, std::vector<double> allocation,
                     std::vector<double> payment);

  std::string name() const override { return name_; }
  const GroupStructure& groups() const override { return groups_; }
  double gamma() const override { return gamma_; }
  void Allocate(std::span<const double> values,
                std::span<double> out) const override;
  void Pay(std::span<const double> values,
           std::span<double> out) const override;
  std::optional<Grid> tabulation_grid() const override { return grid_; }

  const Grid& grid() const { return grid_; }
  // Row-major by profile: entry profile * I + bidder.
  std::span<const double> allocation() const { return allocation_; }
  std::span<const double> payment() const { return payment_; }

  // Header `v_1,..,v_I,q_1,..,q_I,m_1,..,m_I`, one row per grid profile.
  std::string ToCsv() const;

 private:
  std::int64_t Lookup(std::span<const double> values) const;

  std::string name_;
  Grid grid_;
  GroupStructure groups_;
  double gamma_;
  std::vector<double> allocation_;
  std::vector<double> payment_;
};

struct LpSolution {
  LpResult result;
  // Expected revenue sum_v p(v) sum_i m_i(v).
  double revenue = 0.0;
  std::optional<TabulatedMechanism> mechanism;  // set when optimal
};

LpSolution SolveLp(const GridMechanismLp& lp, const std::string& name,
                   const SimplexOptions& options = {},
                   const std::vector<VarStatus>* warm_start = nullptr);

// Solves the ex-post LP under the discretized contamination
// (1-eps) * product(marginals) + eps * B^rho (two bidders).
LpSolution TailoredMechanism(
    double eps, double rho, double step, double gamma,
    const std::vector<RegularMarginal>& marginals,
    const LpOptions& options = {}, const SimplexOptions& simplex = {},
    const std::vector<VarStatus>* warm_start = nullptr);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_LP_H_
