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

// Revenue, regret and equity evaluation of mechanisms, normalized revenue
// sweeps against tailored LP mechanisms, and worst-case regret search.

#ifndef EQUITY_AUCTION_EVAL_H_
#define EQUITY_AUCTION_EVAL_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "equity_auction/dists.h"
#include "equity_auction/lp.h"
#include "equity_auction/mechanism.h"

namespace equity_auction {

enum class EvaluationMode { kExhaustiveGrid, kMonteCarlo };

struct EvaluationReport {
  std::string mechanism;
  std::string distribution;
  EvaluationMode mode = EvaluationMode::kExhaustiveGrid;
  double revenue = 0.0;
  double revenue_se = 0.0;  // 0 for exhaustive evaluation
  double regret_p25 = 0.0;
  double regret_p50 = 0.0;
  double regret_p75 = 0.0;
  double regret_max = 0.0;
  double equity_violation_probability = 0.0;
  std::int64_t samples = 0;  // profiles or draws
  std::string grid;          // "step=..,dims=.." for exhaustive runs
  std::uint64_t seed = 0;

  static std::string CsvHeader();
  std::string CsvRow() const;
  std::string ToText() const;
};

// Exhaustive mode requires a discrete-table `joint` and weights every grid
// profile by its mass; Monte Carlo draws `samples` profiles with `seed`.
// Regret is measured against the hindsight benchmark at level `gamma`.
// Percentiles use the nearest-rank rule (mass-weighted when exhaustive).
EvaluationReport Evaluate(const Mechanism& mechanism,
                          const JointValueDistribution& joint, double gamma,
                          EvaluationMode mode, std::int64_t samples = 100000,
                          std::uint64_t seed = 1);

struct SweepRow {
  double eps = 0.0;
  LpStatus status = LpStatus::kOptimal;
  double tailored_revenue = 0.0;
  std::int64_t iterations = 0;
  double kkt = 0.0;  // largest KKT residual of the tailored solve
  // Per mechanism, in the order given.
  std::vector<double> revenue;
  std::vector<double> normalized_revenue;
  std::vector<double> regret_p75;
};

struct SweepTable {
  std::vector<std::string> mechanisms;
  std::vector<SweepRow> rows;

  // Normalized revenue range (max - min) of mechanism `k` over optimal rows.
  double NormalizedRange(int k) const;
  std::string RevenueCsv() const;
  std::string RegretCsv() const;
};

struct SweepOptions {
  double step = 0.02;
  LpOptions lp{IcMode::kAdjacent};
  SimplexOptions simplex;
  // Reuse the previous optimal basis across eps (only the objective moves).
  bool warm_start = true;
};

// Per eps: solves the tailored LP under the discretized contamination of
// `marginals`, then evaluates each mechanism exhaustively on that table and
// divides by the tailored optimum. LP failures mark the row and continue.
SweepTable NormalizedRevenueSweep(
    const std::vector<const Mechanism*>& mechanisms,
    const std::vector<RegularMarginal>& marginals, double gamma,
    const std::vector<double>& eps_values, double rho,
    const SweepOptions& options = {});

struct WorstCase {
  double regret = 0.0;
  std::vector<double> profile;
};

// Maximum ex-post regret over the step grid (I <= 3), refined on a step/10
// lattice within one step of the grid maximizer.
WorstCase WorstCaseRegret(const Mechanism& mechanism, double step);

// Best of the vertices (0,0), (1,0), (gamma,1)/(1+gamma) of the two-group
// allocation simplex for objective t_min psi_min + t_maj psi_maj, ties to
// the earlier vertex. An empty group is passed as -inf and contributes 0
// when its weight is 0.
std::pair<double, double> VertexOracle(double psi_min, double psi_maj,
                                       double gamma);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_EVAL_H_
