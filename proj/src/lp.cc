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

#include "equity_auction/lp.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace equity_auction {

std::string ToString(EquityMode mode) {
  return mode == EquityMode::kExPost ? "ex-post" : "expectation";
}

std::string ToString(IcMode mode) {
  return mode == IcMode::kFull ? "full" : "adjacent";
}

GridMechanismLp AssembleLp(const GridMasses& masses,
                           const GroupStructure& groups, double gamma,
                           EquityMode mode, const LpOptions& options) {
  const Grid& grid = masses.grid;
  const int bidders = groups.size();
  if (bidders < 1 || bidders > 3) {
    throw std::invalid_argument("grid LPs support 1 to 3 bidders");
  }
  if (grid.dims() != bidders) {
    throw std::invalid_argument("grid dimension differs from bidder count");
  }
  if (static_cast<std::int64_t>(masses.mass.size()) != grid.size()) {
    throw std::invalid_argument("mass table size differs from grid size");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be finite and non-negative");
  }
  double total = 0.0;
  for (double p : masses.mass) {
    if (p < 0.0) throw std::invalid_argument("negative mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("masses do not sum to one");
  }

  const std::int64_t profiles = grid.size();
  const int k_max = grid.points_per_axis() - 1;
  // Profiles per own-value line times deviations per line.
  const std::int64_t lines = profiles / grid.points_per_axis() * bidders;
  const std::int64_t ic_rows =
      options.ic == IcMode::kFull
          ? profiles * bidders * k_max
          : lines * 2 * k_max;
  const std::int64_t ir_rows = options.ir_at_zero_only
                                   ? lines
                                   : profiles * bidders;
  const std::int64_t eq_rows = mode == EquityMode::kExPost ? profiles : 1;
  const std::int64_t rows = ic_rows + ir_rows + profiles + eq_rows;
  if (rows > options.max_rows) {
    throw std::invalid_argument("LP has " + std::to_string(rows) +
                                " rows, above the cap of " +
                                std::to_string(options.max_rows));
  }
  const std::int64_t cols = 2 * profiles * bidders;
  if (cols > std::numeric_limits<int>::max() / 2) {
    throw std::invalid_argument("LP too large");
  }

  GridMechanismLp lp{masses,  groups,  gamma,   mode, options.ic,
                     LinearProgram(static_cast<int>(rows),
                                   static_cast<int>(cols))};
  LinearProgram& prog = lp.program;
  for (std::int64_t p = 0; p < profiles; ++p) {
    for (int i = 0; i < bidders; ++i) {
      prog.SetColumnBounds(lp.QIndex(p, i), 0.0, 1.0);
      prog.SetColumnBounds(lp.MIndex(p, i), -kInf, kInf);
      prog.SetObjective(lp.MIndex(p, i), -masses.mass[p]);
    }
  }

  int row = 0;
  std::vector<int> coords(bidders);
  // Truthful report at p must beat the report at p2 for value v.
  auto add_ic = [&](std::int64_t p, std::int64_t p2, int i, double v) {
    prog.AddEntry(row, lp.QIndex(p2, i), v);
    prog.AddEntry(row, lp.MIndex(p2, i), -1.0);
    prog.AddEntry(row, lp.QIndex(p, i), -v);
    prog.AddEntry(row, lp.MIndex(p, i), 1.0);
    prog.SetRowBounds(row++, -kInf, 0.0);
  };
  for (std::int64_t p = 0; p < profiles; ++p) {
    grid.Decode(p, coords);
    for (int i = 0; i < bidders; ++i) {
      const int k = coords[i];
      const double v = grid.Value(k);
      const std::int64_t stride = grid.Stride(i);
      for (int k2 = 0; k2 <= k_max; ++k2) {
        if (k2 == k) continue;
        if (options.ic == IcMode::kAdjacent && std::abs(k2 - k) != 1) continue;
        add_ic(p, p + (k2 - k) * stride, i, v);
      }
    }
  }
  lp.ic_rows = row;

  for (std::int64_t p = 0; p < profiles; ++p) {
    grid.Decode(p, coords);
    for (int i = 0; i < bidders; ++i) {
      if (options.ir_at_zero_only && coords[i] != 0) continue;
      prog.AddEntry(row, lp.MIndex(p, i), 1.0);
      prog.AddEntry(row, lp.QIndex(p, i), -grid.Value(coords[i]));
      prog.SetRowBounds(row++, -kInf, 0.0);
    }
  }
  lp.ir_rows = row - lp.ic_rows;

  for (std::int64_t p = 0; p < profiles; ++p) {
    for (int i = 0; i < bidders; ++i) prog.AddEntry(row, lp.QIndex(p, i), 1.0);
    prog.SetRowBounds(row++, -kInf, 1.0);
  }
  lp.af_rows = profiles;

  // sum_min q - gamma sum_maj q >= 0, per profile or mass-weighted.
  auto equity_coefficient = [&](int i) {
    return groups.IsMinority(i) ? 1.0 : -gamma;
  };
  if (mode == EquityMode::kExPost) {
    for (std::int64_t p = 0; p < profiles; ++p) {
      for (int i = 0; i < bidders; ++i) {
        prog.AddEntry(row, lp.QIndex(p, i), equity_coefficient(i));
      }
      prog.SetRowBounds(row++, 0.0, kInf);
    }
  } else {
    for (std::int64_t p = 0; p < profiles; ++p) {
      for (int i = 0; i < bidders; ++i) {
        prog.AddEntry(row, lp.QIndex(p, i),
                      masses.mass[p] * equity_coefficient(i));
      }
    }
    prog.SetRowBounds(row++, 0.0, kInf);
  }
  lp.eq_rows = eq_rows;
  if (row != rows) throw std::logic_error("LP row count mismatch");
  return lp;
}

TabulatedMechanism::TabulatedMechanism(std::string name, Grid grid,
                                       GroupStructure groups, double gamma,
                                       std::vector<double> allocation,
                                       std::vector<double> payment)
    : name_(std::move(name)),
      grid_(grid),
      groups_(groups),
      gamma_(gamma),
      allocation_(std::move(allocation)),
      payment_(std::move(payment)) {
  const std::int64_t expected = grid_.size() * groups_.size();
  if (grid_.dims() != groups_.size() ||
      static_cast<std::int64_t>(allocation_.size()) != expected ||
      static_cast<std::int64_t>(payment_.size()) != expected) {
    throw std::invalid_argument("table sizes do not match grid and groups");
  }
}

std::int64_t TabulatedMechanism::Lookup(std::span<const double> values) const {
  CheckProfile(groups_, values);
  std::int64_t index = 0;
  for (int i = 0; i < groups_.size(); ++i) {
    index += grid_.Snap(values[i]) * grid_.Stride(i);
  }
  return index;
}

void TabulatedMechanism::Allocate(std::span<const double> values,
                                  std::span<double> out) const {
  const std::int64_t p = Lookup(values);
  const int n = groups_.size();
  for (int i = 0; i < n; ++i) out[i] = allocation_[p * n + i];
}

void TabulatedMechanism::Pay(std::span<const double> values,
                             std::span<double> out) const {
  const std::int64_t p = Lookup(values);
  const int n = groups_.size();
  for (int i = 0; i < n; ++i) out[i] = payment_[p * n + i];
}

std::string TabulatedMechanism::ToCsv() const {
  const int n = groups_.size();
  std::ostringstream out;
  for (const char* prefix : {"v_", "q_", "m_"}) {
    for (int i = 1; i <= n; ++i) {
      if (!(prefix[0] == 'v' && i == 1)) out << ',';
      out << prefix << i;
    }
  }
  out << '\n';
  std::vector<double> v(n);
  for (std::int64_t p = 0; p < grid_.size(); ++p) {
    grid_.Point(p, v);
    for (int i = 0; i < n; ++i) out << (i ? "," : "") << FormatNumber(v[i]);
    for (int i = 0; i < n; ++i)
      out << ',' << FormatNumber(allocation_[p * n + i]);
    for (int i = 0; i < n; ++i) out << ',' << FormatNumber(payment_[p * n + i]);
    out << '\n';
  }
  return out.str();
}

LpSolution SolveLp(const GridMechanismLp& lp, const std::string& name,
                   const SimplexOptions& options,
                   const std::vector<VarStatus>* warm_start) {
  LpSolution solution;
  solution.result = SolveLinearProgram(lp.program, options, warm_start);
  if (solution.result.status != LpStatus::kOptimal) return solution;
  solution.revenue = -solution.result.objective;
  const std::int64_t entries = lp.masses.grid.size() * lp.num_bidders();
  const std::vector<double>& x = solution.result.x;
  std::vector<double> q(x.begin(), x.begin() + entries);
  std::vector<double> m(x.begin() + entries, x.begin() + 2 * entries);
  solution.mechanism.emplace(name, lp.masses.grid, lp.groups, lp.gamma,
                             std::move(q), std::move(m));
  return solution;
}

LpSolution TailoredMechanism(double eps, double rho, double step, double gamma,
                             const std::vector<RegularMarginal>& marginals,
                             const LpOptions& options,
                             const SimplexOptions& simplex,
                             const std::vector<VarStatus>* warm_start) {
  const JointValueDistribution joint = Discretize(
      JointValueDistribution::Contaminated(marginals, eps, rho), step);
  const GridMechanismLp lp =
      AssembleLp(joint.table(), GroupStructure(1, 1), gamma,
                 EquityMode::kExPost, options);
  return SolveLp(lp, "tailored", simplex, warm_start);
}

}  // namespace equity_auction
