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

// Sparse bounded revised primal simplex.
//
// Problems have the form
//
//   minimize c'x  subject to  row_lower <= A x <= row_upper,
//                             col_lower <= x <= col_upper,
//
// with infinite bounds allowed. Internally every row gets a logical
// variable s = A x carrying the row bounds. The basis is factorized with a
// sparse LU and updated in product form between refactorizations.

#ifndef EQUITY_AUCTION_SIMPLEX_H_
#define EQUITY_AUCTION_SIMPLEX_H_

#include <cstdint>
#include <string>
#include <vector>

namespace equity_auction {

struct Triplet {
  int row;
  int col;
  double value;
};

class LinearProgram {
 public:
  LinearProgram(int num_rows, int num_cols);

  int num_rows() const { return num_rows_; }
  int num_cols() const { return num_cols_; }

  // Entries may be added in any order; duplicates are summed.
  void AddEntry(int row, int col, double value);
  void SetObjective(int col, double value) { objective_[col] = value; }
  void SetColumnBounds(int col, double lower, double upper);
  void SetRowBounds(int row, double lower, double upper);

  const std::vector<Triplet>& entries() const { return entries_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<double>& col_lower() const { return col_lower_; }
  const std::vector<double>& col_upper() const { return col_upper_; }
  const std::vector<double>& row_lower() const { return row_lower_; }
  const std::vector<double>& row_upper() const { return row_upper_; }
  std::int64_t num_entries() const {
    return static_cast<std::int64_t>(entries_.size());
  }

  // One `row,col,coeff` line per entry after a header, 0-based indices.
  std::string ToTriples() const;

 private:
  int num_rows_;
  int num_cols_;
  std::vector<Triplet> entries_;
  std::vector<double> objective_;
  std::vector<double> col_lower_, col_upper_;
  std::vector<double> row_lower_, row_upper_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit,
                      kNumericalFailure };

std::string ToString(LpStatus status);

// Basis statuses for warm starts: one per column, then one per row logical.
enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

struct SimplexOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 100;
  std::int64_t max_iterations = 10'000'000;
  // Relative size of the random row-bound perturbation used against
  // degeneracy; 0 disables it. It is removed before the final iterations.
  double perturbation = 1e-7;
  // Iterations without objective progress before switching to Bland's rule.
  std::int64_t stall_limit = 20000;
  std::uint64_t seed = 1;
};

struct KktResiduals {
  double primal = 0.0;         // max bound or row violation
  double dual = 0.0;           // max wrong-signed reduced cost
  double complementarity = 0.0;  // max |reduced cost| * distance to bound

  bool Within(double tolerance) const {
    return primal <= tolerance && dual <= tolerance &&
           complementarity <= tolerance;
  }
};

struct LpResult {
  LpStatus status = LpStatus::kNumericalFailure;
  double objective = 0.0;
  std::vector<double> x;           // column values
  std::vector<double> row_activity;
  std::vector<double> row_dual;    // y with reduced cost c - A'y
  std::vector<double> reduced_cost;
  std::vector<VarStatus> basis;    // size num_cols + num_rows
  KktResiduals kkt;
  std::int64_t iterations = 0;
  std::int64_t bland_iterations = 0;
};

// Solves `lp`. A warm-start basis of matching size is used when given and
// non-singular; otherwise the all-logical basis is used.
LpResult SolveLinearProgram(const LinearProgram& lp,
                            const SimplexOptions& options = {},
                            const std::vector<VarStatus>* warm_start = nullptr);

// Residuals of a candidate primal-dual pair measured on `lp` directly.
KktResiduals CheckKkt(const LinearProgram& lp, const std::vector<double>& x,
                      const std::vector<double>& row_dual);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_SIMPLEX_H_
