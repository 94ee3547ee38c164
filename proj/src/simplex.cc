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

#include "equity_auction/simplex.h"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "equity_auction/types.h"

namespace equity_auction {
namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

// Column-compressed copy of the constraint matrix plus a row-compressed
// copy for pivot-row products.
struct CompressedMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> col_start, row_index;
  std::vector<double> col_value;
  std::vector<int> row_start, col_index;
  std::vector<double> row_value;

  explicit CompressedMatrix(const LinearProgram& lp)
      : rows(lp.num_rows()), cols(lp.num_cols()) {
    std::vector<Triplet> t = lp.entries();
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
      return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    col_start.assign(cols + 1, 0);
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (!row_index.empty() && k > 0 && t[k].col == t[k - 1].col &&
          t[k].row == t[k - 1].row) {
        col_value.back() += t[k].value;
        continue;
      }
      row_index.push_back(t[k].row);
      col_value.push_back(t[k].value);
      ++col_start[t[k].col + 1];
    }
    for (int j = 0; j < cols; ++j) col_start[j + 1] += col_start[j];

    row_start.assign(rows + 1, 0);
    for (int r : row_index) ++row_start[r + 1];
    for (int i = 0; i < rows; ++i) row_start[i + 1] += row_start[i];
    col_index.resize(row_index.size());
    row_value.resize(row_index.size());
    std::vector<int> fill(row_start.begin(), row_start.end() - 1);
    for (int j = 0; j < cols; ++j) {
      for (int k = col_start[j]; k < col_start[j + 1]; ++k) {
        const int slot = fill[row_index[k]]++;
        col_index[slot] = j;
        row_value[slot] = col_value[k];
      }
    }
  }
};

// Basis factorization B = B0 E_1 ... E_k with B0 = LU and eta columns E_t.
class BasisFactor {
 public:
  explicit BasisFactor(int m) : m_(m) {}

  // `columns` lists, for each basis position, the (row, value) entries.
  bool Factorize(const std::vector<Eigen::Triplet<double>>& triplets) {
    SparseMatrix b(m_, m_);
    b.setFromTriplets(triplets.begin(), triplets.end());
    b.makeCompressed();
    lu_.analyzePattern(b);
    lu_.factorize(b);
    etas_.clear();
    return lu_.info() == Eigen::Success;
  }

  void Ftran(std::vector<double>& x) const {
    Eigen::Map<Eigen::VectorXd> v(x.data(), m_);
    Eigen::VectorXd solved = lu_.solve(v);
    v = solved;
    for (const Eta& e : etas_) {
      double& xr = x[e.row];
      if (xr == 0.0) continue;
      xr /= e.pivot;
      for (std::size_t k = 0; k < e.index.size(); ++k) {
        x[e.index[k]] -= e.value[k] * xr;
      }
    }
  }

  void Btran(std::vector<double>& y) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double sum = y[it->row];
      for (std::size_t k = 0; k < it->index.size(); ++k) {
        sum -= it->value[k] * y[it->index[k]];
      }
      y[it->row] = sum / it->pivot;
    }
    Eigen::Map<Eigen::VectorXd> v(y.data(), m_);
    Eigen::VectorXd solved = lu_.transpose().solve(v);
    v = solved;
  }

  // Records the replacement of basis position `row` by a column whose
  // FTRAN image is `alpha`.
  void Update(int row, const std::vector<double>& alpha) {
    Eta e;
    e.row = row;
    e.pivot = alpha[row];
    for (int i = 0; i < m_; ++i) {
      if (i != row && alpha[i] != 0.0) {
        e.index.push_back(i);
        e.value.push_back(alpha[i]);
      }
    }
    etas_.push_back(std::move(e));
  }

  int num_updates() const { return static_cast<int>(etas_.size()); }

 private:
  struct Eta {
    int row = 0;
    double pivot = 1.0;
    std::vector<int> index;
    std::vector<double> value;
  };

  int m_;
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp),
        options_(options),
        a_(lp),
        m_(lp.num_rows()),
        n_(lp.num_cols()),
        total_(m_ + n_),
        factor_(m_) {
    lower_.resize(total_);
    upper_.resize(total_);
    for (int j = 0; j < n_; ++j) {
      lower_[j] = lp.col_lower()[j];
      upper_[j] = lp.col_upper()[j];
    }
    for (int i = 0; i < m_; ++i) {
      lower_[n_ + i] = lp.row_lower()[i];
      upper_[n_ + i] = lp.row_upper()[i];
    }
    original_lower_ = lower_;
    original_upper_ = upper_;
    double max_cost = 0.0;
    for (double c : lp.objective()) max_cost = std::max(max_cost, std::abs(c));
    cost_scale_ = max_cost > 0.0 ? max_cost : 1.0;
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp.objective()[j] / cost_scale_;
    x_.assign(total_, 0.0);
    status_.assign(total_, VarStatus::kAtLower);
    position_.assign(total_, -1);
    head_.assign(m_, 0);
    d_.assign(total_, 0.0);
    weight_.assign(total_, 1.0);
  }

  LpResult Run(const std::vector<VarStatus>* warm_start) {
    LpResult result;
    if (!(warm_start && LoadBasis(*warm_start))) ColdBasis();

    if (options_.perturbation > 0.0) Perturb();
    LpStatus status = Optimize();
    if (perturbed_) {
      RestoreBounds();
      if (status == LpStatus::kOptimal) status = Optimize();
    }
    result.status = status;
    result.iterations = iterations_;
    result.bland_iterations = bland_iterations_;
    Extract(result);
    return result;
  }

 private:
  // Structural column j < n or logical column n + i (entry -1 in row i).
  template <typename F>
  void ForColumn(int j, F&& f) const {
    if (j < n_) {
      for (int k = a_.col_start[j]; k < a_.col_start[j + 1]; ++k) {
        f(a_.row_index[k], a_.col_value[k]);
      }
    } else {
      f(j - n_, -1.0);
    }
  }

  bool IsFixed(int j) const { return lower_[j] == upper_[j]; }

  double NonbasicValue(int j, VarStatus s) const {
    switch (s) {
      case VarStatus::kAtLower:
        return lower_[j];
      case VarStatus::kAtUpper:
        return upper_[j];
      default:
        return 0.0;
    }
  }

  VarStatus DefaultStatus(int j) const {
    if (std::isfinite(lower_[j])) return VarStatus::kAtLower;
    if (std::isfinite(upper_[j])) return VarStatus::kAtUpper;
    return VarStatus::kFree;
  }

  void ColdBasis() {
    for (int j = 0; j < n_; ++j) {
      status_[j] = DefaultStatus(j);
      position_[j] = -1;
    }
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      position_[n_ + i] = i;
      status_[n_ + i] = VarStatus::kBasic;
    }
    if (!Refactor()) throw std::logic_error("logical basis is singular");
  }

  bool LoadBasis(const std::vector<VarStatus>& basis) {
    if (static_cast<int>(basis.size()) != total_) return false;
    int count = 0;
    for (VarStatus s : basis) count += s == VarStatus::kBasic;
    if (count != m_) return false;
    int k = 0;
    for (int j = 0; j < total_; ++j) {
      VarStatus s = basis[j];
      if (s == VarStatus::kBasic) {
        head_[k] = j;
        position_[j] = k++;
      } else {
        position_[j] = -1;
        if ((s == VarStatus::kAtLower && !std::isfinite(lower_[j])) ||
            (s == VarStatus::kAtUpper && !std::isfinite(upper_[j])) ||
            (s == VarStatus::kFree &&
             (std::isfinite(lower_[j]) || std::isfinite(upper_[j])))) {
          s = DefaultStatus(j);
        }
      }
      status_[j] = s;
    }
    return Refactor();
  }

  // Factorizes the current basis and recomputes x_B and reduced costs.
  bool Refactor() {
    std::vector<Eigen::Triplet<double>> triplets;
    for (int k = 0; k < m_; ++k) {
      ForColumn(head_[k], [&](int row, double value) {
        triplets.emplace_back(row, k, value);
      });
    }
    if (!factor_.Factorize(triplets)) return false;
    ComputePrimal();
    ComputeDuals();
    return true;
  }

  void ComputePrimal() {
    std::vector<double> rhs(m_, 0.0);
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      x_[j] = NonbasicValue(j, status_[j]);
      if (x_[j] == 0.0) continue;
      const double xj = x_[j];
      ForColumn(j, [&](int row, double value) { rhs[row] -= value * xj; });
    }
    factor_.Ftran(rhs);
    for (int k = 0; k < m_; ++k) x_[head_[k]] = rhs[k];
  }

  // Costs in use: phase-1 infeasibility costs or the scaled objective.
  double Cost(int j) const {
    if (!phase_one_) return cost_[j];
    if (status_[j] != VarStatus::kBasic) return 0.0;
    if (x_[j] < lower_[j] - options_.primal_tolerance) return -1.0;
    if (x_[j] > upper_[j] + options_.primal_tolerance) return 1.0;
    return 0.0;
  }

  void ComputeDuals() {
    std::vector<double> y(m_);
    for (int k = 0; k < m_; ++k) y[k] = Cost(head_[k]);
    factor_.Btran(y);
    y_ = y;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kBasic) {
        d_[j] = 0.0;
        continue;
      }
      double dot = 0.0;
      ForColumn(j, [&](int row, double value) { dot += y[row] * value; });
      d_[j] = Cost(j) - dot;
    }
  }

  bool PrimalFeasible() const {
    for (int k = 0; k < m_; ++k) {
      const int j = head_[k];
      if (x_[j] < lower_[j] - options_.primal_tolerance ||
          x_[j] > upper_[j] + options_.primal_tolerance) {
        return false;
      }
    }
    return true;
  }

  double Objective() const {
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    return obj;
  }

  void Perturb() {
    std::mt19937_64 rng(options_.seed);
    std::uniform_real_distribution<double> unit(0.5, 1.0);
    for (int j = 0; j < total_; ++j) {
      if (IsFixed(j)) continue;
      if (std::isfinite(lower_[j])) {
        lower_[j] -= options_.perturbation * (1.0 + std::abs(lower_[j])) *
                     unit(rng);
      }
      if (std::isfinite(upper_[j])) {
        upper_[j] += options_.perturbation * (1.0 + std::abs(upper_[j])) *
                     unit(rng);
      }
    }
    perturbed_ = true;
    ComputePrimal();
  }

  void RestoreBounds() {
    lower_ = original_lower_;
    upper_ = original_upper_;
    perturbed_ = false;
    Refactor();
  }

  // Entering candidate, or -1 at optimality.
  int Price() const {
    const double tol = options_.dual_tolerance;
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < total_; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic || IsFixed(j)) continue;
      const double dj = d_[j];
      const bool eligible = (s == VarStatus::kAtLower && dj < -tol) ||
                            (s == VarStatus::kAtUpper && dj > tol) ||
                            (s == VarStatus::kFree && std::abs(dj) > tol);
      if (!eligible) continue;
      if (bland_) return j;
      const double score = dj * dj / weight_[j];
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  struct RatioChoice {
    int row = -1;          // leaving basis position, -1 for none
    double step = 0.0;     // step length of the entering variable
    double land = 0.0;     // value the leaving variable lands on
    bool flip = false;     // entering variable crosses to its other bound
  };

  // Bounds a basic variable may not cross during this step.
  void StepBounds(int j, double* lo, double* hi) const {
    *lo = lower_[j];
    *hi = upper_[j];
    if (!phase_one_) return;
    const double tol = options_.primal_tolerance;
    if (x_[j] < lower_[j] - tol) {
      *lo = -kInf;
      *hi = lower_[j];
    } else if (x_[j] > upper_[j] + tol) {
      *lo = upper_[j];
      *hi = kInf;
    }
  }

  RatioChoice RatioTest(int entering, double direction,
                        const std::vector<double>& alpha) const {
    const double tol = options_.primal_tolerance;
    const double ptol = options_.pivot_tolerance;
    RatioChoice choice;
    double bound = kInf;
    // Pass 1: relaxed minimum ratio.
    for (int k = 0; k < m_; ++k) {
      const double a = alpha[k];
      if (std::abs(a) <= ptol) continue;
      const int j = head_[k];
      double lo, hi;
      StepBounds(j, &lo, &hi);
      const double delta = -direction * a;
      double ratio = kInf;
      if (delta < 0.0 && std::isfinite(lo)) {
        ratio = (x_[j] - lo + tol) / -delta;
      } else if (delta > 0.0 && std::isfinite(hi)) {
        ratio = (hi - x_[j] + tol) / delta;
      }
      bound = std::min(bound, ratio);
    }
    // Pass 2: largest pivot among ratios within the relaxed bound.
    double best_pivot = 0.0;
    for (int k = 0; k < m_; ++k) {
      const double a = alpha[k];
      if (std::abs(a) <= ptol) continue;
      const int j = head_[k];
      double lo, hi;
      StepBounds(j, &lo, &hi);
      const double delta = -direction * a;
      double ratio;
      double land;
      if (delta < 0.0 && std::isfinite(lo)) {
        ratio = std::max(0.0, (x_[j] - lo) / -delta);
        land = lo;
      } else if (delta > 0.0 && std::isfinite(hi)) {
        ratio = std::max(0.0, (hi - x_[j]) / delta);
        land = hi;
      } else {
        continue;
      }
      if (ratio > bound) continue;
      const bool better =
          bland_ ? (choice.row < 0 || ratio < choice.step - tol ||
                    (ratio <= choice.step + tol && j < head_[choice.row]))
                 : std::abs(a) > best_pivot;
      if (better) {
        best_pivot = std::abs(a);
        choice.row = k;
        choice.step = ratio;
        choice.land = land;
      }
    }
    const double range = upper_[entering] - lower_[entering];
    if (std::isfinite(range) && (choice.row < 0 || range <= choice.step)) {
      choice.row = -1;
      choice.flip = true;
      choice.step = range;
    }
    return choice;
  }

  // One pivot; sets `done` when pricing or the ratio test ends the phase.
  LpStatus Iterate(bool* done) {
    const int q = Price();
    if (q < 0) {
      *done = true;
      return LpStatus::kOptimal;
    }
    const double direction =
        (status_[q] == VarStatus::kAtUpper || d_[q] > 0.0) ? -1.0 : 1.0;

    std::vector<double> alpha(m_, 0.0);
    ForColumn(q, [&](int row, double value) { alpha[row] = value; });
    factor_.Ftran(alpha);

    const RatioChoice choice = RatioTest(q, direction, alpha);
    if (choice.row < 0 && !choice.flip) {
      *done = true;
      return phase_one_ ? LpStatus::kNumericalFailure : LpStatus::kUnbounded;
    }

    const double step = choice.step;
    for (int k = 0; k < m_; ++k) {
      if (alpha[k] != 0.0) x_[head_[k]] -= direction * step * alpha[k];
    }
    if (choice.flip) {
      status_[q] = direction > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      x_[q] = NonbasicValue(q, status_[q]);
      if (phase_one_) ComputeDuals();
      return LpStatus::kOptimal;
    }

    const int r = choice.row;
    const int leaving = head_[r];
    const double pivot = alpha[r];

    // Pivot row over nonbasic columns: rho' a_j with rho = B^-T e_r.
    std::vector<double> rho(m_, 0.0);
    rho[r] = 1.0;
    factor_.Btran(rho);
    if (!phase_one_) UpdateDualsAndWeights(q, leaving, pivot, rho);

    x_[q] += direction * step;
    x_[leaving] = choice.land;
    status_[leaving] = choice.land == lower_[leaving] ? VarStatus::kAtLower
                                                      : VarStatus::kAtUpper;
    position_[leaving] = -1;
    head_[r] = q;
    position_[q] = r;
    status_[q] = VarStatus::kBasic;
    d_[q] = 0.0;

    factor_.Update(r, alpha);
    if (factor_.num_updates() >= options_.refactor_interval) {
      if (!Refactor()) return LpStatus::kNumericalFailure;
    } else if (phase_one_) {
      ComputeDuals();
    }
    return LpStatus::kOptimal;
  }

  void UpdateDualsAndWeights(int q, int leaving, double pivot,
                             const std::vector<double>& rho) {
    // alpha_r over structural columns via the row-wise copy.
    std::vector<double>& row = pivot_row_;
    row.assign(total_, 0.0);
    mark_.resize(total_, 0);
    touched_.clear();
    for (int i = 0; i < m_; ++i) {
      const double ri = rho[i];
      if (ri == 0.0) continue;
      for (int k = a_.row_start[i]; k < a_.row_start[i + 1]; ++k) {
        const int j = a_.col_index[k];
        if (!mark_[j]) {
          mark_[j] = 1;
          touched_.push_back(j);
        }
        row[j] += ri * a_.row_value[k];
      }
      row[n_ + i] = -ri;
      touched_.push_back(n_ + i);
    }
    const double theta = d_[q] / pivot;
    const double weight_q = std::max(weight_[q], 1.0);
    bool reset = false;
    for (int j : touched_) {
      mark_[j] = 0;
      if (status_[j] == VarStatus::kBasic || j == q) continue;
      const double arj = row[j];
      if (arj == 0.0) continue;
      d_[j] -= theta * arj;
      const double ratio = arj / pivot;
      weight_[j] = std::max(weight_[j], ratio * ratio * weight_q);
      if (weight_[j] > 1e8) reset = true;
    }
    d_[leaving] = -theta;
    weight_[leaving] = std::max(weight_q / (pivot * pivot), 1.0);
    if (reset) std::fill(weight_.begin(), weight_.end(), 1.0);
  }

  LpStatus Optimize() {
    std::int64_t since_progress = 0;
    double best_objective = kInf;
    const bool always_bland = options_.stall_limit <= 0;
    bland_ = always_bland;
    phase_one_ = !PrimalFeasible();
    if (phase_one_) ComputeDuals();
    while (true) {
      if (iterations_ >= options_.max_iterations) {
        return LpStatus::kIterationLimit;
      }
      bool done = false;
      const LpStatus status = Iterate(&done);
      if (done) {
        if (status == LpStatus::kUnbounded && factor_.num_updates() > 0) {
          // Confirm the ray with fresh reduced costs.
          if (!Refactor()) return LpStatus::kNumericalFailure;
          continue;
        }
        if (status != LpStatus::kOptimal) return status;
        if (phase_one_) {
          ComputePrimal();
          if (!PrimalFeasible()) return LpStatus::kInfeasible;
          phase_one_ = false;
          ComputeDuals();
          continue;
        }
        // Confirm optimality on fresh values before stopping.
        if (!Refactor()) return LpStatus::kNumericalFailure;
        if (!PrimalFeasible()) {
          phase_one_ = true;
          ComputeDuals();
          continue;
        }
        if (Price() < 0) return LpStatus::kOptimal;
        continue;
      }
      if (status == LpStatus::kNumericalFailure) {
        // One retry from the logical basis before giving up.
        if (retried_) return status;
        retried_ = true;
        ColdBasis();
        phase_one_ = !PrimalFeasible();
        ComputeDuals();
        continue;
      }
      ++iterations_;
      if (bland_) ++bland_iterations_;

      if (phase_one_) {
        if (PrimalFeasible()) {
          phase_one_ = false;
          ComputeDuals();
        }
        continue;
      }
      if (factor_.num_updates() == 0 && !PrimalFeasible()) {
        phase_one_ = true;
        ComputeDuals();
        continue;
      }
      const double obj = Objective();
      if (obj < best_objective - 1e-12 * (1.0 + std::abs(best_objective))) {
        best_objective = obj;
        since_progress = 0;
        bland_ = always_bland;
      } else if (++since_progress >= options_.stall_limit) {
        bland_ = true;
      }
    }
  }

  void Extract(LpResult& result) const {
    result.x.assign(x_.begin(), x_.begin() + n_);
    result.basis = status_;
    result.row_activity.assign(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      for (int k = a_.col_start[j]; k < a_.col_start[j + 1]; ++k) {
        result.row_activity[a_.row_index[k]] += a_.col_value[k] * x_[j];
      }
    }
    result.row_dual.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) result.row_dual[i] = y_[i] * cost_scale_;
    result.reduced_cost.assign(n_, 0.0);
    double objective = 0.0;
    for (int j = 0; j < n_; ++j) {
      double dot = 0.0;
      for (int k = a_.col_start[j]; k < a_.col_start[j + 1]; ++k) {
        dot += result.row_dual[a_.row_index[k]] * a_.col_value[k];
      }
      result.reduced_cost[j] = lp_.objective()[j] - dot;
      objective += lp_.objective()[j] * x_[j];
    }
    result.objective = objective;
    result.kkt = CheckKkt(lp_, result.x, result.row_dual);
  }

  const LinearProgram& lp_;
  SimplexOptions options_;
  CompressedMatrix a_;
  int m_;
  int n_;
  int total_;
  BasisFactor factor_;

  std::vector<double> lower_, upper_;
  std::vector<double> original_lower_, original_upper_;
  std::vector<double> cost_;
  double cost_scale_ = 1.0;
  std::vector<double> x_;
  std::vector<VarStatus> status_;
  std::vector<int> position_;
  std::vector<int> head_;
  std::vector<double> d_;
  std::vector<double> y_;
  std::vector<double> weight_;
  std::vector<double> pivot_row_;
  std::vector<int> touched_;
  std::vector<char> mark_;

  bool phase_one_ = false;
  bool bland_ = false;
  bool perturbed_ = false;
  bool retried_ = false;
  std::int64_t iterations_ = 0;
  std::int64_t bland_iterations_ = 0;
};

}  // namespace

LinearProgram::LinearProgram(int num_rows, int num_cols)
    : num_rows_(num_rows),
      num_cols_(num_cols),
      objective_(num_cols, 0.0),
      col_lower_(num_cols, 0.0),
      col_upper_(num_cols, kInf),
      row_lower_(num_rows, -kInf),
      row_upper_(num_rows, kInf) {
  if (num_rows < 0 || num_cols < 0) {
    throw std::invalid_argument("negative LP dimensions");
  }
}

void LinearProgram::AddEntry(int row, int col, double value) {
  if (row < 0 || row >= num_rows_ || col < 0 || col >= num_cols_) {
    throw std::out_of_range("LP entry outside the matrix");
  }
  if (value != 0.0) entries_.push_back({row, col, value});
}

void LinearProgram::SetColumnBounds(int col, double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("column lower > upper");
  col_lower_[col] = lower;
  col_upper_[col] = upper;
}

void LinearProgram::SetRowBounds(int row, double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("row lower > upper");
  row_lower_[row] = lower;
  row_upper_[row] = upper;
}

std::string LinearProgram::ToTriples() const {
  std::ostringstream out;
  out << "row,col,coeff\n";
  for (const Triplet& t : entries_) {
    out << t.row << ',' << t.col << ',' << FormatNumber(t.value) << '\n';
  }
  return out.str();
}

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
    case LpStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

KktResiduals CheckKkt(const LinearProgram& lp, const std::vector<double>& x,
                      const std::vector<double>& row_dual) {
  KktResiduals r;
  const int n = lp.num_cols();
  const int m = lp.num_rows();
  std::vector<double> activity(m, 0.0), d(lp.objective());
  for (const Triplet& t : lp.entries()) {
    activity[t.row] += t.value * x[t.col];
    d[t.col] -= row_dual[t.row] * t.value;
  }
  // Splits a multiplier into its lower-bound (positive) and upper-bound
  // (negative) parts and scores sign errors and complementarity.
  auto score = [&r](double value, double lower, double upper, double mult) {
    r.primal = std::max({r.primal, lower - value, value - upper});
    if (mult > 0.0) {
      if (!std::isfinite(lower)) {
        r.dual = std::max(r.dual, mult);
      } else {
        r.complementarity = std::max(r.complementarity, mult * (value - lower));
      }
    } else if (mult < 0.0) {
      if (!std::isfinite(upper)) {
        r.dual = std::max(r.dual, -mult);
      } else {
        r.complementarity =
            std::max(r.complementarity, -mult * (upper - value));
      }
    }
  };
  for (int j = 0; j < n; ++j) {
    score(x[j], lp.col_lower()[j], lp.col_upper()[j], d[j]);
  }
  for (int i = 0; i < m; ++i) {
    score(activity[i], lp.row_lower()[i], lp.row_upper()[i], row_dual[i]);
  }
  r.primal = std::max(0.0, r.primal);
  r.complementarity = std::abs(r.complementarity);
  return r;
}

LpResult SolveLinearProgram(const LinearProgram& lp,
                            const SimplexOptions& options,
                            const std::vector<VarStatus>* warm_start) {
  Simplex simplex(lp, options);
  return simplex.Run(warm_start);
}

}  // namespace equity_auction
