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

#include "equity_auction/eval.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "equity_auction/types.h"

namespace equity_auction {
namespace {

struct WeightedRegret {
  double regret;
  double weight;
};

// Smallest regret whose cumulative weight reaches fraction `p` of the total.
double NearestRank(const std::vector<WeightedRegret>& sorted, double total,
                   double p) {
  const double target = p * total;
  double cumulative = 0.0;
  for (const WeightedRegret& r : sorted) {
    cumulative += r.weight;
    if (cumulative >= target - 1e-12 * total) return r.regret;
  }
  return sorted.empty() ? 0.0 : sorted.back().regret;
}

// Accumulates one profile's revenue, regret and equity outcome.
class Accumulator {
 public:
  Accumulator(const Mechanism& mechanism, double gamma)
      : mechanism_(mechanism),
        groups_(mechanism.groups()),
        gamma_(gamma),
        q_(groups_.size()),
        m_(groups_.size()) {}

  void Add(std::span<const double> values, double weight) {
    mechanism_.Allocate(values, q_);
    mechanism_.Pay(values, m_);
    double revenue = 0.0, minority = 0.0, majority = 0.0;
    for (int i = 0; i < groups_.size(); ++i) {
      revenue += m_[i];
      (groups_.IsMinority(i) ? minority : majority) += q_[i];
    }
    const double regret = HindsightRevenue(groups_, values, gamma_) - revenue;
    total_weight_ += weight;
    revenue_sum_ += weight * revenue;
    revenue_square_sum_ += weight * revenue * revenue;
    if (minority < gamma_ * majority - 1e-9) violation_weight_ += weight;
    regrets_.push_back({regret, weight});
  }

  void Finish(EvaluationReport& report, bool sampled) {
    std::sort(regrets_.begin(), regrets_.end(),
              [](const WeightedRegret& a, const WeightedRegret& b) {
                return a.regret < b.regret;
              });
    const double w = total_weight_;
    report.revenue = revenue_sum_ / w;
    if (sampled && report.samples > 1) {
      const double n = static_cast<double>(report.samples);
      const double var = std::max(
          0.0, (revenue_square_sum_ / w - report.revenue * report.revenue) *
                   n / (n - 1.0));
      report.revenue_se = std::sqrt(var / n);
    }
    report.regret_p25 = NearestRank(regrets_, w, 0.25);
    report.regret_p50 = NearestRank(regrets_, w, 0.50);
    report.regret_p75 = NearestRank(regrets_, w, 0.75);
    report.regret_max = regrets_.empty() ? 0.0 : regrets_.back().regret;
    report.equity_violation_probability =
        std::clamp(violation_weight_ / w, 0.0, 1.0);
  }

 private:
  const Mechanism& mechanism_;
  const GroupStructure& groups_;
  double gamma_;
  std::vector<double> q_, m_;
  double total_weight_ = 0.0;
  double revenue_sum_ = 0.0;
  double revenue_square_sum_ = 0.0;
  double violation_weight_ = 0.0;
  std::vector<WeightedRegret> regrets_;
};

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string EvaluationReport::CsvHeader() {
  return "mechanism,distribution,mode,revenue,revenue_se,regret_p25,"
         "regret_p50,regret_p75,regret_max,equity_violation_probability,"
         "samples,grid,seed";
}

std::string EvaluationReport::CsvRow() const {
  std::ostringstream out;
  out << Quote(mechanism) << ',' << Quote(distribution) << ','
      << (mode == EvaluationMode::kExhaustiveGrid ? "exhaustive-grid"
                                                  : "monte-carlo")
      << ',' << FormatNumber(revenue) << ',' << FormatNumber(revenue_se) << ','
      << FormatNumber(regret_p25) << ',' << FormatNumber(regret_p50) << ','
      << FormatNumber(regret_p75) << ',' << FormatNumber(regret_max) << ','
      << FormatNumber(equity_violation_probability) << ',' << samples << ','
      << Quote(grid) << ',' << seed;
  return out.str();
}

std::string EvaluationReport::ToText() const {
  std::ostringstream out;
  out << "mechanism:     " << mechanism << '\n'
      << "distribution:  " << distribution << '\n'
      << "revenue:       " << FormatNumber(revenue);
  if (mode == EvaluationMode::kMonteCarlo) {
    out << " (se " << FormatNumber(revenue_se) << ", n " << samples
        << ", seed " << seed << ')';
  } else {
    out << " (exhaustive, " << grid << ", " << samples << " profiles)";
  }
  out << '\n'
      << "regret p25/p50/p75/max: " << FormatNumber(regret_p25) << " / "
      << FormatNumber(regret_p50) << " / " << FormatNumber(regret_p75)
      << " / " << FormatNumber(regret_max) << '\n'
      << "P[equity violated]: " << FormatNumber(equity_violation_probability)
      << '\n';
  return out.str();
}

EvaluationReport Evaluate(const Mechanism& mechanism,
                          const JointValueDistribution& joint, double gamma,
                          EvaluationMode mode, std::int64_t samples,
                          std::uint64_t seed) {
  if (joint.dims() != mechanism.groups().size()) {
    throw std::invalid_argument("distribution and mechanism sizes differ");
  }
  EvaluationReport report;
  report.mechanism = mechanism.name();
  report.distribution = joint.Describe();
  report.mode = mode;
  Accumulator acc(mechanism, gamma);
  if (mode == EvaluationMode::kExhaustiveGrid) {
    if (joint.kind() != JointValueDistribution::Kind::kDiscreteTable) {
      throw std::invalid_argument("exhaustive evaluation needs a table");
    }
    const GridMasses& table = joint.table();
    std::vector<double> v(joint.dims());
    for (std::int64_t p = 0; p < table.grid.size(); ++p) {
      if (table.mass[p] <= 0.0) continue;
      table.grid.Point(p, v);
      acc.Add(v, table.mass[p]);
    }
    report.samples = table.grid.size();
    report.grid = "step=" + FormatNumber(table.grid.step()) +
                  ";dims=" + std::to_string(table.grid.dims());
  } else {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    const ProfileSample draws = SampleJoint(joint, samples, seed);
    for (std::int64_t r = 0; r < draws.size(); ++r) acc.Add(draws.Row(r), 1.0);
    report.samples = samples;
    report.seed = seed;
  }
  acc.Finish(report, mode == EvaluationMode::kMonteCarlo);
  return report;
}

double SweepTable::NormalizedRange(int k) const {
  double lo = kInf, hi = -kInf;
  for (const SweepRow& row : rows) {
    if (row.status != LpStatus::kOptimal) continue;
    lo = std::min(lo, row.normalized_revenue[k]);
    hi = std::max(hi, row.normalized_revenue[k]);
  }
  return hi >= lo ? hi - lo : 0.0;
}

namespace {

std::string SweepCsv(const SweepTable& table, bool revenue) {
  std::ostringstream out;
  out << "eps,status,tailored_revenue";
  for (const std::string& name : table.mechanisms) out << ',' << Quote(name);
  out << '\n';
  for (const SweepRow& row : table.rows) {
    out << FormatNumber(row.eps) << ',' << ToString(row.status) << ','
        << FormatNumber(row.tailored_revenue);
    const std::vector<double>& values =
        revenue ? row.normalized_revenue : row.regret_p75;
    for (std::size_t k = 0; k < table.mechanisms.size(); ++k) {
      out << ',';
      if (k < values.size()) out << FormatNumber(values[k]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string SweepTable::RevenueCsv() const { return SweepCsv(*this, true); }
std::string SweepTable::RegretCsv() const { return SweepCsv(*this, false); }

SweepTable NormalizedRevenueSweep(
    const std::vector<const Mechanism*>& mechanisms,
    const std::vector<RegularMarginal>& marginals, double gamma,
    const std::vector<double>& eps_values, double rho,
    const SweepOptions& options) {
  SweepTable table;
  table.mechanisms.push_back("tailored");
  for (const Mechanism* m : mechanisms) table.mechanisms.push_back(m->name());
  std::vector<VarStatus> basis;
  for (double eps : eps_values) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("eps must lie in [0,1]");
    }
    SweepRow row;
    row.eps = eps;
    const JointValueDistribution joint = Discretize(
        JointValueDistribution::Contaminated(marginals, eps, rho),
        options.step);
    const GridMechanismLp lp =
        AssembleLp(joint.table(), GroupStructure(1, 1), gamma,
                   EquityMode::kExPost, options.lp);
    const LpSolution solution =
        SolveLp(lp, "tailored", options.simplex,
                options.warm_start && !basis.empty() ? &basis : nullptr);
    row.status = solution.result.status;
    row.iterations = solution.result.iterations;
    row.kkt = std::max({solution.result.kkt.primal, solution.result.kkt.dual,
                        solution.result.kkt.complementarity});
    if (row.status == LpStatus::kOptimal) {
      basis = solution.result.basis;
      row.tailored_revenue = solution.revenue;
      std::vector<const Mechanism*> all{&*solution.mechanism};
      all.insert(all.end(), mechanisms.begin(), mechanisms.end());
      for (const Mechanism* m : all) {
        const EvaluationReport report =
            Evaluate(*m, joint, gamma, EvaluationMode::kExhaustiveGrid);
        row.revenue.push_back(report.revenue);
        row.normalized_revenue.push_back(report.revenue /
                                         solution.revenue);
        row.regret_p75.push_back(report.regret_p75);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

WorstCase WorstCaseRegret(const Mechanism& mechanism, double step) {
  const int dims = mechanism.groups().size();
  if (dims < 1 || dims > 3) {
    throw std::invalid_argument("worst-case search supports 1 to 3 bidders");
  }
  const Grid grid = Grid::FromStep(step, dims);
  WorstCase best{-kInf, std::vector<double>(dims)};
  std::vector<double> v(dims);
  for (std::int64_t p = 0; p < grid.size(); ++p) {
    grid.Point(p, v);
    const double r = ExPostRegret(mechanism, v);
    if (r > best.regret) {
      best.regret = r;
      best.profile = v;
    }
  }
  // Refinement lattice of 21 points per axis around the grid maximizer.
  const std::vector<double> center = best.profile;
  const int points = 21;
  std::vector<int> k(dims, 0);
  while (true) {
    bool inside = true;
    for (int i = 0; i < dims; ++i) {
      v[i] = center[i] + (k[i] - 10) * step / 10.0;
      if (v[i] < 0.0 || v[i] > 1.0) inside = false;
    }
    if (inside) {
      const double r = ExPostRegret(mechanism, v);
      if (r > best.regret) {
        best.regret = r;
        best.profile = v;
      }
    }
    int axis = 0;
    while (axis < dims && ++k[axis] == points) k[axis++] = 0;
    if (axis == dims) break;
  }
  return best;
}

std::pair<double, double> VertexOracle(double psi_min, double psi_maj,
                                       double gamma) {
  auto value = [&](double t_min, double t_maj) {
    const double a = t_min == 0.0 ? 0.0 : t_min * psi_min;
    const double b = t_maj == 0.0 ? 0.0 : t_maj * psi_maj;
    return a + b;
  };
  const std::pair<double, double> vertices[3] = {
      {0.0, 0.0}, {1.0, 0.0}, {gamma / (1.0 + gamma), 1.0 / (1.0 + gamma)}};
  std::pair<double, double> best = vertices[0];
  double best_value = 0.0;
  for (int k = 1; k < 3; ++k) {
    const double val = value(vertices[k].first, vertices[k].second);
    if (val > best_value) {
      best_value = val;
      best = vertices[k];
    }
  }
  return best;
}

}  // namespace equity_auction
