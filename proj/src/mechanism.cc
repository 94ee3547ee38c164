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

#include "equity_auction/mechanism.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace equity_auction {

Outcome Mechanism::Evaluate(std::span<const double> values) const {
  CheckProfile(groups(), values);
  Outcome outcome;
  outcome.allocation.resize(values.size());
  outcome.payment.resize(values.size());
  Allocate(values, outcome.allocation);
  Pay(values, outcome.payment);
  return outcome;
}

Outcome Mechanism::Evaluate(const ValueProfile& profile) const {
  if (!(profile.groups() == groups())) {
    throw std::invalid_argument(
        "profile and mechanism group structures differ");
  }
  return Evaluate(profile.values());
}

FunctionMechanism::FunctionMechanism(std::string name, GroupStructure groups,
                                     double gamma, Rule allocate, Rule pay)
    : name_(std::move(name)),
      groups_(groups),
      gamma_(gamma),
      allocate_(std::move(allocate)),
      pay_(std::move(pay)) {}

void FunctionMechanism::Allocate(std::span<const double> values,
                                 std::span<double> out) const {
  allocate_(values, out);
}

void FunctionMechanism::Pay(std::span<const double> values,
                            std::span<double> out) const {
  pay_(values, out);
}

FunctionMechanism ZeroMechanism(GroupStructure groups, double gamma) {
  auto zero = [](std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
  return FunctionMechanism("zero", groups, gamma, zero, zero);
}

double HindsightRevenue(const GroupStructure& groups,
                        std::span<const double> values, double gamma) {
  if (groups.num_minority() < 1) {
    throw std::invalid_argument("hindsight revenue needs a minority bidder");
  }
  const double top_all = *std::max_element(values.begin(), values.end());
  const double top_min = values[TopMinority(groups, values)];
  return top_all / (1.0 + gamma) + gamma / (1.0 + gamma) * top_min;
}

double HindsightRevenue(const ValueProfile& profile, double gamma) {
  return HindsightRevenue(profile.groups(), profile.values(), gamma);
}

double ExPostRegret(const Mechanism& mechanism,
                    std::span<const double> values) {
  std::vector<double> payment(values.size());
  mechanism.Pay(values, payment);
  double revenue = 0.0;
  for (double m : payment) revenue += m;
  return HindsightRevenue(mechanism.groups(), values, mechanism.gamma()) -
         revenue;
}

double ExPostRegret(const Mechanism& mechanism, const ValueProfile& profile) {
  if (!(profile.groups() == mechanism.groups())) {
    throw std::invalid_argument(
        "profile and mechanism group structures differ");
  }
  return ExPostRegret(mechanism, profile.values());
}

std::int64_t AuditReport::Count(const std::string& constraint) const {
  return std::count_if(
      violations.begin(), violations.end(),
      [&](const Violation& v) { return v.constraint == constraint; });
}

std::string AuditReport::ToCsv() const {
  std::ostringstream os;
  os << "constraint,profile,magnitude\n";
  for (const Violation& v : violations) {
    os << v.constraint;
    if (v.bidder >= 0) os << ':' << v.bidder + 1;
    os << ',';
    for (std::size_t i = 0; i < v.profile.size(); ++i) {
      os << (i ? ";" : "") << FormatNumber(v.profile[i]);
    }
    os << ',' << FormatNumber(v.magnitude) << '\n';
  }
  return os.str();
}

namespace {

struct Bracket {
  double lo, flo, hi, fhi;
};

// Shrinks [lo, hi] around the point where f switches from near flo to near
// fhi.
Bracket LocateJump(const std::function<double(double)>& f, Bracket b) {
  for (int iter = 0; iter < 64 && b.hi - b.lo > 1e-15; ++iter) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double fmid = f(mid);
    if (std::abs(fmid - b.flo) <= std::abs(fmid - b.fhi)) {
      b.lo = mid;
      b.flo = fmid;
    } else {
      b.hi = mid;
      b.fhi = fmid;
    }
  }
  return b;
}

double SimpsonPiece(const std::function<double(double)>& f, double a, double b,
                    double fa, double fb, double threshold, int depth) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const bool left_jump = std::abs(fm - fa) > threshold;
  const bool right_jump = std::abs(fb - fm) > threshold;
  if ((!left_jump && !right_jump) || depth > 8 || b - a < 1e-14) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }
  const Bracket jump = left_jump ? LocateJump(f, {a, fa, m, fm})
                                 : LocateJump(f, {m, fm, b, fb});
  return SimpsonPiece(f, a, jump.lo, fa, jump.flo, threshold, depth + 1) +
         SimpsonPiece(f, jump.hi, b, jump.fhi, fb, threshold, depth + 1);
}

class ViolationSink {
 public:
  ViolationSink(AuditReport* report, std::int64_t cap)
      : report_(report), cap_(cap) {}

  void Add(const char* constraint, int bidder, std::span<const double> profile,
           double magnitude) {
    ++report_->total_violations;
    if (static_cast<std::int64_t>(report_->violations.size()) >= cap_) return;
    report_->violations.push_back(
        {constraint, bidder,
         std::vector<double>(profile.begin(), profile.end()), magnitude});
  }

 private:
  AuditReport* report_;
  std::int64_t cap_;
};

// AF, Eq and IR at a single profile.
void CheckProfileConstraints(const Mechanism& mech, std::span<const double> v,
                             std::span<const double> q,
                             std::span<const double> m, double tol,
                             ViolationSink& sink) {
  const GroupStructure& groups = mech.groups();
  double total = 0.0, minority = 0.0, majority = 0.0;
  for (int i = 0; i < groups.size(); ++i) {
    total += q[i];
    (groups.IsMinority(i) ? minority : majority) += q[i];
    if (q[i] < -tol || q[i] > 1.0 + tol) {
      sink.Add("AF", i, v, std::max(-q[i], q[i] - 1.0));
    }
    const double ir_gap = m[i] - q[i] * v[i];
    if (ir_gap > tol) sink.Add("IR", i, v, ir_gap);
  }
  if (total - 1.0 > tol) sink.Add("AF", -1, v, total - 1.0);
  const double eq_gap = mech.gamma() * majority - minority;
  if (eq_gap > tol) sink.Add("Eq", -1, v, eq_gap);
}

AuditReport ExhaustiveAudit(const Mechanism& mech, const Grid& grid,
                            const AuditOptions& options) {
  const int dims = grid.dims();
  const int n = grid.points_per_axis();
  const double tol = options.tolerance;
  const bool tabulated = mech.tabulation_grid().has_value();

  AuditReport report;
  report.exhaustive = true;
  report.profiles_checked = grid.size();
  ViolationSink sink(&report, options.max_recorded);

  std::vector<double> q(grid.size() * dims), m(grid.size() * dims);
  std::vector<double> v(dims);
  for (std::int64_t idx = 0; idx < grid.size(); ++idx) {
    grid.Point(idx, v);
    std::span<double> qi(q.data() + idx * dims, dims);
    std::span<double> mi(m.data() + idx * dims, dims);
    mech.Allocate(v, qi);
    mech.Pay(v, mi);
    CheckProfileConstraints(mech, v, qi, mi, tol, sink);
  }

  const int panels_per_segment = std::max(
      1, static_cast<int>(std::lround(options.simpson_panels * grid.step())));
  std::vector<int> coords(dims);
  std::vector<double> line(dims), q_buffer(dims);
  std::vector<double> cumulative(n);
  for (int i = 0; i < dims; ++i) {
    const std::int64_t stride = grid.Stride(i);
    for (std::int64_t base = 0; base < grid.size(); ++base) {
      grid.Decode(base, coords);
      if (coords[i] != 0) continue;
      grid.Point(base, line);
      auto at = [&](int k) { return (base + k * stride) * dims + i; };

      // (i) monotonicity along the own-value axis.
      for (int k = 0; k + 1 < n; ++k) {
        const double drop = q[at(k)] - q[at(k + 1)];
        if (drop > tol) {
          line[i] = grid.Value(k + 1);
          sink.Add("monotonicity", i, line, drop);
        }
      }

      if (tabulated) {
        // Pairwise IC among grid reports on this line.
        for (int k = 0; k < n; ++k) {
          const double value = grid.Value(k);
          const double truthful = q[at(k)] * value - m[at(k)];
          double worst = 0.0;
          for (int w = 0; w < n; ++w) {
            worst = std::max(worst, q[at(w)] * value - m[at(w)] - truthful);
          }
          if (worst > tol) {
            line[i] = value;
            sink.Add("IC", i, line, worst);
          }
        }
        continue;
      }

      // (ii) payment identity with m_i(0, v_-i) = 0.
      auto own_allocation = [&](double x) {
        line[i] = x;
        mech.Allocate(line, q_buffer);
        return q_buffer[i];
      };
      cumulative[0] = 0.0;
      for (int k = 1; k < n; ++k) {
        cumulative[k] =
            cumulative[k - 1] + PiecewiseSimpson(own_allocation,
                                                 grid.Value(k - 1),
                                                 grid.Value(k),
                                                 panels_per_segment);
      }
      for (int k = 0; k < n; ++k) {
        const double value = grid.Value(k);
        const double expected = q[at(k)] * value - cumulative[k];
        const double gap = std::abs(m[at(k)] - expected);
        if (gap > tol) {
          line[i] = value;
          sink.Add("payment_identity", i, line, gap);
        }
      }
    }
  }
  return report;
}

AuditReport SampledAudit(const Mechanism& mech, const AuditOptions& options) {
  const GroupStructure& groups = mech.groups();
  const int dims = groups.size();
  const double tol = options.tolerance;
  const Grid axis = Grid::FromStep(options.step, 1);

  std::vector<std::vector<double>> profiles;
  for (std::int64_t mask = 0; mask < (std::int64_t{1} << dims); ++mask) {
    std::vector<double> corner(dims);
    for (int i = 0; i < dims; ++i) corner[i] = (mask >> i) & 1 ? 1.0 : 0.0;
    profiles.push_back(std::move(corner));
  }
  std::mt19937_64 rng(options.seed);
  for (std::int64_t s = 0; s < options.sampled_profiles; ++s) {
    std::vector<double> v(dims);
    for (double& x : v) x = UniformDraw(rng);
    profiles.push_back(std::move(v));
  }

  AuditReport report;
  report.exhaustive = false;
  report.profiles_checked = static_cast<std::int64_t>(profiles.size());
  ViolationSink sink(&report, options.max_recorded);

  std::vector<double> q(dims), m(dims), q_buffer(dims), line(dims);
  for (std::size_t p = 0; p < profiles.size(); ++p) {
    const std::vector<double>& v = profiles[p];
    mech.Allocate(v, q);
    mech.Pay(v, m);
    CheckProfileConstraints(mech, v, q, m, tol, sink);

    for (int i = 0; i < dims; ++i) {
      line = v;
      auto own_allocation = [&](double x) {
        line[i] = x;
        mech.Allocate(line, q_buffer);
        return q_buffer[i];
      };
      // (i) monotonicity along the own axis through v_i.
      std::vector<double> xs;
      for (int k = 0; k < axis.points_per_axis(); ++k) {
        xs.push_back(axis.Value(k));
      }
      xs.push_back(v[i]);
      std::sort(xs.begin(), xs.end());
      double prev = own_allocation(xs.front());
      for (std::size_t k = 1; k < xs.size(); ++k) {
        const double cur = own_allocation(xs[k]);
        if (prev - cur > tol) {
          line[i] = xs[k];
          sink.Add("monotonicity", i, line, prev - cur);
        }
        prev = cur;
      }
      // (ii) payment identity.
      if (static_cast<std::int64_t>(p) < options.payment_check_profiles) {
        const int panels = std::max(
            2, static_cast<int>(std::ceil(options.simpson_panels * v[i])));
        const double integral =
            PiecewiseSimpson(own_allocation, 0.0, v[i], panels);
        const double gap = std::abs(m[i] - (q[i] * v[i] - integral));
        if (gap > tol) sink.Add("payment_identity", i, v, gap);
      }
    }
  }
  return report;
}

}  // namespace

double PiecewiseSimpson(const std::function<double(double)>& f, double a,
                        double b, int panels, double jump_threshold) {
  if (b <= a) return 0.0;
  panels = std::max(1, panels);
  const double h = (b - a) / panels;
  double total = 0.0;
  double x0 = a;
  double f0 = f(a);
  for (int k = 1; k <= panels; ++k) {
    const double x1 = (k == panels) ? b : a + k * h;
    const double f1 = f(x1);
    total += SimpsonPiece(f, x0, x1, f0, f1, jump_threshold, 0);
    x0 = x1;
    f0 = f1;
  }
  return total;
}

AuditReport AuditFeasibility(const Mechanism& mechanism,
                             const AuditOptions& options) {
  const int dims = mechanism.groups().size();
  if (auto grid = mechanism.tabulation_grid()) {
    return ExhaustiveAudit(mechanism, *grid, options);
  }
  if (dims <= options.max_exhaustive_bidders) {
    return ExhaustiveAudit(mechanism, Grid::FromStep(options.step, dims),
                           options);
  }
  return SampledAudit(mechanism, options);
}

}  // namespace equity_auction
