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

#include "equity_auction/stochastic.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace equity_auction {
namespace {

// gamma * psi with 0 * (-inf) read as 0.
double Scaled(double gamma, double psi) {
  return gamma == 0.0 ? 0.0 : gamma * psi;
}

double MaxOver(std::span<const double> psi, int begin, int end, int skip) {
  double best = -kInf;
  for (int j = begin; j < end; ++j) {
    if (j != skip) best = std::max(best, psi[j]);
  }
  return best;
}

}  // namespace

StochasticMechanism::StochasticMechanism(GroupStructure groups, double gamma,
                                         std::vector<RegularMarginal> marginals)
    : groups_(groups), gamma_(gamma), marginals_(std::move(marginals)) {
  if (static_cast<int>(marginals_.size()) != groups_.size()) {
    throw std::invalid_argument("one marginal per bidder is required");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be finite and non-negative");
  }
  for (const RegularMarginal& d : marginals_) {
    if (std::string why = CheckRegularity(d); !why.empty()) {
      throw std::invalid_argument("irregular marginal: " + why);
    }
  }
}

void StochasticMechanism::VirtualValues(std::span<const double> values,
                                        std::span<double> out) const {
  for (int i = 0; i < groups_.size(); ++i) {
    out[i] = marginals_[i].VirtualValue(values[i]);
  }
}

void StochasticMechanism::Allocate(std::span<const double> values,
                                   std::span<double> out) const {
  const int n = groups_.size();
  double psi_buffer[16];
  std::vector<double> psi_heap;
  std::span<double> psi(psi_buffer, n <= 16 ? n : 0);
  if (n > 16) {
    psi_heap.resize(n);
    psi = psi_heap;
  }
  VirtualValues(values, psi);
  std::fill(out.begin(), out.end(), 0.0);

  const int top_all = LexArgMax(psi, 0, n);
  const int top_min = TopMinority(groups_, psi);
  if (groups_.IsMinority(top_all)) {
    if (psi[top_all] >= 0.0) out[top_all] = 1.0;
    return;
  }
  const double top_min_psi = psi[top_min];
  const double top_maj_psi = psi[top_all];
  if (top_maj_psi + Scaled(gamma_, top_min_psi) >= 0.0) {
    out[top_min] = gamma_ / (1.0 + gamma_);
    out[top_all] = 1.0 / (1.0 + gamma_);
  }
}

std::vector<AllocationJump> StochasticMechanism::OwnValueJumps(
    std::span<const double> values, int bidder) const {
  const int n = groups_.size();
  const int num_min = groups_.num_minority();
  std::vector<double> psi(n);
  VirtualValues(values, psi);
  const RegularMarginal& own = marginals_[bidder];

  // Smallest own value whose virtual value reaches `level`, or +inf.
  auto threshold = [&](double level) {
    if (level > 1.0) return kInf;
    return own.InverseVirtualValue(level);
  };

  std::vector<AllocationJump> jumps;
  if (groups_.IsMinority(bidder)) {
    const double other_min = MaxOver(psi, 0, num_min, bidder);
    const double top_maj = MaxOver(psi, num_min, n, -1);
    const double full_level = std::max({other_min, top_maj, 0.0});
    // Set-aside share region: psi >= other_min, psi < top_maj and
    // top_maj + gamma psi >= 0.
    double shared_level = kInf;
    if (gamma_ > 0.0 && top_maj > -kInf) {
      shared_level = std::max(other_min, -top_maj / gamma_);
    }
    const bool has_shared = shared_level < top_maj;
    const double full_at = threshold(full_level);
    if (has_shared) {
      const double shared_at = threshold(shared_level);
      if (shared_at < full_at) {
        jumps.push_back({shared_at, gamma_ / (1.0 + gamma_)});
        if (full_at <= 1.0) jumps.push_back({full_at, 1.0 / (1.0 + gamma_)});
        return jumps;
      }
    }
    if (full_at <= 1.0) jumps.push_back({full_at, 1.0});
    return jumps;
  }

  const double others = MaxOver(psi, 0, n, bidder);
  const double top_min = MaxOver(psi, 0, num_min, -1);
  const double level = std::max(others, -Scaled(gamma_, top_min));
  const double at = threshold(level);
  if (at <= 1.0) jumps.push_back({at, 1.0 / (1.0 + gamma_)});
  return jumps;
}

void StochasticMechanism::Pay(std::span<const double> values,
                              std::span<double> out) const {
  const int n = groups_.size();
  std::vector<double> q(n);
  Allocate(values, q);
  for (int i = 0; i < n; ++i) {
    if (q[i] == 0.0) {
      out[i] = 0.0;
      continue;
    }
    double integral = 0.0;
    for (const AllocationJump& jump : OwnValueJumps(values, i)) {
      integral += jump.size * std::max(0.0, values[i] - jump.at);
    }
    out[i] = q[i] * values[i] - integral;
  }
}

SetAside StochasticMechanism::Decompose(std::span<const double> values) const {
  const int n = groups_.size();
  std::vector<double> psi(n);
  VirtualValues(values, psi);
  SetAside split{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  const int top_all = LexArgMax(psi, 0, n);
  const int top_min = TopMinority(groups_, psi);
  // Both parts share one reserve condition; when the overall top is a
  // minority bidder it reduces to psi >= 0.
  if (psi[top_all] + Scaled(gamma_, psi[top_min]) >= 0.0) {
    split.all[top_all] = 1.0;
    split.minority[top_min] = 1.0;
  }
  return split;
}

RevenueEstimate ExpectedRevenueStar(const StochasticMechanism& mechanism,
                                    RevenueEstimator estimator,
                                    std::int64_t resolution,
                                    std::uint64_t seed) {
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  const int n = mechanism.groups().size();
  std::vector<double> v(n), q(n), m(n), psi(n);

  // Accumulates paired sums of revenue r and virtual surplus s.
  double sum_r = 0.0, sum_s = 0.0, sum_rr = 0.0, sum_ss = 0.0, sum_dd = 0.0;
  double weight_total = 0.0;
  auto accumulate = [&](double weight) {
    mechanism.Allocate(v, q);
    mechanism.Pay(v, m);
    mechanism.VirtualValues(v, psi);
    double r = 0.0, s = 0.0;
    for (int i = 0; i < n; ++i) {
      r += m[i];
      if (q[i] != 0.0) s += psi[i] * q[i];
    }
    sum_r += weight * r;
    sum_s += weight * s;
    sum_rr += weight * r * r;
    sum_ss += weight * s * s;
    sum_dd += weight * (r - s) * (r - s);
    weight_total += weight;
  };

  RevenueEstimate estimate;
  if (estimator == RevenueEstimator::kMonteCarlo) {
    std::mt19937_64 rng(seed);
    for (std::int64_t s = 0; s < resolution; ++s) {
      for (int i = 0; i < n; ++i) {
        v[i] = mechanism.marginals()[i].Quantile(UniformDraw(rng));
      }
      accumulate(1.0);
    }
  } else {
    std::int64_t cells = 1;
    for (int i = 0; i < n; ++i) cells *= resolution;
    std::vector<std::vector<double>> nodes(n);
    for (int i = 0; i < n; ++i) {
      for (std::int64_t k = 0; k < resolution; ++k) {
        nodes[i].push_back(mechanism.marginals()[i].Quantile(
            (static_cast<double>(k) + 0.5) / static_cast<double>(resolution)));
      }
    }
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      std::int64_t rest = cell;
      for (int i = n - 1; i >= 0; --i) {
        v[i] = nodes[i][rest % resolution];
        rest /= resolution;
      }
      accumulate(1.0);
    }
  }

  const double count = weight_total;
  estimate.evaluations = static_cast<std::int64_t>(count);
  estimate.revenue = sum_r / count;
  estimate.virtual_surplus = sum_s / count;
  const double diff = estimate.revenue - estimate.virtual_surplus;
  if (estimator == RevenueEstimator::kMonteCarlo) {
    auto se = [&](double sum, double sum_sq) {
      const double mean = sum / count;
      const double var = std::max(0.0, (sum_sq / count - mean * mean)) *
                         count / std::max(1.0, count - 1.0);
      return std::sqrt(var / count);
    };
    estimate.revenue_se = se(sum_r, sum_rr);
    estimate.virtual_surplus_se = se(sum_s, sum_ss);
    estimate.difference_se = se(sum_r - sum_s, sum_dd);
    estimate.tolerance = 3.0 * estimate.difference_se + 1e-12;
  } else {
    estimate.tolerance = 2.0 * n / static_cast<double>(resolution);
  }
  estimate.identity_holds = std::abs(diff) <= estimate.tolerance;
  return estimate;
}

}  // namespace equity_auction
