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

#include "equity_auction/robust.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace equity_auction {
namespace {

// (1 + log z)^+, zero at z = 0.
double ClampedLog(double z) {
  return z > 0.0 ? std::max(0.0, 1.0 + std::log(z)) : 0.0;
}

double MaxOver(std::span<const double> values, int begin, int end, int skip) {
  double best = -kInf;
  for (int j = begin; j < end; ++j) {
    if (j != skip) best = std::max(best, values[j]);
  }
  return best;
}

}  // namespace

double Ell(const GroupStructure& groups, std::span<const double> values,
           double gamma) {
  if (groups.num_minority() < 1 || groups.num_majority() < 1) {
    throw std::invalid_argument("ell needs both groups to be non-empty");
  }
  const double top_min = values[TopMinority(groups, values)];
  const double top_maj = values[TopMajority(groups, values)];
  return (gamma * top_min + top_maj) / (1.0 + gamma);
}

double Ell(const ValueProfile& profile, double gamma) {
  return Ell(profile.groups(), profile.values(), gamma);
}

double ClampedLogIntegral(double z) {
  return z >= kInvE ? z * std::log(z) + kInvE : 0.0;
}

RobustMechanism::RobustMechanism(GroupStructure groups, double gamma)
    : groups_(groups), gamma_(gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be finite and non-negative");
  }
}

void RobustMechanism::Allocate(std::span<const double> values,
                               std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  const int top_min = TopMinority(groups_, values);
  const int top_maj = TopMajority(groups_, values);
  if (top_maj >= 0 && values[top_maj] > values[top_min]) {
    const double weight = ClampedLog(Ell(groups_, values, gamma_));
    out[top_min] = gamma_ / (1.0 + gamma_) * weight;
    out[top_maj] = weight / (1.0 + gamma_);
    return;
  }
  out[top_min] = ClampedLog(values[top_min]);
}

void RobustMechanism::Pay(std::span<const double> values,
                          std::span<double> out) const {
  const int n = groups_.size();
  const int num_min = groups_.num_minority();
  std::vector<double> q(n);
  Allocate(values, q);
  std::fill(out.begin(), out.end(), 0.0);
  const double share = gamma_ / (1.0 + gamma_);
  for (int i = 0; i < n; ++i) {
    if (q[i] == 0.0) continue;
    const double v = values[i];
    double integral = 0.0;
    if (groups_.IsMinority(i)) {
      // Own-group top from `own_rival` on; below the majority top the
      // allocation is share (1 + log(share x + top_maj/(1+gamma)))^+, whose
      // integral in x is the clamped-log antiderivative in that argument.
      const double own_rival = std::max(0.0, MaxOver(values, 0, num_min, i));
      const double top_maj = MaxOver(values, num_min, n, -1);
      if (top_maj > -kInf) {
        const double hi = std::min(v, top_maj);
        if (share > 0.0 && own_rival < hi) {
          auto arg = [&](double x) {
            return share * x + top_maj / (1.0 + gamma_);
          };
          integral += ClampedLogIntegral(arg(hi)) -
                      ClampedLogIntegral(arg(own_rival));
        }
      }
      const double lo = std::max(own_rival, top_maj);
      if (lo < v) {
        integral += ClampedLogIntegral(v) - ClampedLogIntegral(lo);
      }
    } else {
      // Served once above the minority top and the other majority bidders;
      // the allocation is (1 + log((gamma top_min + x)/(1+gamma)))^+/(1+gamma).
      const double top_min = MaxOver(values, 0, num_min, -1);
      const double lo = std::max(top_min, MaxOver(values, num_min, n, i));
      if (lo < v) {
        auto arg = [&](double x) {
          return (gamma_ * top_min + x) / (1.0 + gamma_);
        };
        integral = ClampedLogIntegral(arg(v)) - ClampedLogIntegral(arg(lo));
      }
    }
    out[i] = q[i] * v - integral;
  }
}

SetAside RobustMechanism::Decompose(std::span<const double> values) const {
  const int n = groups_.size();
  SetAside split{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  const int top_min = TopMinority(groups_, values);
  const int top_maj = TopMajority(groups_, values);
  const bool majority_leads = top_maj >= 0 && values[top_maj] > values[top_min];
  const double benchmark =
      majority_leads ? Ell(groups_, values, gamma_) : values[top_min];
  const double weight = ClampedLog(benchmark);
  split.all[majority_leads ? top_maj : top_min] = weight;
  split.minority[top_min] = weight;
  return split;
}

}  // namespace equity_auction
