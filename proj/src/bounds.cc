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

#include "equity_auction/bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "equity_auction/types.h"

namespace equity_auction {
namespace {

double XLogX(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void CheckGamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be finite and non-negative");
  }
}

}  // namespace

double UStarResidual(double gamma, double u) {
  const double share = gamma / (1.0 + gamma);
  return share * std::log((1.0 + gamma * u) / (1.0 + gamma)) - std::log(u) -
         1.0 / (1.0 + gamma);
}

double UStar(double gamma) {
  CheckGamma(gamma);
  // The residual is positive at 1/e and non-positive at 1.
  double lo = kInvE;
  double hi = 1.0;
  if (UStarResidual(gamma, lo) <= 0.0) return lo;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (UStarResidual(gamma, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double BetaStar(double gamma) {
  CheckGamma(gamma);
  return std::max(1.0 / (1.0 + gamma), kInvE);
}

double BoundObjective(double gamma, double u) {
  return XLogX((1.0 + gamma * u) / (1.0 + gamma)) - XLogX(u);
}

double Theta(double gamma) {
  const double beta = BetaStar(gamma);
  return BoundObjective(gamma, UStar(gamma)) - XLogX(beta);
}

BoundsSummary Bounds(double gamma) {
  BoundsSummary s;
  s.gamma = gamma;
  s.u_star = UStar(gamma);
  s.beta_star = BetaStar(gamma);
  s.theta = BoundObjective(gamma, s.u_star) - XLogX(s.beta_star);
  s.factor = std::numbers::e * s.theta;
  return s;
}

std::string FactorCurve::ToCsv() const {
  std::ostringstream out;
  out << "gamma,u_star,beta_star,theta,factor\n";
  for (const BoundsSummary& r : rows) {
    out << FormatNumber(r.gamma) << ',' << FormatNumber(r.u_star) << ','
        << FormatNumber(r.beta_star) << ',' << FormatNumber(r.theta) << ','
        << FormatNumber(r.factor) << '\n';
  }
  return out.str();
}

FactorCurve ComputeFactorCurve(double gamma_min, double gamma_max,
                               int n_points, GammaSpacing spacing) {
  if (!(gamma_min >= 0.0) || !(gamma_min < gamma_max) ||
      !std::isfinite(gamma_max)) {
    throw std::invalid_argument("need 0 <= gamma_min < gamma_max");
  }
  if (n_points < 2) throw std::invalid_argument("need at least 2 points");

  std::vector<double> gammas;
  gammas.reserve(n_points);
  if (spacing == GammaSpacing::kLinear || gamma_max <= 1.0 || n_points < 3) {
    for (int k = 0; k < n_points; ++k) {
      gammas.push_back(gamma_min +
                       (gamma_max - gamma_min) * k / (n_points - 1));
    }
  } else {
    // Split points between the linear and logarithmic parts in proportion to
    // the range each covers on a log-like scale; each part gets at least one.
    const double knee = std::max(gamma_min, 1.0);
    const double linear_span = knee - gamma_min;
    const double log_span = std::log(gamma_max / knee);
    int linear_points = 0;
    if (linear_span > 0.0) {
      linear_points = static_cast<int>(std::lround(
          (n_points - 1) * linear_span / (linear_span + log_span)));
      linear_points = std::clamp(linear_points, 1, n_points - 2);
    }
    for (int k = 0; k < linear_points; ++k) {
      gammas.push_back(gamma_min + linear_span * k / linear_points);
    }
    const int log_points = n_points - linear_points;
    for (int k = 0; k < log_points; ++k) {
      gammas.push_back(knee * std::exp(log_span * k / (log_points - 1)));
    }
    gammas.back() = gamma_max;
  }

  FactorCurve curve;
  curve.max_factor = -kInf;
  for (double g : gammas) {
    curve.rows.push_back(Bounds(g));
    if (curve.rows.back().factor > curve.max_factor) {
      curve.max_factor = curve.rows.back().factor;
      curve.argmax_gamma = g;
    }
  }
  return curve;
}

}  // namespace equity_auction
