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

// Worst-case regret bound theta(gamma) of the robust mechanism and the
// approximation factor e * theta relative to the 1/e lower bound.

#ifndef EQUITY_AUCTION_BOUNDS_H_
#define EQUITY_AUCTION_BOUNDS_H_

#include <string>
#include <vector>

namespace equity_auction {

// gamma/(1+gamma) log((1+gamma u)/(1+gamma)) - log u - 1/(1+gamma).
double UStarResidual(double gamma, double u);

// Root of UStarResidual on [1/e, 1] by bisection to 1e-12. Throws
// std::invalid_argument if gamma < 0 or is not finite.
double UStar(double gamma);

// max{1/(1+gamma), 1/e}.
double BetaStar(double gamma);

// Univariate bound objective maximized by u*:
// ((1+gamma u)/(1+gamma)) log((1+gamma u)/(1+gamma)) - u log u.
double BoundObjective(double gamma, double u);

// BoundObjective(gamma, u*) - beta* log beta*.
double Theta(double gamma);

struct BoundsSummary {
  double gamma = 0.0;
  double u_star = 0.0;
  double beta_star = 0.0;
  double theta = 0.0;
  double factor = 0.0;  // e * theta
};

BoundsSummary Bounds(double gamma);

enum class GammaSpacing {
  kLinear,
  // Linear on [gamma_min, 1], logarithmic above 1.
  kMixed,
};

struct FactorCurve {
  std::vector<BoundsSummary> rows;
  double argmax_gamma = 0.0;
  double max_factor = 0.0;

  // Header `gamma,u_star,beta_star,theta,factor`.
  std::string ToCsv() const;
};

// Evaluates n_points gammas in [gamma_min, gamma_max]. Throws
// std::invalid_argument unless 0 <= gamma_min < gamma_max and n_points >= 2.
FactorCurve ComputeFactorCurve(double gamma_min, double gamma_max,
                               int n_points,
                               GammaSpacing spacing = GammaSpacing::kLinear);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_BOUNDS_H_
