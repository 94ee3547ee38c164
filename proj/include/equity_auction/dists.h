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

// Value distributions on [0,1] and [0,1]^I: regular marginals with virtual
// values, product joints, the two-bidder Bernoulli corner distribution and
// its contamination mixture, and grid-discretized mass tables.

#ifndef EQUITY_AUCTION_DISTS_H_
#define EQUITY_AUCTION_DISTS_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace equity_auction {

// A distribution on [0,1] with strictly positive density on (0,1) and a
// non-decreasing virtual value. Immutable once built.
class RegularMarginal {
 public:
  enum class Family { kUniform, kBeta22, kCustomTable };

  static RegularMarginal Uniform();
  // Beta(2,2): F(v) = 3v^2 - 2v^3, f(v) = 6v(1-v).
  static RegularMarginal Beta22();
  // Piecewise-constant density over equal-width bins of [0,1]. The densities
  // are normalized; throws std::invalid_argument if a bin is non-positive or
  // the virtual value decreases anywhere on a 1e-3 grid.
  static RegularMarginal CustomTable(std::vector<double> bin_densities);

  Family family() const { return family_; }
  std::string Name() const;
  std::span<const double> bin_densities() const { return densities_; }

  double Cdf(double v) const;
  double Density(double v) const;

  // v - (1 - F(v)) / f(v). Exactly 1 at v = 1; -inf where f(v) = 0 at v = 0.
  // Throws std::domain_error outside [0,1].
  double VirtualValue(double v) const;

  // Smallest v in [0,1] with VirtualValue(v) >= y (within 1e-12). Returns 0
  // when VirtualValue(0) >= y. Throws std::domain_error for y > 1 or NaN,
  // since no value reaches such a level.
  double InverseVirtualValue(double y) const;

  // Inverse CDF, u in [0,1].
  double Quantile(double u) const;

  bool operator==(const RegularMarginal& other) const;

 private:
  RegularMarginal(Family family, std::vector<double> densities);

  Family family_;
  std::vector<double> densities_;  // custom table only
  std::vector<double> cdf_knots_;  // F at bin edges, custom table only
};

// {"family":"uniform"}, {"family":"beta22"} or
// {"family":"custom-table","densities":[...]}.
RegularMarginal MarginalFromJson(const nlohmann::json& spec);

// Checks the regularity invariants on a `step` grid; returns an empty string
// when they hold, otherwise a description of the first failure.
std::string CheckRegularity(const RegularMarginal& d, double step = 1e-3);

// Regular grid {0, 1/k, ..., 1}^dims with last coordinate varying fastest.
class Grid {
 public:
  Grid(int divisions, int dims);

  // Throws std::invalid_argument unless step = 1/k for an integer k >= 2.
  static Grid FromStep(double step, int dims);

  int divisions() const { return divisions_; }
  int points_per_axis() const { return divisions_ + 1; }
  int dims() const { return dims_; }
  double step() const { return 1.0 / divisions_; }
  std::int64_t size() const { return size_; }
  double Value(int k) const { return static_cast<double>(k) / divisions_; }

  // Axis indices of a flat index, and the inverse.
  void Decode(std::int64_t index, std::span<int> coords) const;
  std::int64_t Encode(std::span<const int> coords) const;
  // Coordinates of a flat index as values in [0,1].
  void Point(std::int64_t index, std::span<double> values) const;
  // Flat-index stride of axis `axis`.
  std::int64_t Stride(int axis) const { return strides_[axis]; }
  // Nearest grid index of a value, ties toward the lower index.
  int Snap(double v) const;

  bool operator==(const Grid&) const = default;

 private:
  int divisions_;
  int dims_;
  std::int64_t size_;
  std::vector<std::int64_t> strides_;
};

// Probability masses on every point of a Grid.
struct GridMasses {
  Grid grid;
  std::vector<double> mass;
};

// Flat row-major matrix of sampled profiles.
struct ProfileSample {
  int dims = 0;
  std::vector<double> data;

  std::int64_t size() const {
    return dims == 0 ? 0 : static_cast<std::int64_t>(data.size()) / dims;
  }
  std::span<const double> Row(std::int64_t r) const {
    return std::span<const double>(data).subspan(r * dims, dims);
  }
};

// Uniform double in [0,1) from 53 high bits; platform independent.
double UniformDraw(std::mt19937_64& rng);

class JointValueDistribution {
 public:
  enum class Kind { kProduct, kContaminated, kDiscreteTable };

  static JointValueDistribution Product(std::vector<RegularMarginal> marginals);
  // (1 - eps) * product + eps * B^rho. Two bidders only.
  static JointValueDistribution Contaminated(
      std::vector<RegularMarginal> marginals, double eps, double rho);
  // Throws std::invalid_argument if a mass is negative or they do not sum to
  // one within 1e-9.
  static JointValueDistribution DiscreteTable(GridMasses masses);

  // {"marginals":[{"family":"beta22"},...],
  //  "contamination":{"eps":0.1,"rho":0.0}}
  static JointValueDistribution FromJson(const nlohmann::json& config);
  nlohmann::json ToJson() const;

  Kind kind() const { return kind_; }
  int dims() const { return dims_; }
  std::span<const RegularMarginal> marginals() const { return marginals_; }
  double eps() const { return eps_; }
  double rho() const { return rho_; }
  const GridMasses& table() const;
  std::string Describe() const;

  // One draw into `out` (size dims()).
  void Draw(std::mt19937_64& rng, std::span<double> out) const;

 private:
  JointValueDistribution() = default;

  Kind kind_ = Kind::kProduct;
  int dims_ = 0;
  std::vector<RegularMarginal> marginals_;
  double eps_ = 0.0;
  double rho_ = 0.0;
  std::vector<GridMasses> table_;  // holds one entry for discrete tables
  std::vector<double> table_cumulative_;
};

// Masses of B^rho on (0,0), (0,1), (1,0), (1,1).
std::vector<double> BernoulliCornerMasses(double rho);

// n i.i.d. draws from `joint` with a std::mt19937_64 seeded by `seed`.
ProfileSample SampleJoint(const JointValueDistribution& joint, std::int64_t n,
                          std::uint64_t seed);

// Assigns every grid point the probability of its lower-left cell
// prod_i (g_i - step, g_i] (the point {0} on axes where g_i = 0). Atoms of
// the corner distribution land on grid points exactly.
JointValueDistribution Discretize(const JointValueDistribution& joint,
                                  double step);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_DISTS_H_
