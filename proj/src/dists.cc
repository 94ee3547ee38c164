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

#include "equity_auction/dists.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "equity_auction/types.h"

namespace equity_auction {
namespace {

constexpr double kMassTolerance = 1e-9;

void CheckUnit(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error("value outside [0,1]");
  }
}

}  // namespace

RegularMarginal::RegularMarginal(Family family, std::vector<double> densities)
    : family_(family), densities_(std::move(densities)) {
  if (family_ != Family::kCustomTable) return;
  const int bins = static_cast<int>(densities_.size());
  cdf_knots_.assign(bins + 1, 0.0);
  for (int k = 0; k < bins; ++k) {
    cdf_knots_[k + 1] = cdf_knots_[k] + densities_[k] / bins;
  }
  cdf_knots_[bins] = 1.0;
}

RegularMarginal RegularMarginal::Uniform() {
  return RegularMarginal(Family::kUniform, {});
}

RegularMarginal RegularMarginal::Beta22() {
  return RegularMarginal(Family::kBeta22, {});
}

RegularMarginal RegularMarginal::CustomTable(
    std::vector<double> bin_densities) {
  if (bin_densities.empty()) {
    throw std::invalid_argument("custom table needs at least one bin");
  }
  double total = 0.0;
  for (double d : bin_densities) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("custom table densities must be positive");
    }
    total += d;
  }
  const double scale = static_cast<double>(bin_densities.size()) / total;
  for (double& d : bin_densities) d *= scale;
  RegularMarginal marginal(Family::kCustomTable, std::move(bin_densities));
  if (std::string why = CheckRegularity(marginal); !why.empty()) {
    throw std::invalid_argument("irregular custom table: " + why);
  }
  return marginal;
}

std::string RegularMarginal::Name() const {
  switch (family_) {
    case Family::kUniform:
      return "uniform";
    case Family::kBeta22:
      return "beta22";
    case Family::kCustomTable:
      return "custom-table";
  }
  return "unknown";
}

double RegularMarginal::Cdf(double v) const {
  CheckUnit(v);
  switch (family_) {
    case Family::kUniform:
      return v;
    case Family::kBeta22:
      return v * v * (3.0 - 2.0 * v);
    case Family::kCustomTable: {
      const int bins = static_cast<int>(densities_.size());
      const int k = std::min(bins - 1, static_cast<int>(v * bins));
      return cdf_knots_[k] +
             densities_[k] * (v - static_cast<double>(k) / bins);
    }
  }
  return 0.0;
}

double RegularMarginal::Density(double v) const {
  CheckUnit(v);
  switch (family_) {
    case Family::kUniform:
      return 1.0;
    case Family::kBeta22:
      return 6.0 * v * (1.0 - v);
    case Family::kCustomTable: {
      const int bins = static_cast<int>(densities_.size());
      return densities_[std::min(bins - 1, static_cast<int>(v * bins))];
    }
  }
  return 0.0;
}

double RegularMarginal::VirtualValue(double v) const {
  CheckUnit(v);
  if (v == 1.0) return 1.0;
  switch (family_) {
    case Family::kUniform:
      return 2.0 * v - 1.0;
    case Family::kBeta22:
      // (1 - F) / f = (1 - v)(1 + 2v) / (6v) after cancelling (1 - v).
      if (v == 0.0) return -kInf;
      return v - (1.0 - v) * (1.0 + 2.0 * v) / (6.0 * v);
    case Family::kCustomTable:
      return v - (1.0 - Cdf(v)) / Density(v);
  }
  return 0.0;
}

double RegularMarginal::InverseVirtualValue(double y) const {
  if (std::isnan(y) || y > 1.0) {
    throw std::domain_error("virtual value level above psi(1) = 1");
  }
  if (VirtualValue(0.0) >= y) return 0.0;
  if (family_ == Family::kUniform) {
    // psi(v) = 2v - 1.
    return std::clamp(0.5 * (y + 1.0), 0.0, 1.0);
  }
  double lo = 0.0;  // psi(lo) < y
  double hi = 1.0;  // psi(hi) >= y
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (VirtualValue(mid) >= y) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double RegularMarginal::Quantile(double u) const {
  CheckUnit(u);
  switch (family_) {
    case Family::kUniform:
      return u;
    case Family::kBeta22:
      // Inverse of 3v^2 - 2v^3 via its trigonometric form.
      return std::clamp(0.5 - std::sin(std::asin(1.0 - 2.0 * u) / 3.0), 0.0,
                        1.0);
    case Family::kCustomTable: {
      const int bins = static_cast<int>(densities_.size());
      auto it = std::upper_bound(cdf_knots_.begin(), cdf_knots_.end(), u);
      const int k = std::clamp(
          static_cast<int>(it - cdf_knots_.begin()) - 1, 0, bins - 1);
      const double v =
          static_cast<double>(k) / bins + (u - cdf_knots_[k]) / densities_[k];
      return std::clamp(v, 0.0, 1.0);
    }
  }
  return 0.0;
}

bool RegularMarginal::operator==(const RegularMarginal& other) const {
  return family_ == other.family_ && densities_ == other.densities_;
}

std::string CheckRegularity(const RegularMarginal& d, double step) {
  const int n = static_cast<int>(std::lround(1.0 / step));
  if (d.Cdf(0.0) != 0.0) return "cdf(0) != 0";
  if (std::abs(d.Cdf(1.0) - 1.0) > 1e-12) return "cdf(1) != 1";
  double prev_cdf = 0.0;
  double prev_psi = -kInf;
  for (int k = 0; k <= n; ++k) {
    const double v = static_cast<double>(k) / n;
    const double cdf = d.Cdf(v);
    if (cdf < prev_cdf - 1e-15)
      return "cdf decreases near v=" + FormatNumber(v);
    if (v > 0.0 && v < 1.0 && !(d.Density(v) > 0.0)) {
      return "density not positive at v=" + FormatNumber(v);
    }
    const double psi = d.VirtualValue(v);
    if (psi < prev_psi - 1e-12) {
      return "virtual value decreases near v=" + FormatNumber(v);
    }
    prev_cdf = cdf;
    prev_psi = psi;
  }
  return "";
}

Grid::Grid(int divisions, int dims) : divisions_(divisions), dims_(dims) {
  if (divisions < 1 || dims < 1) {
    throw std::invalid_argument("grid needs divisions >= 1 and dims >= 1");
  }
  strides_.assign(dims, 1);
  for (int i = dims - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * (divisions + 1);
  }
  size_ = strides_[0] * (divisions + 1);
}

Grid Grid::FromStep(double step, int dims) {
  if (!(step > 0.0) || step > 0.5) {
    throw std::invalid_argument("grid step must be 1/k with k >= 2");
  }
  const double k = std::round(1.0 / step);
  if (std::abs(k * step - 1.0) > 1e-9 || k < 2) {
    throw std::invalid_argument("grid step must be 1/k with k >= 2");
  }
  return Grid(static_cast<int>(k), dims);
}

void Grid::Decode(std::int64_t index, std::span<int> coords) const {
  for (int i = 0; i < dims_; ++i) {
    coords[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
}

std::int64_t Grid::Encode(std::span<const int> coords) const {
  std::int64_t index = 0;
  for (int i = 0; i < dims_; ++i) index += coords[i] * strides_[i];
  return index;
}

void Grid::Point(std::int64_t index, std::span<double> values) const {
  for (int i = 0; i < dims_; ++i) {
    values[i] = Value(static_cast<int>(index / strides_[i]));
    index %= strides_[i];
  }
}

int Grid::Snap(double v) const {
  const double scaled = v * divisions_;
  int k = static_cast<int>(std::floor(scaled));
  if (scaled - k > 0.5) ++k;
  return std::clamp(k, 0, divisions_);
}

double UniformDraw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> BernoulliCornerMasses(double rho) {
  return {(1.0 + rho) / 4.0, (1.0 - rho) / 4.0, (1.0 - rho) / 4.0,
          (1.0 + rho) / 4.0};
}

JointValueDistribution JointValueDistribution::Product(
    std::vector<RegularMarginal> marginals) {
  if (marginals.empty()) {
    throw std::invalid_argument("product distribution needs marginals");
  }
  JointValueDistribution joint;
  joint.kind_ = Kind::kProduct;
  joint.dims_ = static_cast<int>(marginals.size());
  joint.marginals_ = std::move(marginals);
  return joint;
}

JointValueDistribution JointValueDistribution::Contaminated(
    std::vector<RegularMarginal> marginals, double eps, double rho) {
  if (marginals.size() != 2) {
    throw std::invalid_argument("contamination is defined for two bidders");
  }
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("eps must lie in [0,1]");
  }
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in [-1,1]");
  }
  JointValueDistribution joint = Product(std::move(marginals));
  joint.kind_ = Kind::kContaminated;
  joint.eps_ = eps;
  joint.rho_ = rho;
  return joint;
}

JointValueDistribution JointValueDistribution::DiscreteTable(
    GridMasses masses) {
  if (static_cast<std::int64_t>(masses.mass.size()) != masses.grid.size()) {
    throw std::invalid_argument("mass table size does not match its grid");
  }
  double total = 0.0;
  for (double p : masses.mass) {
    if (!(p >= 0.0)) throw std::invalid_argument("negative probability mass");
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("probability masses do not sum to one");
  }
  JointValueDistribution joint;
  joint.kind_ = Kind::kDiscreteTable;
  joint.dims_ = masses.grid.dims();
  joint.table_cumulative_.resize(masses.mass.size());
  std::partial_sum(masses.mass.begin(), masses.mass.end(),
                   joint.table_cumulative_.begin());
  joint.table_.push_back(std::move(masses));
  return joint;
}

const GridMasses& JointValueDistribution::table() const {
  if (kind_ != Kind::kDiscreteTable) {
    throw std::logic_error("distribution is not a discrete table");
  }
  return table_.front();
}

RegularMarginal MarginalFromJson(const nlohmann::json& spec) {
  const std::string family = spec.at("family").get<std::string>();
  if (family == "uniform") return RegularMarginal::Uniform();
  if (family == "beta22") return RegularMarginal::Beta22();
  if (family == "custom-table") {
    return RegularMarginal::CustomTable(
        spec.at("densities").get<std::vector<double>>());
  }
  throw std::invalid_argument("unknown marginal family: " + family);
}

JointValueDistribution JointValueDistribution::FromJson(
    const nlohmann::json& config) {
  std::vector<RegularMarginal> marginals;
  for (const auto& spec : config.at("marginals")) {
    marginals.push_back(MarginalFromJson(spec));
  }
  if (config.contains("contamination")) {
    const auto& c = config.at("contamination");
    return Contaminated(std::move(marginals), c.at("eps").get<double>(),
                        c.at("rho").get<double>());
  }
  return Product(std::move(marginals));
}

nlohmann::json JointValueDistribution::ToJson() const {
  nlohmann::json out;
  if (kind_ == Kind::kDiscreteTable) {
    out["table"] = {{"divisions", table().grid.divisions()},
                    {"dims", dims_}};
    return out;
  }
  out["marginals"] = nlohmann::json::array();
  for (const auto& m : marginals_) {
    nlohmann::json spec = {{"family", m.Name()}};
    if (m.family() == RegularMarginal::Family::kCustomTable) {
      spec["densities"] = std::vector<double>(m.bin_densities().begin(),
                                              m.bin_densities().end());
    }
    out["marginals"].push_back(spec);
  }
  if (kind_ == Kind::kContaminated) {
    out["contamination"] = {{"eps", eps_}, {"rho", rho_}};
  }
  return out;
}

std::string JointValueDistribution::Describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kDiscreteTable:
      os << "table(dims=" << dims_ << ",step=1/" << table().grid.divisions()
         << ")";
      return os.str();
    case Kind::kProduct:
    case Kind::kContaminated:
      os << "product(";
      for (std::size_t i = 0; i < marginals_.size(); ++i) {
        os << (i ? "," : "") << marginals_[i].Name();
      }
      os << ")";
      if (kind_ == Kind::kContaminated) {
        os << "+contamination(eps=" << FormatNumber(eps_)
           << ",rho=" << FormatNumber(rho_) << ")";
      }
      return os.str();
  }
  return os.str();
}

void JointValueDistribution::Draw(std::mt19937_64& rng,
                                  std::span<double> out) const {
  if (kind_ == Kind::kDiscreteTable) {
    const double u = UniformDraw(rng);
    auto it = std::upper_bound(table_cumulative_.begin(),
                               table_cumulative_.end(), u);
    // Guard the last cell against cumulative round-off below 1.
    std::int64_t index = std::min<std::int64_t>(
        it - table_cumulative_.begin(),
        static_cast<std::int64_t>(table_cumulative_.size()) - 1);
    while (table().mass[index] == 0.0 && index > 0) --index;
    table().grid.Point(index, out);
    return;
  }
  if (kind_ == Kind::kContaminated && UniformDraw(rng) < eps_) {
    const std::vector<double> corner = BernoulliCornerMasses(rho_);
    const double u = UniformDraw(rng);
    double cumulative = 0.0;
    int c = 0;
    for (; c < 3; ++c) {
      cumulative += corner[c];
      if (u < cumulative) break;
    }
    out[0] = (c >= 2) ? 1.0 : 0.0;
    out[1] = (c % 2 == 1) ? 1.0 : 0.0;
    return;
  }
  for (int i = 0; i < dims_; ++i) {
    out[i] = marginals_[i].Quantile(UniformDraw(rng));
  }
}

ProfileSample SampleJoint(const JointValueDistribution& joint, std::int64_t n,
                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample size must be positive");
  std::mt19937_64 rng(seed);
  ProfileSample sample;
  sample.dims = joint.dims();
  sample.data.resize(n * joint.dims());
  for (std::int64_t r = 0; r < n; ++r) {
    joint.Draw(rng, std::span<double>(sample.data).subspan(r * sample.dims,
                                                            sample.dims));
  }
  return sample;
}

JointValueDistribution Discretize(const JointValueDistribution& joint,
                                  double step) {
  if (joint.kind() == JointValueDistribution::Kind::kDiscreteTable) {
    throw std::invalid_argument("discretize expects a continuous joint");
  }
  const Grid grid = Grid::FromStep(step, joint.dims());
  const int n = grid.points_per_axis();
  // Lower-left cell masses per axis; the g = 0 cell is the single point {0}.
  std::vector<std::vector<double>> axis_mass(joint.dims());
  for (int i = 0; i < joint.dims(); ++i) {
    const RegularMarginal& marginal = joint.marginals()[i];
    axis_mass[i].assign(n, 0.0);
    double prev = marginal.Cdf(0.0);
    for (int k = 1; k < n; ++k) {
      const double cdf = (k == n - 1) ? 1.0 : marginal.Cdf(grid.Value(k));
      axis_mass[i][k] = cdf - prev;
      prev = cdf;
    }
  }
  GridMasses masses{grid, std::vector<double>(grid.size(), 0.0)};
  const double base_weight =
      joint.kind() == JointValueDistribution::Kind::kContaminated
          ? 1.0 - joint.eps()
          : 1.0;
  std::vector<int> coords(joint.dims());
  for (std::int64_t index = 0; index < grid.size(); ++index) {
    grid.Decode(index, coords);
    double p = base_weight;
    for (int i = 0; i < joint.dims(); ++i) p *= axis_mass[i][coords[i]];
    masses.mass[index] = p;
  }
  if (joint.kind() == JointValueDistribution::Kind::kContaminated) {
    const std::vector<double> corner = BernoulliCornerMasses(joint.rho());
    const int last = n - 1;
    const int corners[4][2] = {{0, 0}, {0, last}, {last, 0}, {last, last}};
    for (int c = 0; c < 4; ++c) {
      masses.mass[grid.Encode(corners[c])] += joint.eps() * corner[c];
    }
  }
  return JointValueDistribution::DiscreteTable(std::move(masses));
}

}  // namespace equity_auction
