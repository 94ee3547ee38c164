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

#include "equity_auction/config.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "equity_auction/robust.h"
#include "equity_auction/stochastic.h"

namespace equity_auction {
namespace {

nlohmann::json MarginalToJson(const RegularMarginal& m) {
  nlohmann::json spec = {{"family", m.Name()}};
  if (m.family() == RegularMarginal::Family::kCustomTable) {
    spec["densities"] = std::vector<double>(m.bin_densities().begin(),
                                            m.bin_densities().end());
  }
  return spec;
}

std::vector<double> DefaultEps() {
  std::vector<double> eps;
  for (int k = 0; k <= 10; ++k) eps.push_back(k / 10.0);
  return eps;
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

nlohmann::json ExperimentConfig::ToJson() const {
  nlohmann::json out;
  out["groups"] = {{"minority", groups.num_minority()},
                   {"majority", groups.num_majority()}};
  out["gamma"] = gamma;
  out["marginals"] = nlohmann::json::array();
  for (const RegularMarginal& m : marginals) {
    out["marginals"].push_back(MarginalToJson(m));
  }
  out["contamination"] = {{"eps", eps}, {"rho", rho}};
  out["step"] = step;
  out["ic"] = ToString(ic);
  out["seed"] = seed;
  out["output_dir"] = output_dir;
  return out;
}

std::string ExperimentConfig::Hash() const { return Fnv1aHex(ToJson().dump()); }

ExperimentConfig ParseConfig(const nlohmann::json& json) {
  Require(json.is_object(), "config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "groups", "gamma", "marginals", "contamination", "step",
      "ic",     "seed",  "output_dir"};
  for (const auto& [key, value] : json.items()) {
    Require(kKeys.count(key) > 0, "unknown config key: " + key);
  }
  ExperimentConfig config;
  try {
    if (json.contains("groups")) {
      const auto& g = json.at("groups");
      config.groups = GroupStructure(g.value("minority", 1),
                                     g.value("majority", 1));
    }
    config.gamma = json.value("gamma", config.gamma);
    if (json.contains("marginals")) {
      for (const auto& spec : json.at("marginals")) {
        config.marginals.push_back(MarginalFromJson(spec));
      }
    } else {
      config.marginals.push_back(RegularMarginal::Beta22());
    }
    if (json.contains("contamination")) {
      const auto& c = json.at("contamination");
      config.eps = c.value("eps", DefaultEps());
      config.rho = c.value("rho", std::vector<double>{-0.5, 0.0, 0.5});
    } else {
      config.eps = DefaultEps();
      config.rho = {-0.5, 0.0, 0.5};
    }
    config.step = json.value("step", config.step);
    const std::string ic = json.value("ic", std::string("adjacent"));
    Require(ic == "adjacent" || ic == "full", "ic must be adjacent or full");
    config.ic = ic == "full" ? IcMode::kFull : IcMode::kAdjacent;
    config.seed = json.value("seed", config.seed);
    config.output_dir = json.value("output_dir", config.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }

  const int bidders = config.groups.size();
  Require(bidders >= 1, "at least one bidder is required");
  if (config.marginals.size() == 1 && bidders > 1) {
    config.marginals.assign(bidders, config.marginals.front());
  }
  Require(static_cast<int>(config.marginals.size()) == bidders,
          "marginal count differs from bidder count");
  Require(std::isfinite(config.gamma) && config.gamma >= 0.0,
          "gamma must be finite and non-negative");
  Require(!config.eps.empty() && !config.rho.empty(),
          "contamination lists must be non-empty");
  for (double e : config.eps)
    Require(e >= 0.0 && e <= 1.0, "eps outside [0,1]");
  for (double r : config.rho) {
    Require(r >= -1.0 && r <= 1.0, "rho outside [-1,1]");
  }
  Grid::FromStep(config.step, 1);  // throws unless step = 1/k
  Require(!config.output_dir.empty(), "output_dir must be non-empty");
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  Require(static_cast<bool>(in), "cannot read config file: " + path);
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config is not valid JSON: " +
                                std::string(e.what()));
  }
  return ParseConfig(json);
}

std::string Fnv1aHex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(h));
  return buffer;
}

std::string ProvenanceHeader(const std::string& hash, std::uint64_t seed) {
  return "# config_hash=" + hash + "\n# seed=" + std::to_string(seed) + "\n";
}

std::string ResolveOutputDir(const std::string& configured) {
  const char* env = std::getenv("EQAUCTION_OUT_DIR");
  if (env != nullptr && env[0] != '\0') return env;
  return configured;
}

std::vector<RegularMarginal> ParseMarginalList(const std::string& list,
                                               int bidders) {
  std::vector<RegularMarginal> out;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name == "uniform") {
      out.push_back(RegularMarginal::Uniform());
    } else if (name == "beta22" || name == "beta") {
      out.push_back(RegularMarginal::Beta22());
    } else {
      throw std::invalid_argument("unknown marginal: " + name);
    }
  }
  if (out.size() == 1) out.assign(bidders, out.front());
  Require(static_cast<int>(out.size()) == bidders,
          "marginal count differs from bidder count");
  return out;
}

std::unique_ptr<Mechanism> MakeMechanism(const MechanismSpec& spec) {
  Require(std::isfinite(spec.gamma) && spec.gamma >= 0.0,
          "gamma must be finite and non-negative");
  const int bidders = spec.groups.size();
  if (spec.name == "robust") {
    return std::make_unique<RobustMechanism>(spec.groups, spec.gamma);
  }
  if (spec.name == "zero") {
    return std::make_unique<FunctionMechanism>(
        ZeroMechanism(spec.groups, spec.gamma));
  }
  Require(static_cast<int>(spec.marginals.size()) == bidders,
          "marginal count differs from bidder count");
  if (spec.name == "stochastic") {
    return std::make_unique<StochasticMechanism>(spec.groups, spec.gamma,
                                                 spec.marginals);
  }
  const bool ex_post = spec.name == "lp-ex-post";
  const bool expectation = spec.name == "lp-expectation";
  const bool tailored = spec.name == "tailored";
  Require(ex_post || expectation || tailored,
          "unknown mechanism: " + spec.name);
  LpOptions options;
  options.ic = spec.ic;
  SimplexOptions simplex;
  simplex.seed = spec.seed;
  LpSolution solution;
  if (tailored) {
    Require(spec.groups == GroupStructure(1, 1),
            "tailored mechanisms need one minority and one majority bidder");
    solution = TailoredMechanism(spec.eps, spec.rho, spec.step, spec.gamma,
                                 spec.marginals, options, simplex);
  } else {
    const JointValueDistribution joint = Discretize(
        JointValueDistribution::Product(spec.marginals), spec.step);
    solution = SolveLp(
        AssembleLp(joint.table(), spec.groups, spec.gamma,
                   ex_post ? EquityMode::kExPost : EquityMode::kExpectation,
                   options),
        spec.name, simplex);
  }
  if (!solution.mechanism) {
    throw std::runtime_error("LP for " + spec.name + " ended with status " +
                             ToString(solution.result.status));
  }
  return std::make_unique<TabulatedMechanism>(std::move(*solution.mechanism));
}

}  // namespace equity_auction
