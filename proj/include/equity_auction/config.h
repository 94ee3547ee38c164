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

// Experiment configuration and mechanism construction by name, shared by the
// command-line tool and its tests.
//
// Config schema (every key optional, defaults shown):
//
//   {
//     "groups": {"minority": 1, "majority": 1},
//     "gamma": 0.25,
//     "marginals": [{"family": "beta22"}, {"family": "beta22"}],
//     "contamination": {"eps": [0, 0.1, ..., 1], "rho": [-0.5, 0, 0.5]},
//     "step": 0.02,
//     "ic": "adjacent",
//     "seed": 1,
//     "output_dir": "out"
//   }
//
// A single marginal is replicated to every bidder.

#ifndef EQUITY_AUCTION_CONFIG_H_
#define EQUITY_AUCTION_CONFIG_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "equity_auction/dists.h"
#include "equity_auction/lp.h"
#include "equity_auction/mechanism.h"
#include "equity_auction/types.h"
#include "json.hpp"

namespace equity_auction {

struct ExperimentConfig {
  GroupStructure groups{1, 1};
  double gamma = 0.25;
  std::vector<RegularMarginal> marginals;
  std::vector<double> eps;
  std::vector<double> rho;
  double step = 0.02;
  IcMode ic = IcMode::kAdjacent;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  // Canonical form with every default filled in.
  nlohmann::json ToJson() const;
  // 16 hex digits of the 64-bit FNV-1a hash of the canonical JSON.
  std::string Hash() const;
};

// Throws std::invalid_argument on unknown keys or invalid values.
ExperimentConfig ParseConfig(const nlohmann::json& json);
ExperimentConfig LoadConfig(const std::string& path);

// 64-bit FNV-1a of `text` as 16 hex digits.
std::string Fnv1aHex(const std::string& text);

// `# config_hash=<hash>` and `# seed=<seed>` lines preceding CSV output.
std::string ProvenanceHeader(const std::string& hash, std::uint64_t seed);

// EQAUCTION_OUT_DIR when set and non-empty, else `configured`.
std::string ResolveOutputDir(const std::string& configured);

// "uniform,beta22" style lists; one name is replicated to `bidders`.
std::vector<RegularMarginal> ParseMarginalList(const std::string& list,
                                               int bidders);

struct MechanismSpec {
  // stochastic, robust, lp-ex-post, lp-expectation, tailored or zero.
  std::string name;
  GroupStructure groups{1, 1};
  double gamma = 0.25;
  std::vector<RegularMarginal> marginals;
  // Grid step and IC mode of the LP-based mechanisms.
  double step = 0.02;
  IcMode ic = IcMode::kAdjacent;
  // Contamination of the tailored mechanism.
  double eps = 0.0;
  double rho = 0.0;
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument for unknown names or inconsistent inputs and
// std::runtime_error when an LP does not solve to optimality.
std::unique_ptr<Mechanism> MakeMechanism(const MechanismSpec& spec);

}  // namespace equity_auction

#endif  // EQUITY_AUCTION_CONFIG_H_
