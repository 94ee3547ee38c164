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

// eqauction: command-line front end.
//
//   eqauction bounds     [--gamma-min 0 --gamma-max 10 --points 1001 --log]
//   eqauction evaluate   --mech robust --gamma 0.25 [--mode grid|mc ...]
//   eqauction stress     --config configs/stress_rho0.json
//   eqauction lp-solve   --gamma 0.25 [--equity ex-post|expectation ...]
//   eqauction audit      --mech stochastic --gamma 1 --marginals uniform
//   eqauction worst-case --mech robust --gamma 0.25 [--step 0.01]
//
// Exit codes: 0 success, 1 violations or solver failure, 2 invalid input.
// Files go to --out-dir (default "out"); EQAUCTION_OUT_DIR overrides it.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "equity_auction/bounds.h"
#include "equity_auction/config.h"
#include "equity_auction/dists.h"
#include "equity_auction/eval.h"
#include "equity_auction/lp.h"
#include "equity_auction/mechanism.h"
#include "equity_auction/robust.h"
#include "equity_auction/stochastic.h"
#include "json.hpp"

namespace equity_auction {
namespace {

constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

// Options shared by the mechanism-level subcommands.
struct MechanismFlags {
  std::string mech = "robust";
  double gamma = 0.25;
  int minority = 1;
  int majority = 1;
  std::string marginals = "beta22";
  double step = 0.02;
  std::string ic = "adjacent";
  double eps = 0.0;
  double rho = 0.0;
  std::uint64_t seed = 1;

  void Register(CLI::App* app, bool with_mech = true) {
    if (with_mech) {
      app->add_option("--mech", mech,
                      "stochastic|robust|lp-ex-post|lp-expectation|tailored|"
                      "zero");
    }
    app->add_option("--gamma", gamma, "Equity level");
    app->add_option("--minority", minority, "Minority bidders");
    app->add_option("--majority", majority, "Majority bidders");
    app->add_option("--marginals", marginals,
                    "Comma-separated uniform|beta22, one per bidder or one");
    app->add_option("--step", step, "Grid step 1/k");
    app->add_option("--ic", ic, "LP IC rows: adjacent|full");
    app->add_option("--eps", eps, "Contamination level");
    app->add_option("--rho", rho, "Corner correlation");
    app->add_option("--seed", seed, "Random seed");
  }

  GroupStructure groups() const { return GroupStructure(minority, majority); }

  IcMode ic_mode() const {
    if (ic == "adjacent") return IcMode::kAdjacent;
    if (ic == "full") return IcMode::kFull;
    throw std::invalid_argument("--ic must be adjacent or full");
  }

  MechanismSpec Spec() const {
    MechanismSpec spec;
    spec.name = mech;
    spec.groups = groups();
    spec.gamma = gamma;
    spec.marginals = ParseMarginalList(marginals, groups().size());
    spec.step = step;
    spec.ic = ic_mode();
    spec.eps = eps;
    spec.rho = rho;
    spec.seed = seed;
    return spec;
  }

  nlohmann::json ToJson() const {
    return {{"mech", mech},         {"gamma", gamma}, {"minority", minority},
            {"majority", majority}, {"marginals", marginals},
            {"step", step},         {"ic", ic},       {"eps", eps},
            {"rho", rho},           {"seed", seed}};
  }
};

std::filesystem::path WriteOutput(const std::string& dir,
                                  const std::string& name,
                                  const std::string& header,
                                  const std::string& body) {
  const std::filesystem::path root(ResolveOutputDir(dir));
  std::filesystem::create_directories(root);
  const std::filesystem::path path = root / name;
  std::ofstream out(path, std::ios::binary);
  out << header << body;
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::cout << "wrote " << path.string() << '\n';
  return path;
}

std::string Header(const nlohmann::json& params, std::uint64_t seed) {
  return ProvenanceHeader(Fnv1aHex(params.dump()), seed);
}

int RunBounds(double gamma_min, double gamma_max, int points, bool log_spacing,
              const std::string& out_dir) {
  if (points < 2 || !(gamma_min >= 0.0) || !(gamma_max > gamma_min) ||
      !std::isfinite(gamma_max)) {
    std::cerr << "bounds: need 0 <= gamma-min < gamma-max and points >= 2\n";
    return kExitUsage;
  }
  const FactorCurve curve = ComputeFactorCurve(
      gamma_min, gamma_max, points,
      log_spacing ? GammaSpacing::kMixed : GammaSpacing::kLinear);
  const nlohmann::json params = {{"command", "bounds"},
                                 {"gamma_min", gamma_min},
                                 {"gamma_max", gamma_max},
                                 {"points", points},
                                 {"log", log_spacing}};
  WriteOutput(out_dir, "bounds.csv", Header(params, 0), curve.ToCsv());
  std::cout << "argmax_gamma=" << FormatNumber(curve.argmax_gamma)
            << " max_factor=" << FormatNumber(curve.max_factor) << '\n';
  return 0;
}

JointValueDistribution FlagDistribution(const MechanismFlags& flags) {
  const std::vector<RegularMarginal> marginals =
      ParseMarginalList(flags.marginals, flags.groups().size());
  if (flags.eps > 0.0) {
    return JointValueDistribution::Contaminated(marginals, flags.eps,
                                                flags.rho);
  }
  return JointValueDistribution::Product(marginals);
}

int RunEvaluate(const MechanismFlags& flags, const std::string& mode,
                std::int64_t samples, const std::string& out_dir) {
  if (mode != "grid" && mode != "mc") {
    throw std::invalid_argument("--mode must be grid or mc");
  }
  const std::unique_ptr<Mechanism> mech = MakeMechanism(flags.Spec());
  const JointValueDistribution continuous = FlagDistribution(flags);
  const EvaluationReport report =
      mode == "grid"
          ? Evaluate(*mech, Discretize(continuous, flags.step), flags.gamma,
                     EvaluationMode::kExhaustiveGrid)
          : Evaluate(*mech, continuous, flags.gamma,
                     EvaluationMode::kMonteCarlo, samples, flags.seed);
  nlohmann::json params = flags.ToJson();
  params["command"] = "evaluate";
  params["mode"] = mode;
  params["samples"] = samples;
  WriteOutput(out_dir, "evaluate.csv", Header(params, flags.seed),
              EvaluationReport::CsvHeader() + "\n" + report.CsvRow() + "\n");
  std::cout << report.ToText();
  return 0;
}

std::string RhoTag(double rho) {
  std::string tag = FormatNumber(rho);
  for (char& c : tag) {
    if (c == '-') c = 'm';
  }
  return tag;
}

int RunStress(const std::string& config_path) {
  const ExperimentConfig config = LoadConfig(config_path);
  if (!(config.groups == GroupStructure(1, 1))) {
    throw std::invalid_argument(
        "stress needs one minority and one majority bidder");
  }
  const std::string hash = config.Hash();
  const std::string header = ProvenanceHeader(hash, config.seed);
  SimplexOptions simplex;
  simplex.seed = config.seed;
  LpOptions lp_options;
  lp_options.ic = config.ic;

  const StochasticMechanism star(config.groups, config.gamma,
                                 config.marginals);
  const RobustMechanism hat(config.groups, config.gamma);
  const JointValueDistribution base = Discretize(
      JointValueDistribution::Product(config.marginals), config.step);
  const LpSolution bar_solution = SolveLp(
      AssembleLp(base.table(), config.groups, config.gamma,
                 EquityMode::kExpectation, lp_options),
      "lp-expectation", simplex);
  std::vector<const Mechanism*> mechanisms{&star};
  if (bar_solution.mechanism) {
    mechanisms.push_back(&*bar_solution.mechanism);
  } else {
    std::cerr << "stress: expectation LP ended with status "
              << ToString(bar_solution.result.status)
              << "; its column is omitted\n";
  }
  mechanisms.push_back(&hat);

  SweepOptions sweep;
  sweep.step = config.step;
  sweep.lp = lp_options;
  sweep.simplex = simplex;
  int failures = 0;
  for (double rho : config.rho) {
    const SweepTable table = NormalizedRevenueSweep(
        mechanisms, config.marginals, config.gamma, config.eps, rho, sweep);
    const std::string tag = "stress_rho_" + RhoTag(rho);
    WriteOutput(config.output_dir, tag + "_revenue.csv", header,
                table.RevenueCsv());
    WriteOutput(config.output_dir, tag + "_regret.csv", header,
                table.RegretCsv());
    for (const SweepRow& row : table.rows) {
      if (row.status != LpStatus::kOptimal) {
        ++failures;
        std::cerr << "rho=" << FormatNumber(rho)
                  << " eps=" << FormatNumber(row.eps)
                  << ": tailored LP status " << ToString(row.status) << '\n';
      }
    }
  }
  std::cout << "config_hash=" << hash << '\n';
  return failures == 0 ? 0 : kExitViolations;
}

int RunLpSolve(const MechanismFlags& flags, const std::string& equity,
               bool dump_triples, const std::string& out_dir) {
  if (equity != "ex-post" && equity != "expectation") {
    throw std::invalid_argument("--equity must be ex-post or expectation");
  }
  const JointValueDistribution joint =
      Discretize(FlagDistribution(flags), flags.step);
  LpOptions options;
  options.ic = flags.ic_mode();
  const GridMechanismLp lp = AssembleLp(
      joint.table(), flags.groups(), flags.gamma,
      equity == "ex-post" ? EquityMode::kExPost : EquityMode::kExpectation,
      options);
  SimplexOptions simplex;
  simplex.seed = flags.seed;
  const LpSolution solution = SolveLp(lp, "lp-" + equity, simplex);
  nlohmann::json params = flags.ToJson();
  params["command"] = "lp-solve";
  params["equity"] = equity;
  const std::string header = Header(params, flags.seed);
  if (dump_triples) {
    WriteOutput(out_dir, "lp_triples.csv", header, lp.program.ToTriples());
  }
  const KktResiduals& kkt = solution.result.kkt;
  std::cout << "status=" << ToString(solution.result.status)
            << " rows=" << lp.program.num_rows()
            << " cols=" << lp.program.num_cols()
            << " iterations=" << solution.result.iterations << '\n'
            << "revenue=" << FormatNumber(solution.revenue)
            << " kkt_primal=" << FormatNumber(kkt.primal)
            << " kkt_dual=" << FormatNumber(kkt.dual)
            << " kkt_complementarity=" << FormatNumber(kkt.complementarity)
            << '\n';
  if (!solution.mechanism) return kExitViolations;
  WriteOutput(out_dir, "lp_solution.csv", header, solution.mechanism->ToCsv());
  return 0;
}

int RunAudit(const MechanismFlags& flags, double tolerance,
             std::int64_t samples, const std::string& out_dir) {
  const std::unique_ptr<Mechanism> mech = MakeMechanism(flags.Spec());
  AuditOptions options;
  options.step = flags.step;
  options.tolerance = tolerance;
  options.sampled_profiles = samples;
  options.seed = flags.seed;
  const AuditReport report = AuditFeasibility(*mech, options);
  nlohmann::json params = flags.ToJson();
  params["command"] = "audit";
  params["tolerance"] = tolerance;
  params["samples"] = samples;
  WriteOutput(out_dir, "audit.csv", Header(params, flags.seed),
              report.ToCsv());
  std::cout << mech->name() << ": " << report.profiles_checked
            << " profiles checked, " << report.total_violations
            << " violations";
  for (const char* c : {"monotonicity", "payment_identity", "IC", "AF", "Eq",
                        "IR"}) {
    const std::int64_t n = report.Count(c);
    if (n > 0) std::cout << ", " << c << "=" << n;
  }
  std::cout << '\n';
  return report.empty() ? 0 : kExitViolations;
}

int RunWorstCase(const MechanismFlags& flags, const std::string& out_dir) {
  const std::unique_ptr<Mechanism> mech = MakeMechanism(flags.Spec());
  const WorstCase worst = WorstCaseRegret(*mech, flags.step);
  std::ostringstream body;
  body << "mechanism,gamma,regret";
  for (std::size_t i = 0; i < worst.profile.size(); ++i) {
    body << ",v_" << i + 1;
  }
  body << '\n' << mech->name() << ',' << FormatNumber(flags.gamma) << ','
       << FormatNumber(worst.regret);
  for (double v : worst.profile) body << ',' << FormatNumber(v);
  body << '\n';
  nlohmann::json params = flags.ToJson();
  params["command"] = "worst-case";
  WriteOutput(out_dir, "worst_case.csv", Header(params, flags.seed),
              body.str());
  std::cout << "worst_case_regret=" << FormatNumber(worst.regret);
  if (mech->groups().size() == 2 && mech->groups().num_minority() == 1) {
    std::cout << " theta=" << FormatNumber(Theta(flags.gamma));
  }
  std::cout << '\n';
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Equity-constrained auction mechanisms"};
  app.require_subcommand(1);
  std::string out_dir = "out";
  app.add_option("--out-dir", out_dir, "Output directory")
      ->capture_default_str();

  CLI::App* bounds = app.add_subcommand("bounds", "Regret bound factor curve");
  double gamma_min = 0.0, gamma_max = 10.0;
  int points = 1001;
  bool log_spacing = false;
  bounds->add_option("--gamma-min", gamma_min);
  bounds->add_option("--gamma-max", gamma_max);
  bounds->add_option("--points", points);
  bounds->add_flag("--log", log_spacing,
                   "Linear up to 1, logarithmic above");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Revenue and regret");
  MechanismFlags eval_flags;
  eval_flags.Register(evaluate);
  std::string mode = "grid";
  std::int64_t samples = 100000;
  evaluate->add_option("--mode", mode, "grid|mc");
  evaluate->add_option("--samples", samples, "Monte Carlo draws");

  CLI::App* stress = app.add_subcommand("stress", "Contamination stress test");
  std::string config_path;
  stress->add_option("--config", config_path, "JSON config")->required();

  CLI::App* lp_solve = app.add_subcommand("lp-solve", "Solve a grid LP");
  MechanismFlags lp_flags;
  lp_flags.Register(lp_solve, false);
  std::string equity = "ex-post";
  bool dump_triples = false;
  lp_solve->add_option("--equity", equity, "ex-post|expectation");
  lp_solve->add_flag("--dump-triples", dump_triples,
                     "Write the constraint matrix as row,col,coeff");

  CLI::App* audit = app.add_subcommand("audit", "Feasibility audit");
  MechanismFlags audit_flags;
  audit_flags.Register(audit);
  double tolerance = 1e-6;
  std::int64_t audit_samples = 100000;
  audit->add_option("--tolerance", tolerance);
  audit->add_option("--samples", audit_samples,
                    "Sampled profiles when I > 3");

  CLI::App* worst = app.add_subcommand("worst-case", "Worst-case regret");
  MechanismFlags worst_flags;
  worst_flags.step = 0.01;
  worst_flags.Register(worst);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*bounds) {
      return RunBounds(gamma_min, gamma_max, points, log_spacing, out_dir);
    }
    if (*evaluate) return RunEvaluate(eval_flags, mode, samples, out_dir);
    if (*stress) return RunStress(config_path);
    if (*lp_solve) return RunLpSolve(lp_flags, equity, dump_triples, out_dir);
    if (*audit) return RunAudit(audit_flags, tolerance, audit_samples, out_dir);
    if (*worst) return RunWorstCase(worst_flags, out_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolations;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace equity_auction

int main(int argc, char** argv) { return equity_auction::Main(argc, argv); }
