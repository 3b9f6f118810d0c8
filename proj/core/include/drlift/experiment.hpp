#pragma once

#include "drlift/lp.hpp"
#include "drlift/problems.hpp"
#include "drlift/simulate.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace drlift {

/// Strategy names accepted on the command line and in specs:
///   "LDR"
///   "PLDR-2@0.35:0.65"   explicit breakpoints, every stage
///   "PLDR-2@base"        first 2 values of the preset's base set
///   "HDR<3^2,2^6,1^0,0^1>@base"  (or the bare shorthand string)
struct StrategySpec {
  std::string text;
  LiftingStrategy realize(const Preset& preset) const;
};

StrategySpec parse_strategy(const std::string& text);

struct ExperimentSpec {
  std::string preset;
  std::vector<std::string> strategies;
  int n = 100000;
  std::vector<std::uint64_t> seeds = {42};
  std::string out_dir;
  bool heavy = false;
  std::string solver = "builtin";  // or "external:<command>"
  std::string data_dir;
  int threads = 0;  // 0: DRLIFT_THREADS, then hardware
};

struct StrategyResult {
  std::string strategy;
  bool ok = false;
  std::string error;
  double model_objective = 0.0;
  double evaluated_objective = 0.0;  // simulator mean or pseudo-simulated profit
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
  EvaluationReport report;
  std::map<std::string, double> components;
  double first_stage_order = 0.0;  // newsvendor x_1
};

/// Builds, solves and evaluates every strategy of the spec; writes
/// results.csv, results.json and manifest.json when out_dir is set.
/// Per-strategy failures are recorded and the run continues.
std::vector<StrategyResult> run_experiment(const ExperimentSpec& spec);

// --- subcommand drivers ----------------------------------------------------

struct CrossoverPoint {
  double order_limit = 0.0;
  std::string strategy;
  bool ok = false;
  std::string error;
  double model_cost = 0.0;
  double sim_mean = 0.0;
  double sim_sigma = 0.0;
};

/// Model and simulated newsvendor costs for LDR, PLDR-1@mean and
/// PLDR-1@U^x over an ordering-limit sweep.
std::vector<CrossoverPoint> run_crossover(const ExperimentSpec& spec, double lo = 5.0,
                                          double hi = 10.0, double step = 0.25);

struct SensitivityPoint {
  int stage = 0;
  int breakpoints = 0;
  double profit = 0.0;
};

/// Lifts one stage with the first i base-set values while all other stages
/// stay at the base rule; reports the model profit per (stage, i).
std::vector<SensitivityPoint> run_sensitivity(const ExperimentSpec& spec,
                                              const std::string& base_rule = "LDR",
                                              int max_breakpoints = 5);

struct ClusterPoint {
  int resolution = 0;
  std::vector<double> breakpoints;
  double model_objective = 0.0;
  double pseudo_profit = 0.0;
  double solve_seconds = 0.0;
};

struct ClustersResult {
  std::vector<int> candidate_counts;  // per resolution, before the spacing filter
  std::vector<ClusterPoint> points;
};

/// All PLDR-k candidates from the preset's base set under the spacing
/// heuristics, solved and pseudo-simulated.
ClustersResult run_clusters(const ExperimentSpec& spec, int max_resolution = 4);

struct HdrPoint {
  std::string profile;
  bool reversed = false;
  std::map<int, std::vector<double>> sets;  // breakpoint set per resolution
  double model_objective = 0.0;
  double pseudo_profit = 0.0;
  double solve_seconds = 0.0;
};

/// Every breakpoint assignment of each profile (and its reversed variant):
/// the product of the per-resolution candidate lists.
std::vector<HdrPoint> run_hdr_sweep(const ExperimentSpec& spec,
                                    const std::vector<std::string>& profiles);

/// Combination machinery shared by clusters and the HDR sweep. Spacing rule:
/// the index span of a k-subset of the base grid must be at least k for
/// k in 2..4.
std::vector<std::vector<int>> index_combinations(int n, int k);
bool spacing_ok(const std::vector<int>& combo, int k);
std::vector<std::vector<double>> pldr_candidates(const std::vector<double>& base, int k,
                                                 bool filtered);

/// Newsvendor model/simulator table and the transportation anchor table.
std::vector<StrategyResult> run_tables(const ExperimentSpec& spec);

/// FNV-1a hash of the canonical spec serialization (manifest config hash).
std::uint64_t spec_hash(const ExperimentSpec& spec);

/// Worker-pool size resolution: explicit > DRLIFT_THREADS > hardware.
int resolve_threads(int requested);

/// Runs tasks on a bounded pool; results land at their task's index so
/// output order stays deterministic.
void parallel_for(int count, int threads, const std::function<void(int)>& task);

/// Largest violation of the original semi-infinite constraints by a policy
/// over sampled realizations (robust feasibility transfer check).
double max_constraint_violation(const AffineStageModel& model, const UncertaintySet& set,
                                const PolicyBundle& policy, const Eigen::MatrixXd& paths);

}  // namespace drlift
