#pragma once

#include "drlift/counterpart.hpp"
#include "drlift/lp.hpp"
#include "drlift/problems.hpp"
#include "drlift/uncertainty.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>

namespace drlift {

/// Closed-loop evaluation statistics. Breakdown components sum to the total
/// on every path.
struct EvaluationReport {
  int n = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double sigma = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::map<std::string, double> breakdown;  // per-component means

  std::string to_json() const;
  static std::string csv_header(const std::vector<std::string>& components);
  std::string csv_row(const std::string& preset, const std::string& strategy,
                      const std::vector<std::string>& components) const;
};

/// n x (T-1) i.i.d. per-stage uniforms from a seeded mt19937_64 with a fixed
/// 53-bit mapping, bit-reproducible across platforms.
Eigen::MatrixXd sample_paths(const UncertaintySet& set, int n, std::uint64_t seed);

/// Implements only the ordering rules along each path, repairs the state
/// variables to their definitions (s+ = max(0, I), s- = max(0, -I)), and
/// aggregates cost statistics with compensated summation. Ordering decisions
/// outside [0, U^x] by more than clip_tol indicate a build/solve bug and
/// throw; smaller excursions are clipped.
EvaluationReport evaluate_policy(const PolicyBundle& policy, const NewsvendorConfig& cfg,
                                 const UncertaintySet& set, const Eigen::MatrixXd& paths,
                                 std::uint64_t seed, double clip_tol = 1e-6);

/// Re-expresses a policy on a finer lifting: the slope on a coarse piece is
/// copied to every fine piece that partitions it, the unique linear embedding
/// that commutes with retraction. The fine strategy must refine the policy's.
PolicyBundle embed_policy(const PolicyBundle& policy, const LiftingStrategy& fine);

struct PseudoSimulation {
  double profit = 0.0;
  long iterations = 0;
  EvaluationReport report;  // n = 0; mean/breakdown carry the model values
};

/// Freezes the expansion flags and production rules of `policy` inside the
/// counterpart built on `base` (the finest strategy, the paper's PLDR-5) and
/// re-optimizes the distribution rules. The returned profit is the
/// "pseudo-simulated" objective.
PseudoSimulation pseudo_simulate(const TransportConfig& cfg, const UncertaintySet& set,
                                 const PolicyBundle& policy, const LiftingStrategy& base,
                                 const SolveOptions& solve_options = {},
                                 Basis* shared_basis = nullptr);

/// First-stage and expectation cost components of a transportation policy,
/// evaluated at the lifted mean (production, expansion production, capital,
/// revenue, transport, holding, salvage).
std::map<std::string, double> transport_components(const TransportConfig& cfg,
                                                   const UncertaintySet& set,
                                                   const PolicyBundle& policy);

}  // namespace drlift
