#include "drlift/simulate.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace drlift {

namespace {

/// Neumaier compensated accumulator; order-independent enough to keep
/// aggregation deterministic for a fixed path ordering.
class Accumulator {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

std::string EvaluationReport::to_json() const {
  nlohmann::json doc{{"n", n},     {"seed", seed}, {"mean", mean},
                     {"sigma", sigma}, {"min", min},   {"max", max}};
  doc["breakdown"] = breakdown;
  return doc.dump();
}

std::string EvaluationReport::csv_header(const std::vector<std::string>& components) {
  std::string line = "preset,strategy,n,seed,mean,sigma,min,max";
  for (const auto& c : components) line += ",breakdown_" + c;
  return line;
}

std::string EvaluationReport::csv_row(const std::string& preset, const std::string& strategy,
                                      const std::vector<std::string>& components) const {
  std::string line = preset + "," + strategy + "," + std::to_string(n) + "," +
                     std::to_string(seed) + "," + fmt(mean) + "," + fmt(sigma) + "," +
                     fmt(min) + "," + fmt(max);
  for (const auto& c : components) {
    const auto it = breakdown.find(c);
    line += "," + fmt(it == breakdown.end() ? 0.0 : it->second);
  }
  return line;
}

Eigen::MatrixXd sample_paths(const UncertaintySet& set, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  std::mt19937_64 rng(seed);
  const int dim = set.dim();
  Eigen::MatrixXd paths(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < dim; ++c) {
      const Interval& b = set.all_bounds()[c];
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      paths(i, c) = b.lo + u * b.width();
    }
  }
  return paths;
}

EvaluationReport evaluate_policy(const PolicyBundle& policy, const NewsvendorConfig& cfg,
                                 const UncertaintySet& set, const Eigen::MatrixXd& paths,
                                 std::uint64_t seed, double clip_tol) {
  const int T = cfg.horizon;
  if (policy.strategy.horizon() != T) {
    throw std::invalid_argument("policy strategy horizon does not match the problem");
  }
  if (paths.cols() != T - 1) {
    throw std::invalid_argument("paths have the wrong stage count");
  }
  const int n = static_cast<int>(paths.rows());

  // Gather ordering rules once.
  std::vector<const PolicyRule*> order(T);
  for (int t = 1; t <= T - 1; ++t) {
    order[t] = &policy.rule("x[" + std::to_string(t) + "]");
  }

  Accumulator total, total_sq, order_acc, hold_acc, backlog_acc;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  Eigen::VectorXd lifted(policy.strategy.lifted_dim());
  for (int p = 0; p < n; ++p) {
    const Eigen::VectorXd d = paths.row(p).transpose();
    lifted = lift_point(d, policy.strategy, set);

    double inventory = cfg.initial_inventory;
    double cost_order = 0.0, cost_hold = 0.0, cost_backlog = 0.0;
    for (int t = 1; t <= T; ++t) {
      if (t >= 2) {
        inventory += -d(stage_coord(t));
        cost_hold += cfg.holding_cost * std::max(0.0, inventory);
        cost_backlog += cfg.backlog_cost * std::max(0.0, -inventory);
      }
      if (t <= T - 1) {
        // Only coordinates revealed by stage t may influence the order.
        double amount = order[t]->intercept;
        const int window = t >= 2 ? policy.strategy.observed_dim(t) : 0;
        for (int j = 0; j < window; ++j) amount += order[t]->slope(j) * lifted(j);
        if (amount < -clip_tol || amount > cfg.order_limit + clip_tol) {
          std::ostringstream msg;
          msg << "ordering rule x[" << t << "] leaves [0, U^x] by "
              << std::max(-amount, amount - cfg.order_limit)
              << "; the counterpart should be robustly feasible";
          throw std::runtime_error(msg.str());
        }
        amount = std::clamp(amount, 0.0, cfg.order_limit);
        cost_order += cfg.order_cost * amount;
        inventory += amount;
      }
    }
    const double cost = cost_order + cost_hold + cost_backlog;
    total.add(cost);
    total_sq.add(cost * cost);
    order_acc.add(cost_order);
    hold_acc.add(cost_hold);
    backlog_acc.add(cost_backlog);
    lo = std::min(lo, cost);
    hi = std::max(hi, cost);
  }

  EvaluationReport report;
  report.n = n;
  report.seed = seed;
  report.mean = total.total() / n;
  const double var = std::max(0.0, (total_sq.total() - n * report.mean * report.mean) /
                                       std::max(1, n - 1));
  report.sigma = std::sqrt(var);
  report.min = lo;
  report.max = hi;
  report.breakdown["ordering"] = order_acc.total() / n;
  report.breakdown["holding"] = hold_acc.total() / n;
  report.breakdown["backlog"] = backlog_acc.total() / n;
  return report;
}

PolicyBundle embed_policy(const PolicyBundle& policy, const LiftingStrategy& fine) {
  if (!fine.refines(policy.strategy)) {
    throw std::invalid_argument("target strategy does not refine the policy's strategy");
  }
  PolicyBundle out{fine, policy.model_objective, {}};

  // Map each fine piece to the coarse piece containing its segment. Pieces
  // partition (l, u) by the breakpoint chain, so locating the fine segment's
  // lower end inside the coarse chain is enough.
  for (const auto& [name, rule] : policy.rules) {
    PolicyRule embedded;
    embedded.intercept = rule.intercept;
    embedded.slope = Eigen::RowVectorXd::Zero(fine.lifted_dim());
    for (int t = 2; t <= fine.horizon(); ++t) {
      const auto& coarse = policy.strategy.breakpoints(t);
      const auto& dense = fine.breakpoints(t);
      const int coarse_off = policy.strategy.stage_offset(t);
      const int fine_off = fine.stage_offset(t);
      for (int j = 0; j < fine.pieces(t); ++j) {
        // Lower end of fine piece j (the stage bound for j = 0).
        int coarse_piece = 0;
        if (j > 0) {
          const double lower = dense[j - 1];
          coarse_piece = static_cast<int>(
              std::upper_bound(coarse.begin(), coarse.end(), lower) - coarse.begin());
          if (coarse_piece > 0 && coarse[coarse_piece - 1] == lower) {
            // A shared breakpoint starts the next coarse piece.
          }
        }
        embedded.slope(fine_off + j) = rule.slope(coarse_off + coarse_piece);
      }
    }
    out.rules.emplace(name, std::move(embedded));
  }
  return out;
}

PseudoSimulation pseudo_simulate(const TransportConfig& cfg, const UncertaintySet& set,
                                 const PolicyBundle& policy, const LiftingStrategy& base,
                                 const SolveOptions& solve_options, Basis* shared_basis) {
  const PolicyBundle embedded = embed_policy(policy, base);

  FrozenPolicies frozen;
  for (const auto& [name, rule] : embedded.rules) {
    if (name.rfind("x[", 0) == 0 || name.rfind("xexp[", 0) == 0 ||
        name.rfind("ybin[", 0) == 0) {
      frozen.emplace(name, rule);
    }
  }

  const AffineStageModel model = transport_model(cfg);
  BuildOptions build;
  build.frozen = &frozen;
  const CounterpartLP lp = build_counterpart(model, set, base, build);

  SolveOptions opts = solve_options;
  if (shared_basis != nullptr && !shared_basis->empty()) opts.warm_start = shared_basis;
  const LpSolution sol = solve_lp(lp, opts);
  if (sol.status != LpStatus::Optimal) {
    throw std::runtime_error("pseudo-simulator LP is not optimal; frozen rules should be "
                             "robustly feasible");
  }
  if (shared_basis != nullptr) *shared_basis = sol.basis;

  PseudoSimulation result;
  result.profit = sol.objective;
  result.iterations = sol.iterations;
  result.report.mean = sol.objective;
  PolicyBundle merged = extract_policy(model, lp, base, sol.primal, sol.objective);
  for (const auto& [name, rule] : frozen) merged.rules[name] = rule;
  result.report.breakdown = transport_components(cfg, set, merged);
  return result;
}

std::map<std::string, double> transport_components(const TransportConfig& cfg,
                                                   const UncertaintySet& set,
                                                   const PolicyBundle& policy) {
  const Eigen::VectorXd mean = lifted_mean(policy.strategy, set);
  const int T = cfg.horizon;
  auto value = [&](const std::string& name) { return policy.value(name, mean); };
  auto name2 = [](const char* base, int i, int t) {
    return std::string(base) + "[" + std::to_string(i) + "," + std::to_string(t) + "]";
  };

  std::map<std::string, double> out;
  double production = 0.0, expansion_prod = 0.0, capital = 0.0;
  double first_stage_production = 0.0;
  const bool exp = cfg.expansion.enabled;
  for (int i = 1; i <= cfg.suppliers; ++i) {
    const double ci = cfg.production_cost(i - 1);
    for (int t = 1; t <= T - 1; ++t) {
      production += ci * value(name2("x", i, t));
      if (exp) {
        expansion_prod += (1.0 + cfg.expansion.surcharge) * ci * value(name2("xexp", i, t));
      }
      if (t == 1) {
        first_stage_production +=
            ci * value(name2("x", i, t)) +
            (exp ? (1.0 + cfg.expansion.surcharge) * ci * value(name2("xexp", i, t)) : 0.0);
      }
    }
    if (exp) {
      capital += cfg.expansion.capital(i - 1) * policy.rule("ybin[" + std::to_string(i) + "]").intercept;
    }
  }
  double revenue = 0.0, transport = 0.0, holding = 0.0, salvage_credit = 0.0;
  const Eigen::VectorXd salvage = cfg.salvage_values();
  for (int t = 2; t <= T; ++t) {
    for (int i = 1; i <= cfg.suppliers; ++i) {
      holding += cfg.holding_cost(i - 1) * value(name2("I", i, t));
      if (t == T) salvage_credit += salvage(i - 1) * value(name2("I", i, t));
      for (int j = 1; j <= cfg.customers; ++j) {
        const double shipped = policy.value(
            "y[" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(t) + "]",
            mean);
        revenue += cfg.revenue(j - 1) * shipped;
        transport += cfg.transport_cost(i - 1, j - 1) * shipped;
      }
    }
  }
  out["production"] = production;
  out["expansion_production"] = expansion_prod;
  out["capital"] = capital;
  out["first_stage_production"] = first_stage_production;
  out["revenue"] = revenue;
  out["transport"] = transport;
  out["holding"] = holding;
  out["salvage"] = salvage_credit;
  return out;
}

}  // namespace drlift
