#include "drlift/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace drlift {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> split_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) {
    values.push_back(std::stod(item));
  }
  return values;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

bool is_transport(const Preset& preset) { return preset.transport.has_value(); }

LpSolution solve_counterpart(const CounterpartLP& lp, const ExperimentSpec& spec,
                             const SolveOptions& opts) {
  if (spec.solver.rfind("external:", 0) == 0) {
    const std::string dir = spec.out_dir.empty() ? "." : spec.out_dir;
    return solve_external(lp, spec.solver.substr(9), dir);
  }
  if (!lp.binary_columns.empty()) {
    BinarySolveOptions bopts;
    bopts.lp = opts;
    return solve_with_binaries(lp, bopts);
  }
  return solve_lp(lp, opts);
}

}  // namespace

StrategySpec parse_strategy(const std::string& text) { return StrategySpec{text}; }

LiftingStrategy StrategySpec::realize(const Preset& preset) const {
  const int T = preset.horizon();
  if (text == "LDR") return LiftingStrategy::none(T);
  if (text.rfind("PLDR-", 0) == 0) {
    const auto at = text.find('@');
    if (at == std::string::npos) {
      throw std::invalid_argument("PLDR strategy '" + text + "' is missing '@<breakpoints>'");
    }
    const int k = std::stoi(text.substr(5, at - 5));
    const std::string source = text.substr(at + 1);
    std::vector<double> z;
    if (source == "base") {
      std::vector<double> base = preset.base_breakpoints;
      std::sort(base.begin(), base.end());
      if (k > static_cast<int>(base.size())) {
        throw std::invalid_argument("base set is smaller than PLDR-" + std::to_string(k));
      }
      z.assign(base.begin(), base.begin() + k);
    } else {
      z = split_values(source);
      std::sort(z.begin(), z.end());
      if (static_cast<int>(z.size()) != k) {
        throw std::invalid_argument("PLDR-" + std::to_string(k) + " given " +
                                    std::to_string(z.size()) + " breakpoints");
      }
    }
    return LiftingStrategy::uniform(T, std::move(z));
  }
  std::string shorthand = text;
  if (text.rfind("HDR<", 0) == 0) {
    const auto close = text.find('>');
    if (close == std::string::npos) {
      throw std::invalid_argument("HDR strategy '" + text + "' is missing '>'");
    }
    shorthand = text.substr(4, close - 4);
  }
  if (shorthand.find('^') == std::string::npos) {
    throw std::invalid_argument("strategy '" + text + "' not recognized");
  }
  LiftingStrategy strategy = hdr_strategy(shorthand, preset.base_breakpoints);
  if (strategy.horizon() != T) {
    throw std::invalid_argument("HDR stage count does not match the preset horizon");
  }
  return strategy;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DRLIFT_THREADS"); env != nullptr && *env != '\0') {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int count, int threads, const std::function<void(int)>& task) {
  threads = std::min(std::max(1, threads), std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = cursor.fetch_add(1);
        if (i >= count) return;
        task(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::uint64_t spec_hash(const ExperimentSpec& spec) {
  std::ostringstream canon;
  canon << spec.preset << '|' << spec.n << '|' << spec.heavy << '|' << spec.solver;
  for (const auto& s : spec.strategies) canon << '|' << s;
  for (const auto s : spec.seeds) canon << '|' << s;
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char b : canon.str()) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  return hash;
}

double max_constraint_violation(const AffineStageModel& model, const UncertaintySet& set,
                                const PolicyBundle& policy, const Eigen::MatrixXd& paths) {
  double worst = 0.0;
  std::vector<const PolicyRule*> rules(model.num_blocks());
  for (int b = 0; b < model.num_blocks(); ++b) {
    rules[b] = &policy.rule(model.blocks()[b].name);
  }
  for (int p = 0; p < paths.rows(); ++p) {
    const Eigen::VectorXd d = paths.row(p).transpose();
    const Eigen::VectorXd lifted = lift_point(d, policy.strategy, set);
    for (const StageConstraint& c : model.constraints()) {
      double value = c.offset.constant;
      for (const Coef& coef : c.offset.coefs) value += coef.value * d(coef.index);
      for (const BlockTerm& term : c.terms) {
        const PolicyRule& rule = *rules[term.block];
        value += term.coef * (rule.intercept + rule.slope * lifted);
      }
      const double violation = c.sense == Sense::Ge ? -value : std::abs(value);
      worst = std::max(worst, violation);
    }
  }
  return worst;
}

namespace {

StrategyResult evaluate_one(const ExperimentSpec& spec, const Preset& preset,
                            const UncertaintySet& set, const std::string& text,
                            const Eigen::MatrixXd* paths) {
  StrategyResult result;
  result.strategy = text;
  try {
    const LiftingStrategy strategy = parse_strategy(text).realize(preset);
    if (is_transport(preset)) {
      const TransportConfig& cfg = *preset.transport;
      const AffineStageModel model = transport_model(cfg);
      auto t0 = Clock::now();
      const CounterpartLP lp = build_counterpart(model, set, strategy);
      result.build_seconds = seconds_since(t0);
      t0 = Clock::now();
      const LpSolution sol = solve_counterpart(lp, spec, {});
      result.solve_seconds = seconds_since(t0);
      if (sol.status != LpStatus::Optimal) {
        throw std::runtime_error("counterpart solve ended " +
                                 std::string(sol.status == LpStatus::Infeasible ? "infeasible"
                                                                                : "unbounded"));
      }
      result.model_objective = sol.objective;
      const PolicyBundle policy = extract_policy(model, lp, strategy, sol.primal, sol.objective);
      result.components = transport_components(cfg, set, policy);
      std::vector<double> base = preset.base_breakpoints;
      std::sort(base.begin(), base.end());
      const LiftingStrategy finest = LiftingStrategy::uniform(cfg.horizon, base);
      const PseudoSimulation pseudo = pseudo_simulate(cfg, set, policy, finest);
      result.evaluated_objective = pseudo.profit;
      result.report = pseudo.report;
      result.ok = true;
      return result;
    }

    const NewsvendorConfig& cfg = *preset.newsvendor;
    const AffineStageModel model = newsvendor_model(cfg);
    auto t0 = Clock::now();
    const CounterpartLP lp = build_counterpart(model, set, strategy);
    result.build_seconds = seconds_since(t0);
    t0 = Clock::now();
    const LpSolution sol =
        spec.solver.rfind("external:", 0) == 0
            ? solve_counterpart(lp, spec, {})
            : solve_lp_canonical(lp, history_slope_columns(model, lp, strategy));
    result.solve_seconds = seconds_since(t0);
    if (sol.status != LpStatus::Optimal) {
      throw std::runtime_error("counterpart solve ended " +
                               std::string(sol.status == LpStatus::Infeasible ? "infeasible"
                                                                              : "unbounded"));
    }
    result.model_objective = sol.objective;
    const PolicyBundle policy = extract_policy(model, lp, strategy, sol.primal, sol.objective);
    result.first_stage_order = policy.rule("x[1]").intercept;
    Eigen::MatrixXd local;
    if (paths == nullptr) {
      local = sample_paths(set, spec.n, spec.seeds.empty() ? 42 : spec.seeds.front());
      paths = &local;
    }
    result.report = evaluate_policy(policy, cfg, set, *paths,
                                    spec.seeds.empty() ? 42 : spec.seeds.front());
    result.evaluated_objective = result.report.mean;
    result.ok = true;
  } catch (const std::exception& err) {
    result.ok = false;
    result.error = err.what();
  }
  return result;
}

void write_outputs(const ExperimentSpec& spec, const std::vector<StrategyResult>& results) {
  if (spec.out_dir.empty()) return;
  std::filesystem::create_directories(spec.out_dir);

  std::ofstream csv(spec.out_dir + "/results.csv");
  csv << "strategy,model_objective,evaluated_objective,build_seconds,solve_seconds,status\n";
  for (const auto& r : results) {
    csv << r.strategy << ',' << fmt(r.model_objective) << ',' << fmt(r.evaluated_objective)
        << ',' << fmt(r.build_seconds) << ',' << fmt(r.solve_seconds) << ','
        << (r.ok ? "ok" : "failed: " + r.error) << "\n";
  }

  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json row{{"strategy", r.strategy},
                       {"ok", r.ok},
                       {"model_objective", r.model_objective},
                       {"evaluated_objective", r.evaluated_objective},
                       {"build_seconds", r.build_seconds},
                       {"solve_seconds", r.solve_seconds},
                       {"first_stage_order", r.first_stage_order},
                       {"components", r.components}};
    if (!r.ok) row["error"] = r.error;
    doc.push_back(std::move(row));
  }
  std::ofstream json_out(spec.out_dir + "/results.json");
  json_out << doc.dump(2) << "\n";

  nlohmann::json manifest{{"preset", spec.preset},
                          {"strategies", spec.strategies},
                          {"n", spec.n},
                          {"seeds", spec.seeds},
                          {"heavy", spec.heavy},
                          {"solver", spec.solver},
                          {"config_hash", spec_hash(spec)}};
  std::ofstream manifest_out(spec.out_dir + "/manifest.json");
  manifest_out << manifest.dump(2) << "\n";
}

}  // namespace

std::vector<StrategyResult> run_experiment(const ExperimentSpec& spec) {
  const Preset preset = load_preset(spec.preset, spec.data_dir);
  const UncertaintySet set = preset.uncertainty();

  Eigen::MatrixXd paths;
  const Eigen::MatrixXd* shared_paths = nullptr;
  if (!is_transport(preset)) {
    paths = sample_paths(set, spec.n, spec.seeds.empty() ? 42 : spec.seeds.front());
    shared_paths = &paths;
  }

  std::vector<StrategyResult> results(spec.strategies.size());
  const int threads = resolve_threads(spec.threads);
  parallel_for(static_cast<int>(spec.strategies.size()), threads, [&](int i) {
    results[i] = evaluate_one(spec, preset, set, spec.strategies[i], shared_paths);
  });
  write_outputs(spec, results);
  return results;
}

std::vector<CrossoverPoint> run_crossover(const ExperimentSpec& spec, double lo, double hi,
                                          double step) {
  const Preset base_preset = load_preset(spec.preset, spec.data_dir);
  if (!base_preset.newsvendor.has_value()) {
    throw std::invalid_argument("crossover needs a newsvendor preset");
  }
  const NewsvendorConfig base_cfg = *base_preset.newsvendor;
  const UncertaintySet set = newsvendor_uncertainty(base_cfg);
  const std::uint64_t seed = spec.seeds.empty() ? 42 : spec.seeds.front();
  const Eigen::MatrixXd paths = sample_paths(set, spec.n, seed);

  std::vector<double> grid;
  for (double v = lo; v <= hi + 1e-9; v += step) grid.push_back(v);

  std::vector<std::vector<CrossoverPoint>> rows(grid.size());
  const int threads = resolve_threads(spec.threads);
  parallel_for(static_cast<int>(grid.size()), threads, [&](int g) {
    const double ux = grid[g];
    NewsvendorConfig cfg = base_cfg;
    cfg.order_limit = ux;
    const AffineStageModel model = newsvendor_model(cfg);
    const std::vector<std::pair<std::string, std::vector<double>>> variants = {
        {"LDR", {}},
        {"PLDR-1@mean", {cfg.demand.mid()}},
        {"PLDR-1@Ux", {ux}},
    };
    for (const auto& [name, z] : variants) {
      CrossoverPoint point;
      point.order_limit = ux;
      point.strategy = name;
      try {
        const LiftingStrategy strategy =
            z.empty() ? LiftingStrategy::none(cfg.horizon)
                      : LiftingStrategy::uniform(cfg.horizon, z);
        strategy.validate_for(set);
        const CounterpartLP lp = build_counterpart(model, set, strategy);
        const LpSolution sol =
            solve_lp_canonical(lp, history_slope_columns(model, lp, strategy));
        if (sol.status != LpStatus::Optimal) throw std::runtime_error("solve failed");
        const PolicyBundle policy =
            extract_policy(model, lp, strategy, sol.primal, sol.objective);
        const EvaluationReport report = evaluate_policy(policy, cfg, set, paths, seed);
        point.model_cost = sol.objective;
        point.sim_mean = report.mean;
        point.sim_sigma = report.sigma;
        point.ok = true;
      } catch (const std::exception& err) {
        point.ok = false;
        point.error = err.what();
      }
      rows[g].push_back(std::move(point));
    }
  });

  std::vector<CrossoverPoint> flat;
  for (auto& row : rows) {
    for (auto& p : row) flat.push_back(std::move(p));
  }
  if (!spec.out_dir.empty()) {
    std::filesystem::create_directories(spec.out_dir);
    std::ofstream csv(spec.out_dir + "/crossover.csv");
    csv << "order_limit,strategy,model_cost,sim_mean,sim_sigma,status\n";
    for (const auto& p : flat) {
      csv << fmt(p.order_limit) << ',' << p.strategy << ',' << fmt(p.model_cost) << ','
          << fmt(p.sim_mean) << ',' << fmt(p.sim_sigma) << ','
          << (p.ok ? "ok" : "failed: " + p.error) << "\n";
    }
  }
  return flat;
}

std::vector<SensitivityPoint> run_sensitivity(const ExperimentSpec& spec,
                                              const std::string& base_rule,
                                              int max_breakpoints) {
  const Preset preset = load_preset(spec.preset, spec.data_dir);
  if (!preset.transport.has_value()) {
    throw std::invalid_argument("sensitivity needs a transportation preset");
  }
  const TransportConfig& cfg = *preset.transport;
  const UncertaintySet set = transport_uncertainty(cfg);
  const AffineStageModel model = transport_model(cfg);
  std::vector<double> base = preset.base_breakpoints;
  std::sort(base.begin(), base.end());
  max_breakpoints = std::min<int>(max_breakpoints, static_cast<int>(base.size()));

  std::vector<double> base_stage;
  if (base_rule == "LDR") {
    base_stage = {};
  } else if (base_rule == "PLDR-5" || base_rule == "PLDR-base") {
    base_stage = base;
  } else {
    throw std::invalid_argument("sensitivity base rule '" + base_rule + "' not recognized");
  }

  const int T = cfg.horizon;
  struct Task {
    int stage;
    int count;
  };
  std::vector<Task> tasks;
  for (int t = 2; t <= T; ++t) {
    for (int i = 0; i <= max_breakpoints; ++i) tasks.push_back({t, i});
  }
  std::vector<SensitivityPoint> points(tasks.size());
  const int threads = resolve_threads(spec.threads);
  parallel_for(static_cast<int>(tasks.size()), threads, [&](int k) {
    const Task& task = tasks[k];
    std::vector<std::vector<double>> lists(T - 1, base_stage);
    lists[stage_coord(task.stage)] = std::vector<double>(base.begin(), base.begin() + task.count);
    const LiftingStrategy strategy{std::move(lists)};
    const CounterpartLP lp = build_counterpart(model, set, strategy);
    const LpSolution sol = solve_counterpart(lp, spec, {});
    if (sol.status != LpStatus::Optimal) throw std::runtime_error("sensitivity solve failed");
    points[k] = SensitivityPoint{task.stage, task.count, sol.objective};
  });

  if (!spec.out_dir.empty()) {
    std::filesystem::create_directories(spec.out_dir);
    std::ofstream csv(spec.out_dir + "/sensitivity.csv");
    csv << "stage,breakpoints,profit\n";
    for (const auto& p : points) {
      csv << p.stage << ',' << p.breakpoints << ',' << fmt(p.profit) << "\n";
    }
  }
  return points;
}

std::vector<std::vector<int>> index_combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> combo(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      out.push_back(combo);
      return;
    }
    for (int i = start; i < n; ++i) {
      combo[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

bool spacing_ok(const std::vector<int>& combo, int k) {
  if (k < 2 || combo.empty()) return true;
  return combo.back() - combo.front() >= k;
}

std::vector<std::vector<double>> pldr_candidates(const std::vector<double>& base, int k,
                                                 bool filtered) {
  std::vector<double> sorted = base;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<double>> out;
  for (const auto& combo : index_combinations(static_cast<int>(sorted.size()), k)) {
    if (filtered && !spacing_ok(combo, k)) continue;
    std::vector<double> values;
    values.reserve(k);
    for (int i : combo) values.push_back(sorted[i]);
    out.push_back(std::move(values));
  }
  return out;
}

namespace {

struct TransportSweepContext {
  const TransportConfig& cfg;
  const UncertaintySet& set;
  const AffineStageModel& model;
  const LiftingStrategy& finest;
};

/// Model solve + pseudo-simulation for one strategy, with optional warm
/// bases threaded through a sequential chunk.
std::pair<double, double> solve_and_pseudo(const TransportSweepContext& ctx,
                                           const LiftingStrategy& strategy,
                                           Basis* model_basis, Basis* pseudo_basis,
                                           double* solve_seconds) {
  const CounterpartLP lp = build_counterpart(ctx.model, ctx.set, strategy);
  const auto t0 = Clock::now();
  BinarySolveOptions opts;
  if (model_basis != nullptr && !model_basis->empty()) opts.lp.warm_start = model_basis;
  const LpSolution sol =
      lp.binary_columns.empty() ? solve_lp(lp, opts.lp) : solve_with_binaries(lp, opts);
  if (solve_seconds != nullptr) *solve_seconds = seconds_since(t0);
  if (sol.status != LpStatus::Optimal) throw std::runtime_error("model solve failed");
  if (model_basis != nullptr) *model_basis = sol.basis;
  const PolicyBundle policy =
      extract_policy(ctx.model, lp, strategy, sol.primal, sol.objective);
  const PseudoSimulation pseudo =
      pseudo_simulate(ctx.cfg, ctx.set, policy, ctx.finest, {}, pseudo_basis);
  return {sol.objective, pseudo.profit};
}

}  // namespace

ClustersResult run_clusters(const ExperimentSpec& spec, int max_resolution) {
  const Preset preset = load_preset(spec.preset, spec.data_dir);
  if (!preset.transport.has_value()) {
    throw std::invalid_argument("clusters needs a transportation preset");
  }
  const TransportConfig& cfg = *preset.transport;
  const UncertaintySet set = transport_uncertainty(cfg);
  const AffineStageModel model = transport_model(cfg);
  std::vector<double> base = preset.base_breakpoints;
  std::sort(base.begin(), base.end());
  const LiftingStrategy finest = LiftingStrategy::uniform(cfg.horizon, base);
  TransportSweepContext ctx{cfg, set, model, finest};

  ClustersResult result;
  struct Job {
    int resolution;
    std::vector<double> z;
  };
  std::vector<Job> jobs;
  for (int k = 1; k <= max_resolution; ++k) {
    result.candidate_counts.push_back(
        static_cast<int>(pldr_candidates(base, k, /*filtered=*/false).size()));
    for (auto& z : pldr_candidates(base, k, /*filtered=*/true)) {
      jobs.push_back({k, std::move(z)});
    }
  }

  result.points.resize(jobs.size());
  const int threads = resolve_threads(spec.threads);
  std::atomic<int> cursor{0};
  parallel_for(threads, threads, [&](int) {
    Basis model_basis, pseudo_basis;
    int last_resolution = -1;
    while (true) {
      const int i = cursor.fetch_add(1);
      if (i >= static_cast<int>(jobs.size())) return;
      const Job& job = jobs[i];
      ClusterPoint point;
      point.resolution = job.resolution;
      point.breakpoints = job.z;
      const LiftingStrategy strategy = LiftingStrategy::uniform(cfg.horizon, job.z);
      // Warm bases only help within one resolution (same LP shape).
      if (job.resolution != last_resolution) model_basis = Basis{};
      last_resolution = job.resolution;
      const auto [model_obj, pseudo_obj] =
          solve_and_pseudo(ctx, strategy, &model_basis, &pseudo_basis, &point.solve_seconds);
      point.model_objective = model_obj;
      point.pseudo_profit = pseudo_obj;
      result.points[i] = std::move(point);
    }
  });

  if (!spec.out_dir.empty()) {
    std::filesystem::create_directories(spec.out_dir);
    std::ofstream csv(spec.out_dir + "/clusters.csv");
    csv << "resolution,breakpoints,model_objective,pseudo_profit,solve_seconds\n";
    for (const auto& p : result.points) {
      csv << p.resolution << ",\"";
      for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
        csv << (i > 0 ? ";" : "") << p.breakpoints[i];
      }
      csv << "\"," << fmt(p.model_objective) << ',' << fmt(p.pseudo_profit) << ','
          << fmt(p.solve_seconds) << "\n";
    }
  }
  return result;
}

std::vector<HdrPoint> run_hdr_sweep(const ExperimentSpec& spec,
                                    const std::vector<std::string>& profiles) {
  const Preset preset = load_preset(spec.preset, spec.data_dir);
  if (!preset.transport.has_value()) {
    throw std::invalid_argument("hdr-sweep needs a transportation preset");
  }
  const TransportConfig& cfg = *preset.transport;
  const UncertaintySet set = transport_uncertainty(cfg);
  const AffineStageModel model = transport_model(cfg);
  std::vector<double> base = preset.base_breakpoints;
  std::sort(base.begin(), base.end());
  const LiftingStrategy finest = LiftingStrategy::uniform(cfg.horizon, base);
  TransportSweepContext ctx{cfg, set, model, finest};

  struct Job {
    std::string profile;
    bool reversed;
    std::vector<int> counts;
    std::map<int, std::vector<double>> sets;
  };
  std::vector<Job> jobs;
  for (const std::string& profile : profiles) {
    for (const bool reversed : {false, true}) {
      std::vector<int> counts = parse_hdr_counts(profile);
      if (reversed) std::reverse(counts.begin(), counts.end());
      if (static_cast<int>(counts.size()) != cfg.horizon - 1) {
        throw std::invalid_argument("profile '" + profile + "' does not match the horizon");
      }
      std::vector<int> resolutions;
      for (int c : counts) {
        if (c > 0 && std::find(resolutions.begin(), resolutions.end(), c) == resolutions.end()) {
          resolutions.push_back(c);
        }
      }
      std::sort(resolutions.begin(), resolutions.end());

      std::vector<Job> partial{{profile, reversed, counts, {}}};
      for (int r : resolutions) {
        const auto candidates = pldr_candidates(base, r, /*filtered=*/true);
        std::vector<Job> expanded;
        expanded.reserve(partial.size() * candidates.size());
        for (const Job& job : partial) {
          for (const auto& z : candidates) {
            Job next = job;
            next.sets[r] = z;
            expanded.push_back(std::move(next));
          }
        }
        partial = std::move(expanded);
      }
      for (auto& job : partial) jobs.push_back(std::move(job));
    }
  }

  std::vector<HdrPoint> points(jobs.size());
  const int threads = resolve_threads(spec.threads);
  std::atomic<int> cursor{0};
  parallel_for(threads, threads, [&](int) {
    Basis model_basis, pseudo_basis;
    int last_shape = -1;
    while (true) {
      const int i = cursor.fetch_add(1);
      if (i >= static_cast<int>(jobs.size())) return;
      const Job& job = jobs[i];
      std::vector<std::vector<double>> lists;
      lists.reserve(job.counts.size());
      for (int c : job.counts) {
        lists.push_back(c == 0 ? std::vector<double>{} : job.sets.at(c));
      }
      const LiftingStrategy strategy{std::move(lists)};
      // Model bases transfer between assignments of the same profile shape.
      const int shape = strategy.lifted_dim() * 64 + (job.reversed ? 1 : 0);
      if (shape != last_shape) model_basis = Basis{};
      last_shape = shape;

      HdrPoint point;
      point.profile = job.profile;
      point.reversed = job.reversed;
      point.sets = job.sets;
      const auto [model_obj, pseudo_obj] =
          solve_and_pseudo(ctx, strategy, &model_basis, &pseudo_basis, &point.solve_seconds);
      point.model_objective = model_obj;
      point.pseudo_profit = pseudo_obj;
      points[i] = std::move(point);
    }
  });

  if (!spec.out_dir.empty()) {
    std::filesystem::create_directories(spec.out_dir);
    std::ofstream csv(spec.out_dir + "/hdr_sweep.csv");
    csv << "profile,direction,sets,model_objective,pseudo_profit,solve_seconds\n";
    for (const auto& p : points) {
      csv << p.profile << ',' << (p.reversed ? "non-decreasing" : "non-increasing") << ",\"";
      bool first = true;
      for (const auto& [r, z] : p.sets) {
        csv << (first ? "" : "|") << r << ":";
        for (std::size_t i = 0; i < z.size(); ++i) csv << (i > 0 ? ";" : "") << z[i];
        first = false;
      }
      csv << "\"," << fmt(p.model_objective) << ',' << fmt(p.pseudo_profit) << ','
          << fmt(p.solve_seconds) << "\n";
    }
  }
  return points;
}

std::vector<StrategyResult> run_tables(const ExperimentSpec& spec) {
  ExperimentSpec table_spec = spec;
  if (table_spec.strategies.empty()) {
    const Preset preset = load_preset(spec.preset, spec.data_dir);
    if (preset.newsvendor.has_value()) {
      const double mean = preset.newsvendor->demand.mid();
      const double limit = preset.newsvendor->order_limit;
      table_spec.strategies = {"LDR", "PLDR-1@" + fmt(mean), "PLDR-1@" + fmt(limit)};
    } else {
      table_spec.strategies = {"LDR", "PLDR-1@0.65", "PLDR-2@0.35:0.65"};
      if (spec.heavy) {
        table_spec.strategies.push_back("PLDR-3@0.2:0.5:0.65");
        table_spec.strategies.push_back("PLDR-4@0.2:0.5:0.65:0.8");
        table_spec.strategies.push_back("PLDR-5@base");
      }
    }
  }
  return run_experiment(table_spec);
}

}  // namespace drlift
