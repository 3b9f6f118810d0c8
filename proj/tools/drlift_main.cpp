#include "drlift/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

using drlift::ExperimentSpec;

void add_common(CLI::App* cmd, ExperimentSpec& spec, std::string& strategies) {
  cmd->add_option("--preset", spec.preset, "Problem preset")
      ->check(CLI::IsMember(drlift::preset_names()));
  cmd->add_option("--strategies", strategies, "Comma-separated strategy list");
  cmd->add_option("--n", spec.n, "Simulation sample count");
  cmd->add_option("--seed", spec.seeds, "PRNG seed(s)");
  cmd->add_option("--out", spec.out_dir, "Output directory for CSV/JSON results");
  cmd->add_flag("--heavy", spec.heavy, "Include long-running configurations");
  cmd->add_option("--solver", spec.solver, "builtin or external:<command>");
  cmd->add_option("--data-dir", spec.data_dir, "Directory holding the parameter tables");
  cmd->add_option("--threads", spec.threads, "Worker cap (default: DRLIFT_THREADS or cores)");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision-rule lifting toolkit for multistage adaptive linear programs"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string strategies;
  std::string base_rule = "LDR";
  std::vector<std::string> profiles;
  double sweep_lo = 5.0, sweep_hi = 10.0, sweep_step = 0.25;
  int max_resolution = 4;

  auto* run = app.add_subcommand("run", "Build, solve and evaluate the given strategies");
  add_common(run, spec, strategies);

  auto* crossover =
      app.add_subcommand("crossover", "Ordering-limit sweep of model vs simulated cost");
  add_common(crossover, spec, strategies);
  crossover->add_option("--lo", sweep_lo, "Sweep start");
  crossover->add_option("--hi", sweep_hi, "Sweep end");
  crossover->add_option("--step", sweep_step, "Sweep step");

  auto* sensitivity =
      app.add_subcommand("sensitivity", "Per-stage uncertainty-resolution sensitivity");
  add_common(sensitivity, spec, strategies);
  sensitivity->add_option("--base", base_rule, "Base rule: LDR or PLDR-5");

  auto* clusters = app.add_subcommand("clusters", "PLDR breakpoint-set clusters");
  add_common(clusters, spec, strategies);
  clusters->add_option("--max-resolution", max_resolution, "Largest PLDR resolution");

  auto* hdr = app.add_subcommand("hdr-sweep", "Non-increasing vs non-decreasing HDR sweep");
  add_common(hdr, spec, strategies);
  hdr->add_option("--profiles", profiles, "HDR shorthand profiles")->required();

  auto* tables = app.add_subcommand("tables", "Reference model/simulator tables");
  add_common(tables, spec, strategies);

  CLI11_PARSE(app, argc, argv);
  spec.strategies = split_list(strategies);

  if (run->parsed()) {
    return guarded([&]() {
      const auto results = drlift::run_experiment(spec);
      std::printf("%-28s %14s %14s %10s %10s\n", "strategy", "model", "evaluated", "build_s",
                  "solve_s");
      for (const auto& r : results) {
        if (r.ok) {
          std::printf("%-28s %14.4f %14.4f %10.3f %10.3f\n", r.strategy.c_str(),
                      r.model_objective, r.evaluated_objective, r.build_seconds,
                      r.solve_seconds);
        } else {
          std::printf("%-28s failed: %s\n", r.strategy.c_str(), r.error.c_str());
        }
      }
    });
  }
  if (crossover->parsed()) {
    return guarded([&]() {
      const auto points = drlift::run_crossover(spec, sweep_lo, sweep_hi, sweep_step);
      std::printf("%8s %-14s %12s %12s %12s\n", "U^x", "strategy", "model", "sim_mean",
                  "sim_sigma");
      for (const auto& p : points) {
        if (p.ok) {
          std::printf("%8.2f %-14s %12.4f %12.4f %12.4f\n", p.order_limit, p.strategy.c_str(),
                      p.model_cost, p.sim_mean, p.sim_sigma);
        } else {
          std::printf("%8.2f %-14s failed: %s\n", p.order_limit, p.strategy.c_str(),
                      p.error.c_str());
        }
      }
    });
  }
  if (sensitivity->parsed()) {
    return guarded([&]() {
      const auto points = drlift::run_sensitivity(spec, base_rule);
      std::printf("%6s %12s %14s\n", "stage", "breakpoints", "profit");
      for (const auto& p : points) {
        std::printf("%6d %12d %14.4f\n", p.stage, p.breakpoints, p.profit);
      }
    });
  }
  if (clusters->parsed()) {
    return guarded([&]() {
      const auto result = drlift::run_clusters(spec, max_resolution);
      std::printf("candidates before spacing filter:");
      for (std::size_t k = 0; k < result.candidate_counts.size(); ++k) {
        std::printf(" PLDR-%zu=%d", k + 1, result.candidate_counts[k]);
      }
      std::printf("\n%4s %-28s %14s %14s %10s\n", "k", "breakpoints", "model", "pseudo",
                  "solve_s");
      for (const auto& p : result.points) {
        std::string z;
        for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
          z += (i > 0 ? "," : "") + std::to_string(p.breakpoints[i]);
        }
        std::printf("%4d %-28s %14.2f %14.2f %10.2f\n", p.resolution, z.c_str(),
                    p.model_objective, p.pseudo_profit, p.solve_seconds);
      }
    });
  }
  if (hdr->parsed()) {
    return guarded([&]() {
      const auto points = drlift::run_hdr_sweep(spec, profiles);
      std::printf("%-22s %-16s %14s %14s %10s\n", "profile", "direction", "model", "pseudo",
                  "solve_s");
      for (const auto& p : points) {
        std::printf("%-22s %-16s %14.2f %14.2f %10.2f\n", p.profile.c_str(),
                    p.reversed ? "non-decreasing" : "non-increasing", p.model_objective,
                    p.pseudo_profit, p.solve_seconds);
      }
    });
  }
  if (tables->parsed()) {
    return guarded([&]() {
      const auto results = drlift::run_tables(spec);
      std::printf("%-28s %14s %14s %18s %12s\n", "strategy", "model", "evaluated",
                  "first_stage_prod", "capital");
      for (const auto& r : results) {
        if (!r.ok) {
          std::printf("%-28s failed: %s\n", r.strategy.c_str(), r.error.c_str());
          continue;
        }
        const auto fs = r.components.find("first_stage_production");
        const auto cap = r.components.find("capital");
        std::printf("%-28s %14.4f %14.4f %18.4f %12.4f\n", r.strategy.c_str(),
                    r.model_objective, r.evaluated_objective,
                    fs == r.components.end() ? 0.0 : fs->second,
                    cap == r.components.end() ? 0.0 : cap->second);
      }
    });
  }
  return 0;
}
