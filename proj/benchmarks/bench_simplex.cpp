#include "drlift/lp.hpp"
#include "drlift/problems.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_NewsvendorSolve(benchmark::State& state) {
  drlift::NewsvendorConfig cfg;
  cfg.horizon = static_cast<int>(state.range(0));
  const auto model = drlift::newsvendor_model(cfg);
  const auto set = drlift::newsvendor_uncertainty(cfg);
  const auto strategy = drlift::LiftingStrategy::uniform(cfg.horizon, {5.0});
  const auto lp = drlift::build_counterpart(model, set, strategy);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drlift::solve_lp(lp));
  }
}
BENCHMARK(BM_NewsvendorSolve)->Arg(4)->Arg(8)->Arg(12);

void BM_TransportSolve(benchmark::State& state) {
  const auto cfg =
      drlift::transport_3x2(static_cast<int>(state.range(0)), drlift::SalvageRule::fixed(6.0));
  const auto model = drlift::transport_model(cfg);
  const auto set = drlift::transport_uncertainty(cfg);
  const auto strategy = drlift::LiftingStrategy::uniform(cfg.horizon, {0.5, 1.0, 1.5});
  const auto lp = drlift::build_counterpart(model, set, strategy);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drlift::solve_lp(lp));
  }
}
BENCHMARK(BM_TransportSolve)->Arg(6)->Arg(10);

}  // namespace
