#include "drlift/counterpart.hpp"
#include "drlift/problems.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_BuildCounterpart(benchmark::State& state) {
  const auto cfg = drlift::transport_10x10(static_cast<int>(state.range(0)),
                                           drlift::SalvageRule::cost_fraction(0.15));
  const auto model = drlift::transport_model(cfg);
  const auto set = drlift::transport_uncertainty(cfg);
  const auto strategy = drlift::LiftingStrategy::uniform(cfg.horizon, {0.35, 0.65});
  for (auto _ : state) {
    benchmark::DoNotOptimize(drlift::build_counterpart(model, set, strategy));
  }
}
BENCHMARK(BM_BuildCounterpart)->Arg(10)->Arg(20);

}  // namespace
