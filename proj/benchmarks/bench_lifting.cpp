#include "drlift/uncertainty.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

void BM_LiftRetract(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const int breaks = static_cast<int>(state.range(1));
  const auto set = drlift::UncertaintySet::box(horizon, 0.0, 1.0);
  std::vector<double> z;
  for (int i = 1; i <= breaks; ++i) z.push_back(static_cast<double>(i) / (breaks + 1));
  const auto strategy = drlift::LiftingStrategy::uniform(horizon, z);
  std::mt19937_64 rng(1);
  Eigen::VectorXd d(horizon - 1);
  for (auto _ : state) {
    for (int c = 0; c < d.size(); ++c) {
      d(c) = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    const Eigen::VectorXd lifted = drlift::lift_point(d, strategy, set);
    benchmark::DoNotOptimize(drlift::retract_point(lifted, strategy));
  }
}
BENCHMARK(BM_LiftRetract)->Args({10, 2})->Args({20, 5});

void BM_OuterApproximation(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const auto set = drlift::UncertaintySet::box(horizon, 0.0, 1.0);
  const auto strategy =
      drlift::LiftingStrategy::uniform(horizon, {0.2, 0.35, 0.5, 0.65, 0.8});
  for (auto _ : state) {
    benchmark::DoNotOptimize(drlift::outer_approximation(set, strategy));
  }
}
BENCHMARK(BM_OuterApproximation)->Arg(10)->Arg(20);

}  // namespace
