#include "drlift/problems.hpp"

#include "drlift/lp.hpp"

#include <doctest.h>

using namespace drlift;

namespace {

double solve_objective(const AffineStageModel& model, const UncertaintySet& set,
                       const LiftingStrategy& strategy, double* x1 = nullptr) {
  const CounterpartLP lp = build_counterpart(model, set, strategy);
  const LpSolution sol =
      lp.binary_columns.empty() ? solve_lp(lp) : solve_with_binaries(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  if (x1 != nullptr) {
    const PolicyBundle policy = extract_policy(model, lp, strategy, sol.primal, sol.objective);
    *x1 = policy.rules.count("x[1]") ? policy.rule("x[1]").intercept : 0.0;
  }
  return sol.objective;
}

}  // namespace

TEST_CASE("newsvendor T=4 reference objectives and first-stage orders") {
  NewsvendorConfig cfg;
  const AffineStageModel model = newsvendor_model(cfg);
  const UncertaintySet set = newsvendor_uncertainty(cfg);

  double x1 = 0.0;
  const double ldr = solve_objective(model, set, LiftingStrategy::none(4), &x1);
  CHECK(ldr == doctest::Approx(83.5).epsilon(1e-6));
  CHECK(x1 == doctest::Approx(8.0).epsilon(1e-7));

  const double pldr_mean =
      solve_objective(model, set, LiftingStrategy::uniform(4, {5.0}), &x1);
  CHECK(pldr_mean == doctest::Approx(66.25).epsilon(1e-6));
  CHECK(x1 == doctest::Approx(6.0).epsilon(1e-7));

  const double pldr_limit =
      solve_objective(model, set, LiftingStrategy::uniform(4, {8.0}), &x1);
  CHECK(pldr_limit == doctest::Approx(63.60).epsilon(1e-6));
  CHECK(x1 == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("deterministic degenerate demand reduces to the deterministic LP") {
  // With l = u the counterpart must equal the plain multistage LP optimum.
  NewsvendorConfig cfg;
  cfg.horizon = 3;
  cfg.demand = {5.0, 5.0 + 1e-9};
  const AffineStageModel model = newsvendor_model(cfg);
  const UncertaintySet set = newsvendor_uncertainty(cfg);
  const double objective = solve_objective(model, set, LiftingStrategy::none(3));

  // Deterministic optimum: order to match demand after burning the initial
  // inventory: stages need d=5 each; I_1 = 4.
  // Order x_1 = 1 covers stage-2 demand, x_2 = 5 covers stage 3; no holding
  // or backlog remains.
  CHECK(objective == doctest::Approx(3.0 * (1.0 + 5.0)).epsilon(1e-4));
}

TEST_CASE("newsvendor rejects bad horizons") {
  NewsvendorConfig cfg;
  cfg.horizon = 1;
  CHECK_THROWS(newsvendor_model(cfg));
}

TEST_CASE("3x2 transport: refinement improves the profit") {
  const TransportConfig cfg = transport_3x2(6, SalvageRule::fixed(6.0));
  const AffineStageModel model = transport_model(cfg);
  const UncertaintySet set = transport_uncertainty(cfg);
  const double ldr = solve_objective(model, set, LiftingStrategy::none(6));
  const double pldr5 =
      solve_objective(model, set, LiftingStrategy::uniform(6, {0.5, 1.0, 1.5, 2.0, 2.5}));
  CHECK(pldr5 > ldr + 1e-6);
}

TEST_CASE("salvage value never decreases the optimum") {
  const TransportConfig low = transport_3x2(4, SalvageRule::fixed(0.0));
  TransportConfig high = low;
  high.salvage = SalvageRule::fixed(3.0);
  const UncertaintySet set = transport_uncertainty(low);
  const LiftingStrategy ldr = LiftingStrategy::none(4);
  const double base = solve_objective(transport_model(low), set, ldr);
  const double raised = solve_objective(transport_model(high), set, ldr);
  CHECK(raised >= base - 1e-8);
}

TEST_CASE("expansion with zero added capacity reduces to the plain model") {
  TransportConfig cfg = transport_3x2(4, SalvageRule::fixed(0.0));
  const UncertaintySet set = transport_uncertainty(cfg);
  const double plain = solve_objective(transport_model(cfg), set, LiftingStrategy::none(4));

  TransportConfig with_exp = cfg;
  with_exp.expansion.enabled = true;
  with_exp.expansion.capital = Eigen::VectorXd::Constant(3, 1.0);
  with_exp.expansion.added = Eigen::VectorXd::Zero(3);
  const AffineStageModel model = transport_model(with_exp);
  const CounterpartLP lp = build_counterpart(model, set, LiftingStrategy::none(4));
  const LpSolution sol = solve_with_binaries(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(plain).epsilon(1e-7));
  for (int col : lp.binary_columns) CHECK(sol.primal(col) == doctest::Approx(0.0));
}

TEST_CASE("appendix data files load with verified checksums") {
  const TransportConfig cfg = transport_10x10(10, SalvageRule::cost_fraction(0.15));
  CHECK(cfg.suppliers == 10);
  CHECK(cfg.customers == 10);
  CHECK(cfg.production_cost(2) == doctest::Approx(6.5));
  CHECK(cfg.expansion.enabled);
  CHECK(cfg.expansion.capital(5) == doctest::Approx(14.5));
  CHECK(cfg.demand_slope(6) == doctest::Approx(-1.0));
  CHECK(cfg.demand_slope(7) == doctest::Approx(-3.0));

  // Salvage rule S_i = alpha (C_i + H_i).
  const Eigen::VectorXd salvage = cfg.salvage_values();
  CHECK(salvage(0) == doctest::Approx(0.15 * 5.0));

  // Demand stays nonnegative across the xi range for every customer,
  // including the negative-slope ones.
  for (int j = 0; j < cfg.customers; ++j) {
    CHECK(cfg.demand_intercept(j) + cfg.demand_slope(j) * cfg.xi.lo >= 0.0);
    CHECK(cfg.demand_intercept(j) + cfg.demand_slope(j) * cfg.xi.hi >= 0.0);
  }
}

TEST_CASE("transport config JSON round trip") {
  const TransportConfig cfg = transport_3x2(6, SalvageRule::fixed(6.0));
  const TransportConfig back = transport_from_json(transport_to_json(cfg));
  CHECK(back.horizon == cfg.horizon);
  CHECK(back.suppliers == cfg.suppliers);
  CHECK(back.production_cost.isApprox(cfg.production_cost));
  CHECK(back.salvage.kind == SalvageRule::Kind::Fixed);
  CHECK(back.salvage.value == doctest::Approx(6.0));
}

TEST_CASE("presets resolve") {
  for (const auto& name : preset_names()) {
    const Preset preset = load_preset(name);
    CHECK(preset.horizon() >= 4);
    CHECK(!preset.base_breakpoints.empty());
  }
  CHECK_THROWS(load_preset("nope"));
}
