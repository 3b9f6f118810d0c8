#include "drlift/simulate.hpp"

#include "drlift/experiment.hpp"
#include "drlift/lp.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace drlift;

namespace {

PolicyBundle solve_newsvendor(const NewsvendorConfig& cfg, const LiftingStrategy& strategy) {
  const AffineStageModel model = newsvendor_model(cfg);
  const UncertaintySet set = newsvendor_uncertainty(cfg);
  const CounterpartLP lp = build_counterpart(model, set, strategy);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  return extract_policy(model, lp, strategy, sol.primal, sol.objective);
}

}  // namespace

TEST_CASE("sample_paths: determinism, bounds, moments") {
  const UncertaintySet set = UncertaintySet::box(4, 0.0, 10.0);
  const Eigen::MatrixXd a = sample_paths(set, 100000, 7);
  const Eigen::MatrixXd b = sample_paths(set, 100000, 7);
  CHECK(a.isApprox(b));
  CHECK(a.minCoeff() >= 0.0);
  CHECK(a.maxCoeff() <= 10.0);
  // CLT bound: 3 sigma / sqrt(n) with sigma = 10/sqrt(12).
  CHECK(std::abs(a.mean() - 5.0) <= 3.0 * (10.0 / std::sqrt(12.0)) / std::sqrt(3e5));

  const Eigen::MatrixXd single = sample_paths(set, 1, 9);
  CHECK(single.rows() == 1);
  CHECK(single.cols() == 3);
  CHECK_THROWS(sample_paths(set, 0, 1));
}

TEST_CASE("zero-demand paths cost exactly the hand-propagated value") {
  // Under d = 0 the published-style LDR policy orders its intercepts and
  // inventory accumulates; the cost is computable by hand.
  NewsvendorConfig cfg;
  const LiftingStrategy ldr = LiftingStrategy::none(cfg.horizon);
  PolicyBundle policy{ldr, 0.0, {}};
  auto rule = [&](double intercept, std::initializer_list<double> slope) {
    PolicyRule r;
    r.intercept = intercept;
    r.slope = Eigen::RowVectorXd::Zero(3);
    int i = 0;
    for (double s : slope) r.slope(i++) = s;
    return r;
  };
  // Appendix-style LDR optimum: x1 = 8, x2 = 0.8 d2, x3 = 0.8 d3.
  policy.rules["x[1]"] = rule(8.0, {0, 0, 0});
  policy.rules["x[2]"] = rule(0.0, {0.8, 0, 0});
  policy.rules["x[3]"] = rule(0.0, {0, 0.8, 0});

  const UncertaintySet set = newsvendor_uncertainty(cfg);
  Eigen::MatrixXd zero_paths = Eigen::MatrixXd::Zero(1, 3);
  const EvaluationReport report = evaluate_policy(policy, cfg, set, zero_paths, 0);
  // Orders: 8, 0, 0. Inventory after stages 2..4: 12, 12, 12.
  const double expected = 3.0 * 8.0 + 1.5 * (12.0 + 12.0 + 12.0);
  CHECK(report.mean == doctest::Approx(expected).epsilon(1e-12));
  CHECK(report.min == doctest::Approx(expected));
  CHECK(report.max == doctest::Approx(expected));
}

TEST_CASE("simulated mean never exceeds the model objective") {
  NewsvendorConfig cfg;
  const UncertaintySet set = newsvendor_uncertainty(cfg);
  for (const auto& strategy :
       {LiftingStrategy::none(4), LiftingStrategy::uniform(4, {5.0}),
        LiftingStrategy::uniform(4, {8.0})}) {
    const PolicyBundle policy = solve_newsvendor(cfg, strategy);
    const Eigen::MatrixXd paths = sample_paths(set, 20000, 3);
    const EvaluationReport report = evaluate_policy(policy, cfg, set, paths, 3);
    const double margin = 3.0 * report.sigma / std::sqrt(20000.0);
    CHECK(report.mean <= policy.model_objective + margin);
    // Breakdown sums to the mean.
    double sum = 0.0;
    for (const auto& [name, v] : report.breakdown) sum += v;
    CHECK(sum == doctest::Approx(report.mean).epsilon(1e-9));
  }
}

TEST_CASE("policies that leave the ordering box are rejected") {
  NewsvendorConfig cfg;
  const UncertaintySet set = newsvendor_uncertainty(cfg);
  const LiftingStrategy ldr = LiftingStrategy::none(cfg.horizon);
  PolicyBundle policy{ldr, 0.0, {}};
  PolicyRule bad;
  bad.intercept = cfg.order_limit + 1.0;
  bad.slope = Eigen::RowVectorXd::Zero(3);
  policy.rules["x[1]"] = bad;
  PolicyRule zero;
  zero.intercept = 0.0;
  zero.slope = Eigen::RowVectorXd::Zero(3);
  policy.rules["x[2]"] = zero;
  policy.rules["x[3]"] = zero;
  Eigen::MatrixXd paths = Eigen::MatrixXd::Constant(1, 3, 5.0);
  CHECK_THROWS(evaluate_policy(policy, cfg, set, paths, 0));
}

TEST_CASE("statistical stability across seeds") {
  NewsvendorConfig cfg;
  const UncertaintySet set = newsvendor_uncertainty(cfg);
  const PolicyBundle policy = solve_newsvendor(cfg, LiftingStrategy::none(4));
  const int n = 10000;
  std::vector<double> means;
  double sigma = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const EvaluationReport report =
        evaluate_policy(policy, cfg, set, sample_paths(set, n, seed), seed);
    means.push_back(report.mean);
    sigma = report.sigma;
  }
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / means.size();
  for (double m : means) {
    CHECK(std::abs(m - grand) <= 4.0 * sigma / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("policy embedding reproduces decisions on finer liftings") {
  NewsvendorConfig cfg;
  const UncertaintySet set = newsvendor_uncertainty(cfg);
  const LiftingStrategy coarse = LiftingStrategy::uniform(4, {5.0});
  const LiftingStrategy fine(
      std::vector<std::vector<double>>{{2.0, 5.0, 8.0}, {3.0, 5.0}, {5.0, 9.0}});
  const PolicyBundle policy = solve_newsvendor(cfg, coarse);
  const PolicyBundle embedded = embed_policy(policy, fine);

  const Eigen::MatrixXd paths = sample_paths(set, 1000, 17);
  for (int p = 0; p < paths.rows(); ++p) {
    const Eigen::VectorXd d = paths.row(p).transpose();
    const Eigen::VectorXd lifted_coarse = lift_point(d, coarse, set);
    const Eigen::VectorXd lifted_fine = lift_point(d, fine, set);
    for (const auto& [name, rule] : policy.rules) {
      const double a = rule.intercept + rule.slope * lifted_coarse;
      const double b = embedded.value(name, lifted_fine);
      CHECK(std::abs(a - b) <= 1e-8);
    }
  }
  CHECK_THROWS(embed_policy(policy, LiftingStrategy::none(4)));
}

TEST_CASE("pseudo simulator is a fixed point for the finest rule") {
  const TransportConfig cfg = transport_3x2(4, SalvageRule::fixed(0.0));
  const UncertaintySet set = transport_uncertainty(cfg);
  const std::vector<double> base{0.5, 1.0, 1.5, 2.0, 2.5};
  const LiftingStrategy finest = LiftingStrategy::uniform(cfg.horizon, base);

  const AffineStageModel model = transport_model(cfg);
  const CounterpartLP lp = build_counterpart(model, set, finest);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  const PolicyBundle policy = extract_policy(model, lp, finest, sol.primal, sol.objective);

  const PseudoSimulation pseudo = pseudo_simulate(cfg, set, policy, finest);
  CHECK(pseudo.profit == doctest::Approx(sol.objective).epsilon(1e-6));
}

TEST_CASE("pseudo-simulated profit dominates the model profit") {
  const TransportConfig cfg = transport_3x2(5, SalvageRule::fixed(6.0));
  const UncertaintySet set = transport_uncertainty(cfg);
  const std::vector<double> base{0.5, 1.0, 1.5, 2.0, 2.5};
  const LiftingStrategy finest = LiftingStrategy::uniform(cfg.horizon, base);
  const AffineStageModel model = transport_model(cfg);

  for (const auto& strategy :
       {LiftingStrategy::none(cfg.horizon), LiftingStrategy::uniform(cfg.horizon, {1.5}),
        LiftingStrategy::uniform(cfg.horizon, {0.5, 1.5})}) {
    const CounterpartLP lp = build_counterpart(model, set, strategy);
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    const PolicyBundle policy = extract_policy(model, lp, strategy, sol.primal, sol.objective);
    const PseudoSimulation pseudo = pseudo_simulate(cfg, set, policy, finest);
    CHECK(pseudo.profit >= sol.objective - 1e-6);
  }
}
