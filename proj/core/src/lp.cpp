#include "drlift/lp.hpp"

#include "drlift/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

namespace drlift {

namespace {

bool better(bool maximize, double a, double b) { return maximize ? a > b : a < b; }

struct Node {
  double bound = 0.0;
  std::vector<int> fixed;  // -1 unfixed, 0/1 fixed
  std::shared_ptr<Basis> basis;
};

}  // namespace

LpSolution solve_lp(const CounterpartLP& lp, const SolveOptions& options) {
  SimplexSolver solver(lp, options);
  return solver.solve(options.warm_start);
}

LpSolution solve_lp_canonical(const CounterpartLP& lp, const std::vector<int>& penalized,
                              const SolveOptions& options) {
  LpSolution first = solve_lp(lp, options);
  if (first.status != LpStatus::Optimal || penalized.empty()) return first;

  // Pin the objective at its optimum and minimize sum |x_c| over the
  // penalized columns via envelope variables a_c >= +-x_c.
  CounterpartLP tied = lp;
  LpExpr optimum;
  for (int c = 0; c < lp.num_cols(); ++c) {
    const double coef = lp.cols()[c].obj;
    if (coef != 0.0) {
      optimum.add(c, lp.maximize ? coef : -coef);
      tied.set_objective(c, -coef);  // clear the original objective
    }
  }
  const double target = first.objective - lp.objective_constant;
  const double slack = 1e-9 * (1.0 + std::abs(target));
  // maximize sense: obj >= target - slack; minimize: -obj >= -target - slack.
  optimum.constant = -(lp.maximize ? target : -target) + slack;
  tied.add_row("row.objective_pin", Sense::Ge, optimum);

  tied.maximize = false;
  for (int c : penalized) {
    const int envelope = tied.add_column("abs." + lp.cols()[c].name, 0.0,
                                         std::numeric_limits<double>::infinity(),
                                         ColKind::Dual);
    tied.set_objective(envelope, 1.0);
    LpExpr above;  // a - x >= 0
    above.add(envelope, 1.0);
    above.add(c, -1.0);
    tied.add_row("row.abs+." + lp.cols()[c].name, Sense::Ge, above);
    LpExpr below;  // a + x >= 0
    below.add(envelope, 1.0);
    below.add(c, 1.0);
    tied.add_row("row.abs-." + lp.cols()[c].name, Sense::Ge, below);
  }

  LpSolution second = solve_lp(tied, options);
  if (second.status != LpStatus::Optimal) return first;
  first.primal = second.primal.head(lp.num_cols());
  first.iterations += second.iterations;
  return first;
}

LpSolution solve_binaries_enumerate(const CounterpartLP& lp, const BinarySolveOptions& options) {
  const auto& binaries = lp.binary_columns;
  SimplexSolver solver(lp, options.lp);
  LpSolution best;
  best.status = LpStatus::Infeasible;
  Basis warm;
  if (options.lp.warm_start != nullptr) warm = *options.lp.warm_start;
  const std::uint64_t count = 1ull << binaries.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t i = 0; i < binaries.size(); ++i) {
      const double v = (mask >> i) & 1 ? 1.0 : 0.0;
      solver.set_column_bounds(binaries[i], v, v);
    }
    LpSolution sol = solver.solve(warm.empty() ? nullptr : &warm);
    if (sol.status == LpStatus::Unbounded) return sol;
    if (sol.status != LpStatus::Optimal) continue;
    warm = sol.basis;
    if (best.status != LpStatus::Optimal || better(lp.maximize, sol.objective, best.objective)) {
      best = std::move(sol);
    }
  }
  return best;
}

LpSolution solve_binaries_branch_bound(const CounterpartLP& lp,
                                       const BinarySolveOptions& options) {
  const auto& binaries = lp.binary_columns;
  const bool maximize = lp.maximize;
  SimplexSolver solver(lp, options.lp);
  const double int_tol = 1e-6;

  LpSolution incumbent;
  incumbent.status = LpStatus::Infeasible;

  auto apply_fixing = [&](const std::vector<int>& fixed) {
    for (std::size_t i = 0; i < binaries.size(); ++i) {
      if (fixed[i] < 0) {
        solver.set_column_bounds(binaries[i], 0.0, 1.0);
      } else {
        solver.set_column_bounds(binaries[i], fixed[i], fixed[i]);
      }
    }
  };

  auto fractional = [&](const LpSolution& sol, int* which) {
    double worst = int_tol;
    *which = -1;
    for (std::size_t i = 0; i < binaries.size(); ++i) {
      const double v = sol.primal(binaries[i]);
      const double frac = std::min(v, 1.0 - v);
      if (frac > worst) {
        worst = frac;
        *which = static_cast<int>(i);
      }
    }
    return *which >= 0;
  };

  auto try_incumbent = [&](const std::vector<int>& rounded, const Basis* warm) {
    apply_fixing(rounded);
    LpSolution sol = solver.solve(warm);
    if (sol.status == LpStatus::Optimal &&
        (incumbent.status != LpStatus::Optimal ||
         better(maximize, sol.objective, incumbent.objective))) {
      incumbent = std::move(sol);
    }
  };

  auto cmp = [maximize](const Node& a, const Node& b) {
    return maximize ? a.bound < b.bound : a.bound > b.bound;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);

  Node root;
  root.fixed.assign(binaries.size(), -1);
  apply_fixing(root.fixed);
  LpSolution relax = solver.solve(options.lp.warm_start);
  if (relax.status != LpStatus::Optimal) return relax;
  root.bound = relax.objective;
  root.basis = std::make_shared<Basis>(relax.basis);

  int branch_var = -1;
  if (!fractional(relax, &branch_var)) {
    return relax;
  }
  // Rounding heuristic seeds the incumbent.
  {
    std::vector<int> rounded(binaries.size());
    for (std::size_t i = 0; i < binaries.size(); ++i) {
      rounded[i] = relax.primal(binaries[i]) > int_tol ? 1 : 0;
    }
    try_incumbent(rounded, root.basis.get());
  }
  open.push(std::move(root));

  const double gap_tol = 1e-9;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (incumbent.status == LpStatus::Optimal &&
        !better(maximize, node.bound,
                incumbent.objective + (maximize ? gap_tol : -gap_tol) *
                                          (1.0 + std::abs(incumbent.objective)))) {
      continue;
    }
    apply_fixing(node.fixed);
    LpSolution relaxed = solver.solve(node.basis.get());
    if (relaxed.status != LpStatus::Optimal) continue;
    if (incumbent.status == LpStatus::Optimal &&
        !better(maximize, relaxed.objective, incumbent.objective)) {
      continue;
    }
    int which = -1;
    if (!fractional(relaxed, &which)) {
      incumbent = std::move(relaxed);
      continue;
    }
    auto basis = std::make_shared<Basis>(relaxed.basis);
    for (int v = 0; v <= 1; ++v) {
      Node child;
      child.fixed = node.fixed;
      child.fixed[which] = v;
      child.bound = relaxed.objective;
      child.basis = basis;
      open.push(std::move(child));
    }
  }
  return incumbent;
}

LpSolution solve_with_binaries(const CounterpartLP& lp, const BinarySolveOptions& options) {
  const std::size_t k = lp.binary_columns.size();
  if (k == 0) return solve_lp(lp, options.lp);
  if (k > 20 && options.enumeration_limit <= 20) {
    // Nothing in the suite needs more; keep the contract explicit.
    throw std::invalid_argument("more than 20 binary columns; enable branch and bound sizing");
  }
  if (static_cast<int>(k) <= options.enumeration_limit &&
      lp.num_rows() <= options.enumeration_row_limit) {
    return solve_binaries_enumerate(lp, options);
  }
  return solve_binaries_branch_bound(lp, options);
}

LpSolution solve_external(const CounterpartLP& lp, const std::string& command,
                          const std::string& work_dir) {
  const std::string mps = work_dir + "/problem.mps";
  const std::string sol = work_dir + "/solution.txt";
  write_mps(lp, mps);
  const std::string cmd = command + " " + mps + " " + sol;
  if (std::system(cmd.c_str()) != 0) {
    throw std::runtime_error("external solver command failed: " + cmd);
  }
  std::ifstream in(sol);
  if (!in) throw std::runtime_error("external solver wrote no solution file");

  std::string status_word;
  in >> status_word;
  LpSolution out;
  if (status_word == "optimal") {
    out.status = LpStatus::Optimal;
  } else if (status_word == "infeasible") {
    out.status = LpStatus::Infeasible;
    return out;
  } else if (status_word == "unbounded") {
    out.status = LpStatus::Unbounded;
    return out;
  } else {
    throw std::runtime_error("external solver status '" + status_word + "' not recognized");
  }
  in >> out.objective;

  std::map<std::string, int> index;
  for (int c = 0; c < lp.num_cols(); ++c) index.emplace(lp.cols()[c].name, c);
  out.primal = Eigen::VectorXd::Zero(lp.num_cols());
  std::string name;
  double value = 0.0;
  while (in >> name >> value) {
    const auto it = index.find(name);
    if (it != index.end()) out.primal(it->second) = value;
  }
  return out;
}

}  // namespace drlift
