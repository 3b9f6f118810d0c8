#pragma once

#include "drlift/counterpart.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace drlift {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Thrown when the solver exhausts its iteration budget; carries the state
/// it reached.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonbasic columns rest at a bound; the basis lists one column per row.
enum class VarStatus : std::uint8_t { AtLower, AtUpper, Basic };

struct Basis {
  std::vector<VarStatus> status;  // structural columns then row slacks
  bool empty() const { return status.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;
  Eigen::VectorXd primal;     // structural columns
  Eigen::VectorXd row_duals;  // one multiplier per row
  long iterations = 0;
  Basis basis;                // reusable warm start

  double primal_residual = 0.0;  // scaled feasibility residual
  double dual_residual = 0.0;    // scaled reduced-cost violation
};

struct SolveOptions {
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-8;
  long max_iterations = 0;  // 0: derived from problem size
  int refactor_interval = 100;
  bool scale = true;
  /// Iterations without objective progress before Bland's rule engages;
  /// 0 derives 5*(m+n) from the problem size.
  long bland_trigger = 0;
  const Basis* warm_start = nullptr;
};

/// Revised simplex over the counterpart. Deterministic for fixed input
/// ordering; infeasible/unbounded are reported through the status.
LpSolution solve_lp(const CounterpartLP& lp, const SolveOptions& options = {});

/// Solves, then re-solves with the objective pinned at its optimum while
/// minimizing the L1 mass of the given columns. Returns the canonical
/// optimum (same objective value as solve_lp).
LpSolution solve_lp_canonical(const CounterpartLP& lp, const std::vector<int>& penalized,
                              const SolveOptions& options = {});

struct BinarySolveOptions {
  SolveOptions lp;
  /// Exhaustive enumeration is used up to this many binaries on small LPs;
  /// otherwise best-first branch and bound on the LP relaxation.
  int enumeration_limit = 12;
  int enumeration_row_limit = 2000;
};

/// Optimizes over the binary columns recorded in the counterpart (capacity
/// expansion flags). With no binaries this is exactly solve_lp.
LpSolution solve_with_binaries(const CounterpartLP& lp, const BinarySolveOptions& options = {});

/// Forced-method variants used for cross-checking the two search strategies.
LpSolution solve_binaries_enumerate(const CounterpartLP& lp, const BinarySolveOptions& options = {});
LpSolution solve_binaries_branch_bound(const CounterpartLP& lp,
                                       const BinarySolveOptions& options = {});

/// Runs `command <mps-file> <solution-file>` on the exported LP and parses
/// the solution file: a status line (optimal/infeasible/unbounded), an
/// objective line, then `<column-name> <value>` pairs.
LpSolution solve_external(const CounterpartLP& lp, const std::string& command,
                          const std::string& work_dir);

}  // namespace drlift
