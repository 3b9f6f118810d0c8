#pragma once

#include "drlift/lp.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <memory>
#include <vector>

namespace drlift {

/// Bounded-variable revised simplex over a fixed constraint matrix. The
/// instance owns the scaled computational form; column bounds may be changed
/// between solves (branch and bound, enumeration sweeps) and solves may be
/// warm-started from a previous basis.
class SimplexSolver {
 public:
  SimplexSolver(const CounterpartLP& lp, const SolveOptions& options);
  ~SimplexSolver();

  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  /// Bounds are given in original (unscaled) units for structural columns.
  void set_column_bounds(int col, double lb, double ub);

  LpSolution solve(const Basis* warm_start = nullptr);

  int num_rows() const;
  int num_structural() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace drlift
