#pragma once

#include "drlift/uncertainty.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace drlift {

enum class Sense { Ge, Eq };

/// Sparse coefficient on an integer-indexed axis (uncertainty coordinate or
/// LP column, depending on context).
struct Coef {
  int index = 0;
  double value = 0.0;
};

/// Scalar affine function of the original uncertainty d in R^(T-1):
/// constant + sum_i coefs[i].value * d_{coefs[i].index}.
struct AffineOfUncertainty {
  double constant = 0.0;
  std::vector<Coef> coefs;
};

/// One scalar adaptive decision. Stage 1 blocks are static ("here and now");
/// a block available at stage t may only observe the first k_t lifted
/// coordinates.
struct VarBlock {
  std::string name;
  int stage = 1;
  bool binary = false;  // static 0/1 decision (capacity expansion flags)
};

/// coef * value of one block inside a constraint or the objective.
struct BlockTerm {
  int block = -1;
  double coef = 0.0;
};

/// Semi-infinite constraint  sum_b coef_b x_b(xi_[t_b]) + offset(xi) {>=,=} 0
/// for all xi in the uncertainty set.
struct StageConstraint {
  std::string name;
  Sense sense = Sense::Ge;
  std::vector<BlockTerm> terms;
  AffineOfUncertainty offset;
};

/// Solver-agnostic description of a multistage adaptive LP with affine
/// decision rules. Thin problem generators populate this and the generic
/// builder produces the deterministic counterpart.
class AffineStageModel {
 public:
  AffineStageModel(int horizon, bool maximize);

  int add_block(std::string name, int stage, bool binary = false);
  int block(const std::string& name) const;
  const VarBlock& block_info(int index) const { return blocks_[index]; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<VarBlock>& blocks() const { return blocks_; }

  void add_constraint(StageConstraint c);
  const std::vector<StageConstraint>& constraints() const { return constraints_; }

  /// Objective is the expectation of sum_b coef_b x_b(xi) + constant.
  void add_objective_term(int block, double coef);
  void add_objective_constant(double value) { objective_constant_ += value; }
  const std::vector<BlockTerm>& objective_terms() const { return objective_terms_; }
  double objective_constant() const { return objective_constant_; }
  bool maximize() const { return maximize_; }
  int horizon() const { return horizon_; }

 private:
  int horizon_;
  bool maximize_;
  std::vector<VarBlock> blocks_;
  std::vector<StageConstraint> constraints_;
  std::vector<BlockTerm> objective_terms_;
  double objective_constant_ = 0.0;
  std::map<std::string, int> block_index_;
};

// --- deterministic counterpart -------------------------------------------

enum class ColKind { Intercept, Slope, Dual, Binary };

struct LpColumn {
  std::string name;
  double lb = 0.0;
  double ub = 0.0;
  double obj = 0.0;
  ColKind kind = ColKind::Dual;
};

struct LpRow {
  std::string name;
  Sense sense = Sense::Ge;
  double rhs = 0.0;
};

/// Linear function of LP columns plus a constant.
struct LpExpr {
  std::vector<Coef> vars;
  double constant = 0.0;

  void add(int var, double coef) {
    if (coef != 0.0) vars.push_back({var, coef});
  }
};

/// Deterministic LP/MILP produced by dualization. Rows are stored as sparse
/// column entries; the policy map records which columns hold each block's
/// intercept and slopes.
class CounterpartLP {
 public:
  struct BlockColumns {
    int intercept = -1;   // -1 when the block is frozen
    int slope_begin = 0;  // first slope column
    int slope_count = 0;  // k_t of the block's stage
  };

  int add_column(std::string name, double lb, double ub, ColKind kind);
  /// Row is expr (sense) 0; the expression constant moves to the rhs.
  int add_row(std::string name, Sense sense, const LpExpr& expr);
  void add_entry(int row, int col, double value);
  void set_objective(int col, double coef);

  int num_cols() const { return static_cast<int>(cols_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_entries() const { return static_cast<int>(entry_cols_.size()); }
  const std::vector<LpColumn>& cols() const { return cols_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  const std::vector<int>& entry_rows() const { return entry_rows_; }
  const std::vector<int>& entry_cols() const { return entry_cols_; }
  const std::vector<double>& entry_values() const { return entry_values_; }

  bool maximize = false;
  double objective_constant = 0.0;

  std::vector<BlockColumns> block_columns;  // aligned with model blocks
  std::vector<int> binary_columns;

  /// Number of dual variables attached to each semi-infinite inequality, in
  /// build order (used by dimension tests).
  std::vector<int> dual_block_sizes;

 private:
  std::vector<LpColumn> cols_;
  std::vector<LpRow> rows_;
  std::vector<int> entry_rows_;
  std::vector<int> entry_cols_;
  std::vector<double> entry_values_;
};

/// Optimal decision rules for every adaptive block, over the lifted
/// coordinates of `strategy`. Slopes outside a block's observable window are
/// zero by construction.
struct PolicyRule {
  double intercept = 0.0;
  Eigen::RowVectorXd slope;  // length k', zero-padded
};

struct PolicyBundle {
  LiftingStrategy strategy;
  double model_objective = 0.0;
  std::map<std::string, PolicyRule> rules;

  const PolicyRule& rule(const std::string& name) const;
  /// Evaluates one rule at a lifted realization.
  double value(const std::string& name, const Eigen::VectorXd& lifted) const;
};

/// Fixed decision rules substituted as constants during a build (the Pseudo
/// Simulator freezes production and expansion rules this way). Slopes must
/// already live on the target strategy's coordinates.
using FrozenPolicies = std::map<std::string, PolicyRule>;

struct BuildOptions {
  /// Dualize against the full stacked (A^l, b^l) with one dual vector of
  /// length m + m' per inequality, exactly as the formulas read. When false
  /// and the set is a hyper-rectangle, the builder uses the equivalent
  /// per-stage dual blocks and drops stages past a constraint's observation
  /// window, which shrinks the LP considerably.
  bool exact_dual = false;
  const FrozenPolicies* frozen = nullptr;
};

/// Appends one dual block enforcing
///   intercept + min{ slope(d') : A d' >= b } >= 0
/// to the LP: variables u >= 0 with  intercept + b^T u >= 0  and
/// A^T u = slope, component-wise against the slope expressions.
void dualize_inequality(CounterpartLP& lp, const LpExpr& intercept,
                        const std::vector<LpExpr>& slope, const Eigen::MatrixXd& A,
                        const Eigen::VectorXd& b, const std::string& name);

/// Appends the counterpart of an equality: intercept = 0 and slope = 0
/// component-wise. Rows that are identically zero are skipped; rows that
/// are a nonzero constant throw (the equality cannot hold for all d').
void match_equality(CounterpartLP& lp, const LpExpr& intercept,
                    const std::vector<LpExpr>& slope, const std::string& name);

/// Substitutes affine rules into every constraint, dualizes the inequalities
/// over the lifted outer approximation, matches the equalities, and takes
/// the objective at the lifted mean. The trivial strategy reproduces the
/// linear counterpart; any other the piecewise-linear or hybrid one.
CounterpartLP build_counterpart(const AffineStageModel& model, const UncertaintySet& set,
                                const LiftingStrategy& strategy,
                                const BuildOptions& options = {});

/// Reads the optimal rules out of a solved counterpart.
PolicyBundle extract_policy(const AffineStageModel& model, const CounterpartLP& lp,
                            const LiftingStrategy& strategy,
                            const Eigen::VectorXd& primal, double objective);

/// Slope columns reacting to uncertainty revealed before the block's own
/// stage. Optimal decision rules are not unique; minimizing L1 mass on these
/// columns at the optimal objective picks the rule that uses the least
/// history, a deterministic canonical representative.
std::vector<int> history_slope_columns(const AffineStageModel& model, const CounterpartLP& lp,
                                       const LiftingStrategy& strategy);

/// Writes the LP in free MPS format for cross-checking with external
/// solvers. Columns follow the naming scheme policy.<block>.<stage>.<coef>.
void write_mps(const CounterpartLP& lp, const std::string& path);

}  // namespace drlift
