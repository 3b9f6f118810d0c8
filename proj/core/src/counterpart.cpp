#include "drlift/counterpart.hpp"

#include <algorithm>
#include <cmath>

namespace drlift {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

AffineStageModel::AffineStageModel(int horizon, bool maximize)
    : horizon_(horizon), maximize_(maximize) {
  require(horizon_ >= 2, "model needs horizon >= 2");
}

int AffineStageModel::add_block(std::string name, int stage, bool binary) {
  require(stage >= 1 && stage <= horizon_, "block stage out of range");
  require(!binary || stage == 1, "binary blocks must be static");
  require(block_index_.find(name) == block_index_.end(), "duplicate block " + name);
  const int index = static_cast<int>(blocks_.size());
  block_index_.emplace(name, index);
  blocks_.push_back(VarBlock{std::move(name), stage, binary});
  return index;
}

int AffineStageModel::block(const std::string& name) const {
  const auto it = block_index_.find(name);
  require(it != block_index_.end(), "unknown block " + name);
  return it->second;
}

void AffineStageModel::add_constraint(StageConstraint c) {
  for (const BlockTerm& term : c.terms) {
    require(term.block >= 0 && term.block < num_blocks(),
            "constraint " + c.name + " references an unknown block");
  }
  for (const Coef& coef : c.offset.coefs) {
    require(coef.index >= 0 && coef.index < horizon_ - 1,
            "constraint " + c.name + " has an out-of-range uncertainty coordinate");
  }
  constraints_.push_back(std::move(c));
}

void AffineStageModel::add_objective_term(int block, double coef) {
  require(block >= 0 && block < num_blocks(), "objective references an unknown block");
  objective_terms_.push_back({block, coef});
}

int CounterpartLP::add_column(std::string name, double lb, double ub, ColKind kind) {
  const int index = static_cast<int>(cols_.size());
  cols_.push_back(LpColumn{std::move(name), lb, ub, 0.0, kind});
  return index;
}

int CounterpartLP::add_row(std::string name, Sense sense, const LpExpr& expr) {
  const int index = static_cast<int>(rows_.size());
  rows_.push_back(LpRow{std::move(name), sense, -expr.constant});
  for (const Coef& coef : expr.vars) add_entry(index, coef.index, coef.value);
  return index;
}

void CounterpartLP::add_entry(int row, int col, double value) {
  if (value == 0.0) return;
  entry_rows_.push_back(row);
  entry_cols_.push_back(col);
  entry_values_.push_back(value);
}

void CounterpartLP::set_objective(int col, double coef) { cols_[col].obj += coef; }

const PolicyRule& PolicyBundle::rule(const std::string& name) const {
  const auto it = rules.find(name);
  if (it == rules.end()) throw std::invalid_argument("no rule for block " + name);
  return it->second;
}

double PolicyBundle::value(const std::string& name, const Eigen::VectorXd& lifted) const {
  const PolicyRule& r = rule(name);
  return r.intercept + r.slope * lifted;
}

void dualize_inequality(CounterpartLP& lp, const LpExpr& intercept,
                        const std::vector<LpExpr>& slope, const Eigen::MatrixXd& A,
                        const Eigen::VectorXd& b, const std::string& name) {
  require(static_cast<int>(slope.size()) == A.cols(),
          "slope length and uncertainty description disagree for " + name);
  const int dual_size = static_cast<int>(A.rows());
  const int first = lp.num_cols();
  for (int i = 0; i < dual_size; ++i) {
    lp.add_column("dual." + name + "." + std::to_string(i), 0.0, kInf, ColKind::Dual);
  }
  lp.dual_block_sizes.push_back(dual_size);

  LpExpr row = intercept;
  for (int i = 0; i < dual_size; ++i) row.add(first + i, b(i));
  lp.add_row("row." + name, Sense::Ge, row);

  for (int j = 0; j < A.cols(); ++j) {
    LpExpr match;
    match.constant = -slope[j].constant;
    for (int i = 0; i < dual_size; ++i) {
      if (A(i, j) != 0.0) match.add(first + i, A(i, j));
    }
    for (const Coef& coef : slope[j].vars) match.add(coef.index, -coef.value);
    lp.add_row("row." + name + ".z" + std::to_string(j + 1), Sense::Eq, match);
  }
}

void match_equality(CounterpartLP& lp, const LpExpr& intercept,
                    const std::vector<LpExpr>& slope, const std::string& name) {
  lp.add_row("row." + name, Sense::Eq, intercept);
  for (std::size_t j = 0; j < slope.size(); ++j) {
    const LpExpr& s = slope[j];
    if (s.vars.empty()) {
      if (s.constant != 0.0) {
        throw std::invalid_argument("equality " + name +
                                    " has an unmatchable uncertainty slope");
      }
      continue;
    }
    lp.add_row("row." + name + ".z" + std::to_string(j + 1), Sense::Eq, s);
  }
}

namespace {

struct BuildContext {
  const AffineStageModel& model;
  const UncertaintySet& set;
  const LiftingStrategy& strategy;
  const LiftedSetDescription& lifted;
  const BuildOptions& options;
  CounterpartLP& lp;

  const PolicyRule* frozen_rule(const std::string& name) const {
    if (options.frozen == nullptr) return nullptr;
    const auto it = options.frozen->find(name);
    return it == options.frozen->end() ? nullptr : &it->second;
  }
};

/// Intercept and per-lifted-coordinate slope of a constraint after the
/// decision rules are substituted. Frozen rules land in the constants.
struct SubstitutedConstraint {
  LpExpr intercept;
  std::vector<LpExpr> slope;
  int window = 0;  // last lifted coordinate (exclusive) carrying anything
};

SubstitutedConstraint substitute(const BuildContext& ctx, const StageConstraint& c) {
  SubstitutedConstraint out;
  out.slope.resize(ctx.strategy.lifted_dim());
  out.intercept.constant = c.offset.constant;

  for (const Coef& coef : c.offset.coefs) {
    const int stage = coord_stage(coef.index);
    const int off = ctx.strategy.stage_offset(stage);
    const int pieces = ctx.strategy.pieces(stage);
    for (int j = 0; j < pieces; ++j) out.slope[off + j].constant += coef.value;
  }

  for (const BlockTerm& term : c.terms) {
    const VarBlock& block = ctx.model.block_info(term.block);
    const CounterpartLP::BlockColumns& cols = ctx.lp.block_columns[term.block];
    if (cols.intercept < 0) {
      const PolicyRule* rule = ctx.frozen_rule(block.name);
      require(rule != nullptr, "block " + block.name + " has neither columns nor a frozen rule");
      out.intercept.constant += term.coef * rule->intercept;
      for (int j = 0; j < rule->slope.size(); ++j) {
        if (rule->slope(j) != 0.0) out.slope[j].constant += term.coef * rule->slope(j);
      }
      continue;
    }
    out.intercept.add(cols.intercept, term.coef);
    for (int j = 0; j < cols.slope_count; ++j) {
      out.slope[j].add(cols.slope_begin + j, term.coef);
    }
  }

  for (int j = static_cast<int>(out.slope.size()); j-- > 0;) {
    if (!out.slope[j].vars.empty() || out.slope[j].constant != 0.0) {
      out.window = j + 1;
      break;
    }
  }
  return out;
}

/// Per-stage dual blocks over the stage hulls, truncated after the
/// constraint's observation window. Valid whenever the box rows of W are
/// implied by the stage hulls, i.e. for hyper-rectangles.
void dualize_stagewise(const BuildContext& ctx, const SubstitutedConstraint& sub,
                       const std::string& name) {
  LpExpr row = sub.intercept;
  std::vector<std::pair<int, int>> stage_duals;  // (stage, first dual column)
  int total = 0;
  for (int t = 2; t <= ctx.strategy.horizon() && ctx.strategy.stage_offset(t) < sub.window;
       ++t) {
    const StageHull& hull = ctx.lifted.hulls[stage_coord(t)];
    const int first = ctx.lp.add_column(
        "dual." + name + ".s" + std::to_string(t) + ".0", 0.0, kInf, ColKind::Dual);
    for (int i = 1; i < hull.A.rows(); ++i) {
      ctx.lp.add_column("dual." + name + ".s" + std::to_string(t) + "." + std::to_string(i),
                        0.0, kInf, ColKind::Dual);
    }
    stage_duals.emplace_back(t, first);
    total += static_cast<int>(hull.A.rows());
    for (int i = 0; i < hull.b.size(); ++i) {
      if (hull.b(i) != 0.0) row.add(first + i, hull.b(i));
    }
  }
  ctx.lp.dual_block_sizes.push_back(total);
  ctx.lp.add_row("row." + name, Sense::Ge, row);

  for (const auto& [t, first] : stage_duals) {
    const StageHull& hull = ctx.lifted.hulls[stage_coord(t)];
    const int off = ctx.strategy.stage_offset(t);
    for (int j = 0; j < hull.A.cols(); ++j) {
      const LpExpr& s = sub.slope[off + j];
      LpExpr match;
      match.constant = -s.constant;
      for (int i = 0; i < hull.A.rows(); ++i) {
        if (hull.A(i, j) != 0.0) match.add(first + i, hull.A(i, j));
      }
      for (const Coef& coef : s.vars) match.add(coef.index, -coef.value);
      ctx.lp.add_row("row." + name + ".z" + std::to_string(off + j + 1), Sense::Eq, match);
    }
  }
}

}  // namespace

CounterpartLP build_counterpart(const AffineStageModel& model, const UncertaintySet& set,
                                const LiftingStrategy& strategy, const BuildOptions& options) {
  require(model.horizon() == set.horizon(), "model and set horizons differ");
  strategy.validate_for(set);
  const LiftedSetDescription lifted = outer_approximation(set, strategy);
  const Eigen::VectorXd mean = lifted_mean(strategy, set);

  CounterpartLP lp;
  lp.maximize = model.maximize();
  lp.objective_constant = model.objective_constant();
  BuildContext ctx{model, set, strategy, lifted, options, lp};

  // Policy columns. Frozen blocks contribute constants instead.
  lp.block_columns.resize(model.num_blocks());
  std::vector<int> appearances(model.num_blocks(), 0);
  for (int b = 0; b < model.num_blocks(); ++b) {
    const VarBlock& block = model.blocks()[b];
    CounterpartLP::BlockColumns cols;
    if (ctx.frozen_rule(block.name) != nullptr) {
      lp.block_columns[b] = cols;
      continue;
    }
    const std::string prefix = "policy." + block.name + "." + std::to_string(block.stage);
    if (block.binary) {
      cols.intercept = lp.add_column(prefix + ".b0", 0.0, 1.0, ColKind::Binary);
      lp.binary_columns.push_back(cols.intercept);
    } else {
      cols.intercept = lp.add_column(prefix + ".b0", -kInf, kInf, ColKind::Intercept);
    }
    if (block.stage >= 2) {
      cols.slope_count = strategy.observed_dim(block.stage);
      cols.slope_begin = lp.num_cols();
      for (int j = 0; j < cols.slope_count; ++j) {
        lp.add_column(prefix + ".z" + std::to_string(j + 1), -kInf, kInf, ColKind::Slope);
      }
    }
    lp.block_columns[b] = cols;
  }

  const bool stagewise = !options.exact_dual && set.is_hyper_rectangle();
  for (const StageConstraint& c : model.constraints()) {
    for (const BlockTerm& term : c.terms) ++appearances[term.block];
    const SubstitutedConstraint sub = substitute(ctx, c);
    if (c.sense == Sense::Eq) {
      match_equality(lp, sub.intercept, sub.slope, c.name);
    } else if (sub.window == 0) {
      lp.add_row("row." + c.name, Sense::Ge, sub.intercept);
    } else if (stagewise) {
      dualize_stagewise(ctx, sub, c.name);
    } else {
      dualize_inequality(lp, sub.intercept, sub.slope, lifted.A, lifted.b, c.name);
    }
  }

  for (const BlockTerm& term : model.objective_terms()) {
    const VarBlock& block = model.blocks()[term.block];
    const CounterpartLP::BlockColumns& cols = lp.block_columns[term.block];
    if (cols.intercept < 0) {
      const PolicyRule* rule = ctx.frozen_rule(block.name);
      lp.objective_constant += term.coef * (rule->intercept + rule->slope * mean);
      continue;
    }
    lp.set_objective(cols.intercept, term.coef);
    for (int j = 0; j < cols.slope_count; ++j) {
      lp.set_objective(cols.slope_begin + j, term.coef * mean(j));
    }
    if (appearances[term.block] == 0) {
      throw std::invalid_argument("block " + block.name +
                                  " carries objective weight but no constraint bounds it");
    }
  }
  return lp;
}

std::vector<int> history_slope_columns(const AffineStageModel& model, const CounterpartLP& lp,
                                       const LiftingStrategy& strategy) {
  std::vector<int> columns;
  for (int b = 0; b < model.num_blocks(); ++b) {
    const CounterpartLP::BlockColumns& cols = lp.block_columns[b];
    if (cols.intercept < 0 || cols.slope_count == 0) continue;
    const int own_offset = strategy.stage_offset(model.blocks()[b].stage);
    for (int j = 0; j < std::min(cols.slope_count, own_offset); ++j) {
      columns.push_back(cols.slope_begin + j);
    }
  }
  return columns;
}

PolicyBundle extract_policy(const AffineStageModel& model, const CounterpartLP& lp,
                            const LiftingStrategy& strategy,
                            const Eigen::VectorXd& primal, double objective) {
  PolicyBundle bundle{strategy, objective, {}};
  for (int b = 0; b < model.num_blocks(); ++b) {
    const CounterpartLP::BlockColumns& cols = lp.block_columns[b];
    if (cols.intercept < 0) continue;
    PolicyRule rule;
    rule.intercept = primal(cols.intercept);
    rule.slope = Eigen::RowVectorXd::Zero(strategy.lifted_dim());
    for (int j = 0; j < cols.slope_count; ++j) rule.slope(j) = primal(cols.slope_begin + j);
    bundle.rules.emplace(model.blocks()[b].name, std::move(rule));
  }
  return bundle;
}

}  // namespace drlift
