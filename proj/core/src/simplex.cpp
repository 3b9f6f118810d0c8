#include "drlift/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace drlift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow2_round(double v) {
  if (v <= 0.0 || !std::isfinite(v)) return 1.0;
  return std::exp2(std::round(std::log2(v)));
}

struct Eta {
  int row = 0;
  double pivot = 1.0;
  std::vector<std::pair<int, double>> nz;  // off-pivot entries of the column
};

}  // namespace

struct SimplexSolver::Impl {
  SolveOptions options;

  int m = 0;        // rows
  int ns = 0;       // structural columns
  int n = 0;        // ns + m logicals
  bool maximize = false;
  double obj_constant = 0.0;

  Eigen::SparseMatrix<double> A;  // m x n, scaled, logicals appended
  Eigen::VectorXd cost;           // scaled, min sense
  Eigen::VectorXd lb, ub;         // scaled
  Eigen::VectorXd rhs;            // scaled
  Eigen::VectorXd row_scale, col_scale;

  // Basis state.
  std::vector<VarStatus> status;   // length n
  std::vector<int> basic_cols;     // length m
  std::vector<int> row_of_col;     // -1 when nonbasic
  Eigen::VectorXd xb;              // basic values
  double nonbasic_cost = 0.0;      // sum of cost*value over nonbasic columns
  double feas_relax = 0.0;         // residual infeasibility accepted by phase 1

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  Eigen::SparseMatrix<double> basis_matrix;
  std::vector<Eta> etas;

  // Work vectors.
  Eigen::VectorXd work_w, work_y;

  long iterations = 0;
  int price_cursor = 0;

  explicit Impl(const CounterpartLP& lp, const SolveOptions& opts) : options(opts) {
    m = lp.num_rows();
    ns = lp.num_cols();
    n = ns + m;
    maximize = lp.maximize;
    obj_constant = lp.objective_constant;

    Eigen::VectorXd raw_cost(n);
    lb.resize(n);
    ub.resize(n);
    rhs.resize(m);
    for (int c = 0; c < ns; ++c) {
      const LpColumn& col = lp.cols()[c];
      raw_cost(c) = maximize ? -col.obj : col.obj;
      lb(c) = col.lb;
      ub(c) = col.ub;
    }
    for (int r = 0; r < m; ++r) {
      const LpRow& row = lp.rows()[r];
      raw_cost(ns + r) = 0.0;
      lb(ns + r) = 0.0;
      ub(ns + r) = row.sense == Sense::Ge ? kInf : 0.0;
      rhs(r) = row.rhs;
    }

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(lp.num_entries() + m);
    for (int e = 0; e < lp.num_entries(); ++e) {
      trips.emplace_back(lp.entry_rows()[e], lp.entry_cols()[e], lp.entry_values()[e]);
    }
    for (int r = 0; r < m; ++r) trips.emplace_back(r, ns + r, -1.0);
    A.resize(m, n);
    A.setFromTriplets(trips.begin(), trips.end());

    scale(raw_cost);
    cost = raw_cost;

    status.assign(n, VarStatus::AtLower);
    row_of_col.assign(n, -1);
    work_w.resize(m);
    work_y.resize(m);
  }

  // Geometric-mean row/column scaling, factors rounded to powers of two so
  // scaled arithmetic stays exact.
  void scale(Eigen::VectorXd& raw_cost) {
    row_scale = Eigen::VectorXd::Ones(m);
    col_scale = Eigen::VectorXd::Ones(n);
    if (!options.scale || m == 0) return;

    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd rmin = Eigen::VectorXd::Constant(m, kInf);
      Eigen::VectorXd rmax = Eigen::VectorXd::Zero(m);
      for (int c = 0; c < n; ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
          const double v = std::abs(it.value()) * row_scale(it.row()) * col_scale(c);
          if (v > 0.0) {
            rmin(it.row()) = std::min(rmin(it.row()), v);
            rmax(it.row()) = std::max(rmax(it.row()), v);
          }
        }
      }
      for (int r = 0; r < m; ++r) {
        if (rmax(r) > 0.0) row_scale(r) *= pow2_round(1.0 / std::sqrt(rmin(r) * rmax(r)));
      }
      Eigen::VectorXd cmin = Eigen::VectorXd::Constant(n, kInf);
      Eigen::VectorXd cmax = Eigen::VectorXd::Zero(n);
      for (int c = 0; c < n; ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
          const double v = std::abs(it.value()) * row_scale(it.row()) * col_scale(c);
          if (v > 0.0) {
            cmin(c) = std::min(cmin(c), v);
            cmax(c) = std::max(cmax(c), v);
          }
        }
      }
      for (int c = 0; c < n; ++c) {
        if (cmax(c) > 0.0) col_scale(c) *= pow2_round(1.0 / std::sqrt(cmin(c) * cmax(c)));
      }
    }

    for (int c = 0; c < n; ++c) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
        it.valueRef() *= row_scale(it.row()) * col_scale(c);
      }
    }
    for (int r = 0; r < m; ++r) rhs(r) *= row_scale(r);
    for (int c = 0; c < n; ++c) {
      raw_cost(c) *= col_scale(c);
      if (std::isfinite(lb(c))) lb(c) /= col_scale(c);
      if (std::isfinite(ub(c))) ub(c) /= col_scale(c);
    }
  }

  void set_column_bounds(int col, double new_lb, double new_ub) {
    lb(col) = std::isfinite(new_lb) ? new_lb / col_scale(col) : new_lb;
    ub(col) = std::isfinite(new_ub) ? new_ub / col_scale(col) : new_ub;
  }

  double nonbasic_value(int c) const {
    if (status[c] == VarStatus::AtUpper) return std::isfinite(ub(c)) ? ub(c) : 0.0;
    return std::isfinite(lb(c)) ? lb(c) : 0.0;
  }

  // --- factorization -----------------------------------------------------

  bool refactorize() {
    etas.clear();
    std::vector<Eigen::Triplet<double>> trips;
    for (int r = 0; r < m; ++r) {
      const int c = basic_cols[r];
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
        trips.emplace_back(it.row(), r, it.value());
      }
    }
    basis_matrix.resize(m, m);
    basis_matrix.setFromTriplets(trips.begin(), trips.end());
    lu.compute(basis_matrix);
    return lu.info() == Eigen::Success;
  }

  void ftran(Eigen::VectorXd& v) {
    v = lu.solve(v);
    for (const Eta& e : etas) {
      const double piv = v(e.row) / e.pivot;
      if (piv != 0.0) {
        for (const auto& [i, val] : e.nz) v(i) -= val * piv;
      }
      v(e.row) = piv;
    }
  }

  void btran(Eigen::VectorXd& v) {
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double dot = v(it->row);
      for (const auto& [i, val] : it->nz) dot -= val * v(i);
      v(it->row) = dot / it->pivot;
    }
    v = lu.adjoint().solve(v);
  }

  // Dense column c of A into work_w-shaped vector.
  void scatter_column(int c, Eigen::VectorXd& v) const {
    v.setZero();
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
      v(it.row()) = it.value();
    }
  }

  double dot_column(int c, const Eigen::VectorXd& y) const {
    double acc = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
      acc += it.value() * y(it.row());
    }
    return acc;
  }

  // Recomputes basic values from scratch: B xb = rhs - N xn.
  void recompute_xb() {
    Eigen::VectorXd r = rhs;
    nonbasic_cost = 0.0;
    for (int c = 0; c < n; ++c) {
      if (row_of_col[c] >= 0) continue;
      const double v = nonbasic_value(c);
      nonbasic_cost += cost(c) * v;
      if (v != 0.0) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
          r(it.row()) -= it.value() * v;
        }
      }
    }
    ftran(r);
    xb = r;
  }

  // --- solve -------------------------------------------------------------

  // Greedy row-singleton crash over the free structural columns. Each pass
  // assigns a column that is the last remaining candidate in some row, which
  // keeps the selected block permuted-triangular, hence nonsingular. Free
  // basics absorb equality residuals without bound violations, so phase 1
  // starts with most equality rows already satisfied.
  void crash_basis() {
    std::vector<char> eligible(n, 0);
    for (int c = 0; c < ns; ++c) {
      eligible[c] = !std::isfinite(lb(c)) && !std::isfinite(ub(c)) ? 1 : 0;
    }

    // Row-wise view of the eligible entries with a stability threshold.
    std::vector<double> col_max(n, 0.0);
    for (int c = 0; c < n; ++c) {
      if (!eligible[c]) continue;
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
        col_max[c] = std::max(col_max[c], std::abs(it.value()));
      }
    }
    std::vector<int> row_count(m, 0);
    std::vector<std::vector<std::pair<int, double>>> row_cols(m);
    for (int c = 0; c < n; ++c) {
      if (!eligible[c]) continue;
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
        if (std::abs(it.value()) >= 0.05 * col_max[c]) {
          row_cols[it.row()].emplace_back(c, it.value());
          ++row_count[it.row()];
        }
      }
    }

    std::vector<int> row_pivot(m, -1);
    std::vector<char> used(n, 0);
    std::vector<int> queue;
    for (int r = 0; r < m; ++r) {
      if (row_count[r] == 1) queue.push_back(r);
    }
    while (!queue.empty()) {
      const int r = queue.back();
      queue.pop_back();
      if (row_pivot[r] >= 0 || row_count[r] != 1) continue;
      int chosen = -1;
      for (const auto& [c, v] : row_cols[r]) {
        if (!used[c]) {
          chosen = c;
          break;
        }
      }
      if (chosen < 0) continue;
      row_pivot[r] = chosen;
      used[chosen] = 1;
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, chosen); it; ++it) {
        const int r2 = static_cast<int>(it.row());
        if (r2 == r || row_pivot[r2] >= 0) continue;
        if (--row_count[r2] == 1) queue.push_back(r2);
      }
    }

    for (int c = 0; c < n; ++c) {
      status[c] = (std::isfinite(lb(c)) || !std::isfinite(ub(c))) ? VarStatus::AtLower
                                                                  : VarStatus::AtUpper;
    }
    basic_cols.resize(m);
    for (int r = 0; r < m; ++r) {
      basic_cols[r] = row_pivot[r] >= 0 ? row_pivot[r] : ns + r;
      status[basic_cols[r]] = VarStatus::Basic;
    }
  }

  void install_basis(const Basis* warm) {
    bool ok = false;
    if (warm != nullptr && static_cast<int>(warm->status.size()) == n) {
      status = warm->status;
      basic_cols.clear();
      for (int c = 0; c < n; ++c) {
        if (status[c] == VarStatus::Basic) basic_cols.push_back(c);
      }
      ok = static_cast<int>(basic_cols.size()) == m;
    }
    if (!ok) {
      crash_basis();
    }
    std::fill(row_of_col.begin(), row_of_col.end(), -1);
    for (int r = 0; r < m; ++r) row_of_col[basic_cols[r]] = r;
    if (!refactorize()) {
      // Singular warm basis: fall back to the logical basis.
      for (int c = 0; c < n; ++c) {
        status[c] = (std::isfinite(lb(c)) || !std::isfinite(ub(c))) ? VarStatus::AtLower
                                                                    : VarStatus::AtUpper;
      }
      std::fill(row_of_col.begin(), row_of_col.end(), -1);
      for (int r = 0; r < m; ++r) {
        basic_cols[r] = ns + r;
        status[ns + r] = VarStatus::Basic;
        row_of_col[ns + r] = r;
      }
      if (!refactorize()) throw SolverError("logical basis is singular");
    }
    recompute_xb();
  }

  // Phase-1 cost of a basic variable and its displacement from the box.
  double infeasibility(int r, double* cost1) const {
    const int c = basic_cols[r];
    const double x = xb(r);
    const double tol = options.feasibility_tol + feas_relax;
    if (x < lb(c) - tol) {
      if (cost1 != nullptr) *cost1 = -1.0;
      return lb(c) - x;
    }
    if (x > ub(c) + tol) {
      if (cost1 != nullptr) *cost1 = 1.0;
      return x - ub(c);
    }
    if (cost1 != nullptr) *cost1 = 0.0;
    return 0.0;
  }

  double total_infeasibility() const {
    double sum = 0.0;
    for (int r = 0; r < m; ++r) sum += infeasibility(r, nullptr);
    return sum;
  }

  double phase2_objective() const {
    double obj = nonbasic_cost;
    for (int r = 0; r < m; ++r) obj += cost(basic_cols[r]) * xb(r);
    return obj;
  }

  LpSolution solve(const Basis* warm) {
    LpSolution out;
    feas_relax = 0.0;
    if (m == 0) return solve_unconstrained(out);
    install_basis(warm);

    const long max_iter = options.max_iterations > 0
                              ? options.max_iterations
                              : std::max<long>(100000, 30L * (m + ns));
    const long bland_trigger =
        options.bland_trigger > 0 ? options.bland_trigger : 5L * (m + n);

    iterations = 0;
    price_cursor = 0;
    long stall = 0;
    bool bland = false;
    double last_merit = kInf;

    while (true) {
      if (iterations >= max_iter) {
        std::ostringstream msg;
        msg << "simplex iteration cap " << max_iter << " exceeded (m=" << m << ", n=" << n
            << ", infeasibility=" << total_infeasibility() << ")";
        throw SolverError(msg.str());
      }

      // Phase selection and cost vector for pricing.
      bool phase1 = false;
      Eigen::VectorXd& y = work_y;
      y.setZero();
      for (int r = 0; r < m; ++r) {
        double c1 = 0.0;
        infeasibility(r, &c1);
        if (c1 != 0.0) phase1 = true;
        y(r) = c1;
      }
      if (!phase1) {
        for (int r = 0; r < m; ++r) y(r) = cost(basic_cols[r]);
      }
      btran(y);

      const double merit = phase1 ? total_infeasibility() : phase2_objective();
      if (merit < last_merit - 1e-12 * (1.0 + std::abs(last_merit))) {
        stall = 0;
        bland = false;
      } else if (++stall > bland_trigger) {
        bland = true;
      }
      last_merit = merit;

      const int entering = price(phase1, y, bland);
      if (entering < 0) {
        if (phase1) {
          if (total_infeasibility() > options.feasibility_tol * (1.0 + rhs.cwiseAbs().sum())) {
            out.status = LpStatus::Infeasible;
            return finish(out, y, true);
          }
          // Phase-1 optimum with negligible residual: widen the feasibility
          // band so pricing switches to the true costs.
          double worst = 0.0;
          for (int r = 0; r < m; ++r) worst = std::max(worst, infeasibility(r, nullptr));
          feas_relax = std::max(feas_relax, 2.0 * worst) + options.feasibility_tol;
          last_merit = kInf;
          continue;
        }
        out.status = LpStatus::Optimal;
        return finish(out, y, false);
      }

      const double d_entering = reduced_cost(entering, phase1, y);
      const int direction = enter_direction(entering, d_entering);

      Eigen::VectorXd& w = work_w;
      scatter_column(entering, w);
      ftran(w);

      const auto step = ratio_test(entering, direction, w, phase1, bland);
      if (step.unbounded) {
        if (phase1) throw SolverError("phase-1 ray encountered; numerical trouble");
        out.status = LpStatus::Unbounded;
        return finish(out, y, true);
      }

      apply_step(entering, direction, w, step);
      ++iterations;

      if (static_cast<int>(etas.size()) >= options.refactor_interval) {
        if (!refactorize()) throw SolverError("basis refactorization failed");
        recompute_xb();
      }
    }
  }

  double reduced_cost(int c, bool phase1, const Eigen::VectorXd& y) const {
    const double cj = phase1 ? 0.0 : cost(c);
    return cj - dot_column(c, y);
  }

  static int enter_direction(int, double d) { return d < 0.0 ? +1 : -1; }

  bool eligible(int c, bool phase1, const Eigen::VectorXd& y, double* d_out) const {
    if (row_of_col[c] >= 0) return false;
    if (lb(c) == ub(c)) return false;  // fixed
    const double d = reduced_cost(c, phase1, y);
    if (d_out != nullptr) *d_out = d;
    const double tol = options.optimality_tol;
    const bool free_var = !std::isfinite(lb(c)) && !std::isfinite(ub(c));
    if (free_var) return std::abs(d) > tol;
    if (status[c] == VarStatus::AtLower) return d < -tol;
    return d > tol;  // AtUpper
  }

  int price(bool phase1, const Eigen::VectorXd& y, bool bland) {
    if (bland) {
      for (int c = 0; c < n; ++c) {
        if (eligible(c, phase1, y, nullptr)) return c;
      }
      return -1;
    }
    const int chunk = std::max(256, n / 32);
    int scanned = 0;
    while (scanned < n) {
      int best = -1;
      double best_score = 0.0;
      const int begin = price_cursor;
      for (int k = 0; k < chunk && scanned < n; ++k, ++scanned) {
        const int c = (begin + k) % n;
        double d = 0.0;
        if (eligible(c, phase1, y, &d)) {
          const double score = std::abs(d);
          if (score > best_score) {
            best_score = score;
            best = c;
          }
        }
      }
      price_cursor = (begin + chunk) % n;
      if (best >= 0) return best;
    }
    return -1;
  }

  struct Step {
    bool unbounded = false;
    bool bound_flip = false;
    int leaving_row = -1;
    double theta = 0.0;
    VarStatus leaving_status = VarStatus::AtLower;
  };

  Step ratio_test(int entering, int direction, const Eigen::VectorXd& w, bool phase1,
                  bool bland) const {
    Step step;
    const double piv_tol = 1e-9;
    double theta = kInf;
    // Bound flip: the entering variable may traverse its own range.
    if (std::isfinite(lb(entering)) && std::isfinite(ub(entering))) {
      theta = ub(entering) - lb(entering);
      step.bound_flip = true;
    }

    int leaving = -1;
    double leaving_pivot = 0.0;
    VarStatus leaving_status = VarStatus::AtLower;
    for (int r = 0; r < m; ++r) {
      const double wr = w(r);
      if (std::abs(wr) <= piv_tol) continue;
      const int c = basic_cols[r];
      const double delta = -direction * wr;  // movement of basic r per unit theta
      const double x = xb(r);
      // Phase 1 opens the violated side so infeasible basics may travel to
      // their bound; the approached bound still blocks. The recorded leaving
      // status must name the true bound the variable lands on.
      double lo = lb(c), hi = ub(c);
      VarStatus up_status = VarStatus::AtUpper;
      VarStatus down_status = VarStatus::AtLower;
      if (phase1) {
        const double tol = options.feasibility_tol + feas_relax;
        if (x < lo - tol) {
          hi = lo;
          up_status = VarStatus::AtLower;
          lo = -kInf;
        } else if (x > hi + tol) {
          lo = hi;
          down_status = VarStatus::AtUpper;
          hi = kInf;
        }
      }
      double limit = kInf;
      VarStatus target = VarStatus::AtLower;
      if (delta > 0.0 && std::isfinite(hi)) {
        limit = (hi - x) / delta;
        target = up_status;
      } else if (delta < 0.0 && std::isfinite(lo)) {
        limit = (x - lo) / (-delta);
        target = down_status;
      }
      if (limit >= theta) continue;
      if (limit < 0.0) limit = 0.0;
      const bool tie = std::abs(limit - theta) <= 1e-12 * (1.0 + theta);
      if (!tie || leaving < 0 ||
          (bland ? c < basic_cols[leaving] : std::abs(wr) > std::abs(leaving_pivot))) {
        theta = std::min(theta, limit);
        leaving = r;
        leaving_pivot = wr;
        leaving_status = target;
        step.bound_flip = false;
      }
    }

    if (leaving < 0 && !step.bound_flip) {
      step.unbounded = !std::isfinite(theta);
      if (step.unbounded) return step;
    }
    step.theta = theta;
    step.leaving_row = leaving;
    step.leaving_status = leaving_status;
    return step;
  }

  void apply_step(int entering, int direction, const Eigen::VectorXd& w, const Step& step) {
    const double move = direction * step.theta;
    if (step.theta != 0.0) {
      for (int r = 0; r < m; ++r) {
        if (w(r) != 0.0) xb(r) -= w(r) * move;
      }
    }
    if (step.leaving_row < 0) {
      // Bound flip: entering stays nonbasic at the opposite bound.
      const double before = nonbasic_value(entering);
      status[entering] =
          status[entering] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
      nonbasic_cost += cost(entering) * (nonbasic_value(entering) - before);
      return;
    }

    const int leaving = basic_cols[step.leaving_row];
    const double enter_value = nonbasic_value(entering) + move;
    nonbasic_cost -= cost(entering) * nonbasic_value(entering);

    status[leaving] = step.leaving_status;
    row_of_col[leaving] = -1;

    basic_cols[step.leaving_row] = entering;
    row_of_col[entering] = step.leaving_row;
    status[entering] = VarStatus::Basic;
    xb(step.leaving_row) = enter_value;
    nonbasic_cost += cost(leaving) * nonbasic_value(leaving);

    Eta eta;
    eta.row = step.leaving_row;
    eta.pivot = w(step.leaving_row);
    for (int r = 0; r < m; ++r) {
      if (r != step.leaving_row && std::abs(w(r)) > 1e-13) eta.nz.emplace_back(r, w(r));
    }
    etas.push_back(std::move(eta));
  }

  LpSolution solve_unconstrained(LpSolution& out) {
    out.primal = Eigen::VectorXd::Zero(ns);
    double obj = 0.0;
    for (int c = 0; c < ns; ++c) {
      double v = 0.0;
      if (cost(c) > 0.0) {
        if (!std::isfinite(lb(c))) {
          out.status = LpStatus::Unbounded;
          return out;
        }
        v = lb(c);
      } else if (cost(c) < 0.0) {
        if (!std::isfinite(ub(c))) {
          out.status = LpStatus::Unbounded;
          return out;
        }
        v = ub(c);
      } else {
        v = std::isfinite(lb(c)) ? lb(c) : (std::isfinite(ub(c)) ? ub(c) : 0.0);
      }
      obj += cost(c) * v;
      out.primal(c) = v * col_scale(c);
    }
    out.objective = (maximize ? -obj : obj) + obj_constant;
    out.status = LpStatus::Optimal;
    return out;
  }

  LpSolution finish(LpSolution& out, const Eigen::VectorXd& y, bool bail) {
    out.iterations = iterations;
    out.basis.status = status;
    if (bail) return out;

    out.primal.resize(ns);
    for (int c = 0; c < ns; ++c) {
      const double v = row_of_col[c] >= 0 ? xb(row_of_col[c]) : nonbasic_value(c);
      out.primal(c) = v * col_scale(c);
    }
    out.row_duals.resize(m);
    for (int r = 0; r < m; ++r) {
      out.row_duals(r) = (maximize ? -y(r) : y(r)) * row_scale(r);
    }
    out.objective = (maximize ? -phase2_objective() : phase2_objective()) + obj_constant;

    // Scaled residuals for the optimality contract.
    double pres = 0.0;
    Eigen::VectorXd act = -rhs;
    for (int c = 0; c < n; ++c) {
      const double v = row_of_col[c] >= 0 ? xb(row_of_col[c]) : nonbasic_value(c);
      if (v != 0.0) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
          act(it.row()) += it.value() * v;
        }
      }
      double lo = lb(c), hi = ub(c);
      if (std::isfinite(lo)) pres = std::max(pres, lo - v);
      if (std::isfinite(hi)) pres = std::max(pres, v - hi);
    }
    pres = std::max(pres, act.cwiseAbs().maxCoeff());
    double dres = 0.0;
    for (int c = 0; c < n; ++c) {
      if (row_of_col[c] >= 0) continue;
      const double d = cost(c) - dot_column(c, y);
      const bool free_var = !std::isfinite(lb(c)) && !std::isfinite(ub(c));
      if (free_var || lb(c) == ub(c)) {
        if (free_var) dres = std::max(dres, std::abs(d));
        continue;
      }
      if (status[c] == VarStatus::AtLower) {
        dres = std::max(dres, -d);
      } else {
        dres = std::max(dres, d);
      }
    }
    out.primal_residual = pres;
    out.dual_residual = dres;
    return out;
  }
};

SimplexSolver::SimplexSolver(const CounterpartLP& lp, const SolveOptions& options)
    : impl_(std::make_unique<Impl>(lp, options)) {}

SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::set_column_bounds(int col, double lb, double ub) {
  impl_->set_column_bounds(col, lb, ub);
}

LpSolution SimplexSolver::solve(const Basis* warm_start) { return impl_->solve(warm_start); }

int SimplexSolver::num_rows() const { return impl_->m; }
int SimplexSolver::num_structural() const { return impl_->ns; }

}  // namespace drlift
