#include "drlift/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace drlift {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

UncertaintySet::UncertaintySet(int horizon, Eigen::MatrixXd W, Eigen::VectorXd h,
                               std::vector<Interval> bounds)
    : horizon_(horizon), W_(std::move(W)), h_(std::move(h)), bounds_(std::move(bounds)) {
  require(horizon_ >= 2, "uncertainty set needs horizon >= 2");
  const int n = horizon_ - 1;
  require(static_cast<int>(bounds_.size()) == n, "bounds must cover stages 2..T");
  require(W_.cols() == n, "W must have T-1 columns");
  require(W_.rows() == h_.size(), "W rows and h length differ");
  for (int i = 0; i < n; ++i) {
    require(bounds_[i].lo < bounds_[i].hi, "stage bounds need l_t < u_t");
  }

  // Detect the hyper-rectangle encoding: every row is +-e_i with matching
  // right-hand side, and both rows exist for every coordinate.
  std::vector<bool> has_lo(n, false), has_up(n, false);
  bool box = W_.rows() == 2 * n;
  for (int r = 0; box && r < W_.rows(); ++r) {
    int nz = -1;
    for (int c = 0; c < n; ++c) {
      if (W_(r, c) != 0.0) {
        if (nz >= 0) {
          box = false;
          break;
        }
        nz = c;
      }
    }
    if (!box || nz < 0) {
      box = false;
      break;
    }
    const double w = W_(r, nz);
    if (w == 1.0 && h_(r) == bounds_[nz].lo) {
      has_lo[nz] = true;
    } else if (w == -1.0 && h_(r) == -bounds_[nz].hi) {
      has_up[nz] = true;
    } else {
      box = false;
    }
  }
  hyper_rectangle_ = box && std::all_of(has_lo.begin(), has_lo.end(), [](bool b) { return b; }) &&
                     std::all_of(has_up.begin(), has_up.end(), [](bool b) { return b; });

  // Box vertices must satisfy W d >= h; checking the row-wise worst vertex
  // covers all of them.
  for (int r = 0; r < W_.rows(); ++r) {
    double worst = 0.0;
    for (int c = 0; c < n; ++c) {
      const double w = W_(r, c);
      worst += w * (w >= 0.0 ? bounds_[c].lo : bounds_[c].hi);
    }
    require(worst >= h_(r) - 1e-9 * (1.0 + std::abs(h_(r))),
            "bounds box is not contained in {W d >= h} (row " + std::to_string(r) + ")");
  }
}

UncertaintySet UncertaintySet::box(int horizon, std::vector<Interval> bounds) {
  const int n = horizon - 1;
  require(static_cast<int>(bounds.size()) == n, "bounds must cover stages 2..T");
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(2 * n, n);
  Eigen::VectorXd h(2 * n);
  for (int i = 0; i < n; ++i) {
    W(i, i) = 1.0;
    h(i) = bounds[i].lo;
    W(n + i, i) = -1.0;
    h(n + i) = -bounds[i].hi;
  }
  return UncertaintySet(horizon, std::move(W), std::move(h), std::move(bounds));
}

UncertaintySet UncertaintySet::box(int horizon, double lo, double hi) {
  return box(horizon, std::vector<Interval>(horizon - 1, Interval{lo, hi}));
}

const Interval& UncertaintySet::bounds(int stage) const {
  const int i = stage_coord(stage);
  if (i < 0 || i >= dim()) throw DomainError("stage " + std::to_string(stage) + " out of range");
  return bounds_[i];
}

bool UncertaintySet::contains(const Eigen::VectorXd& d, double tol) const {
  if (d.size() != dim()) return false;
  return ((W_ * d - h_).array() >= -tol).all();
}

Eigen::VectorXd UncertaintySet::mean() const {
  Eigen::VectorXd m(dim());
  for (int i = 0; i < dim(); ++i) m(i) = bounds_[i].mid();
  return m;
}

LiftingStrategy::LiftingStrategy(std::vector<std::vector<double>> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  require(!breakpoints_.empty(), "strategy needs at least one uncertain stage");
  offsets_.reserve(breakpoints_.size() + 1);
  int offset = 0;
  for (const auto& z : breakpoints_) {
    for (std::size_t j = 1; j < z.size(); ++j) {
      if (!(z[j - 1] < z[j])) {
        throw std::invalid_argument("breakpoints must be strictly increasing");
      }
    }
    offsets_.push_back(offset);
    offset += static_cast<int>(z.size()) + 1;
  }
  offsets_.push_back(offset);
  lifted_dim_ = offset;
}

LiftingStrategy LiftingStrategy::none(int horizon) {
  return LiftingStrategy(std::vector<std::vector<double>>(horizon - 1, std::vector<double>{}));
}

LiftingStrategy LiftingStrategy::uniform(int horizon, std::vector<double> z) {
  return LiftingStrategy(std::vector<std::vector<double>>(horizon - 1, std::move(z)));
}

const std::vector<double>& LiftingStrategy::breakpoints(int stage) const {
  const int i = stage_coord(stage);
  if (i < 0 || i >= dim()) throw DomainError("stage " + std::to_string(stage) + " out of range");
  return breakpoints_[i];
}

int LiftingStrategy::pieces(int stage) const {
  return static_cast<int>(breakpoints(stage).size()) + 1;
}

int LiftingStrategy::observed_dim(int stage) const {
  const int i = stage_coord(stage);
  if (i < 0 || i >= dim()) throw DomainError("stage " + std::to_string(stage) + " out of range");
  return offsets_[i + 1];
}

int LiftingStrategy::stage_offset(int stage) const {
  const int i = stage_coord(stage);
  if (i < 0 || i >= dim()) throw DomainError("stage " + std::to_string(stage) + " out of range");
  return offsets_[i];
}

bool LiftingStrategy::trivial() const {
  return std::all_of(breakpoints_.begin(), breakpoints_.end(),
                     [](const auto& z) { return z.empty(); });
}

bool LiftingStrategy::non_increasing() const {
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i].size() > breakpoints_[i - 1].size()) return false;
  }
  return true;
}

void LiftingStrategy::validate_for(const UncertaintySet& set) const {
  require(set.horizon() == horizon(), "strategy and set horizons differ");
  for (int t = 2; t <= horizon(); ++t) {
    const Interval& b = set.bounds(t);
    for (double z : breakpoints(t)) {
      if (!(b.lo < z && z < b.hi)) {
        throw std::invalid_argument("breakpoint " + std::to_string(z) + " in stage " +
                                    std::to_string(t) + " is not interior to (" +
                                    std::to_string(b.lo) + ", " + std::to_string(b.hi) + ")");
      }
    }
  }
}

LiftingStrategy LiftingStrategy::refined_with(int stage, double z) const {
  auto lists = breakpoints_;
  auto& target = lists[stage_coord(stage)];
  auto pos = std::lower_bound(target.begin(), target.end(), z);
  if (pos != target.end() && *pos == z) {
    throw std::invalid_argument("breakpoint already present");
  }
  target.insert(pos, z);
  return LiftingStrategy(std::move(lists));
}

bool LiftingStrategy::refines(const LiftingStrategy& coarser) const {
  if (coarser.dim() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const auto& fine = breakpoints_[i];
    const auto& coarse = coarser.breakpoints_[i];
    if (!std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end())) return false;
  }
  return true;
}

Eigen::VectorXd lift_point(const Eigen::VectorXd& d, const LiftingStrategy& strategy,
                           const UncertaintySet& set) {
  require(set.horizon() == strategy.horizon(), "strategy and set horizons differ");
  require(d.size() == strategy.dim(), "realization has wrong dimension");
  Eigen::VectorXd lifted(strategy.lifted_dim());
  for (int t = 2; t <= strategy.horizon(); ++t) {
    const Interval& b = set.bounds(t);
    const double x = d(stage_coord(t));
    const double slack = 1e-12 * (1.0 + std::abs(b.hi));
    if (x < b.lo - slack || x > b.hi + slack) {
      throw DomainError("realization outside bounds in stage " + std::to_string(t));
    }
    const auto& z = strategy.breakpoints(t);
    const int r = static_cast<int>(z.size()) + 1;
    const int off = strategy.stage_offset(t);
    if (r == 1) {
      lifted(off) = x;
      continue;
    }
    lifted(off) = std::min(x, z[0]);
    for (int j = 1; j < r - 1; ++j) {
      lifted(off + j) = std::max(std::min(x, z[j]) - z[j - 1], 0.0);
    }
    lifted(off + r - 1) = std::max(x - z[r - 2], 0.0);
  }
  return lifted;
}

Eigen::VectorXd retract_point(const Eigen::VectorXd& lifted, const LiftingStrategy& strategy) {
  require(lifted.size() == strategy.lifted_dim(), "lifted vector has wrong dimension");
  Eigen::VectorXd d(strategy.dim());
  for (int t = 2; t <= strategy.horizon(); ++t) {
    d(stage_coord(t)) = lifted.segment(strategy.stage_offset(t), strategy.pieces(t)).sum();
  }
  return d;
}

StageHull stage_hull(const LiftingStrategy& strategy, int stage, Interval bounds) {
  const auto& z = strategy.breakpoints(stage);
  const int r = static_cast<int>(z.size()) + 1;
  require(bounds.lo < bounds.hi, "stage bounds need l_t < u_t");
  for (double v : z) {
    require(bounds.lo < v && v < bounds.hi, "breakpoints must be interior to the bounds");
  }

  StageHull hull;
  if (r == 1) {
    hull.A = Eigen::MatrixXd(2, 1);
    hull.A << 1.0, -1.0;
    hull.b = Eigen::VectorXd(2);
    hull.b << bounds.lo, -bounds.hi;
    return hull;
  }

  // Segment ends with z_0 = l and z_r = u.
  auto seg = [&](int j) { return j == 0 ? bounds.lo : (j == r ? bounds.hi : z[j - 1]); };

  hull.A = Eigen::MatrixXd::Zero(r + 1, r);
  hull.b = Eigen::VectorXd::Zero(r + 1);
  const double w0 = 1.0 / (z[0] - bounds.lo);
  hull.A(0, 0) = -w0;
  hull.b(0) = -z[0] * w0;
  for (int i = 1; i < r; ++i) {
    hull.A(i, i - 1) = 1.0 / (seg(i) - seg(i - 1));
    hull.A(i, i) = -1.0 / (seg(i + 1) - seg(i));
  }
  hull.b(1) = bounds.lo * w0;
  hull.A(r, r - 1) = 1.0 / (bounds.hi - z[r - 2]);
  return hull;
}

LiftedSetDescription outer_approximation(const UncertaintySet& set,
                                         const LiftingStrategy& strategy) {
  strategy.validate_for(set);
  LiftedSetDescription lifted;
  lifted.m = set.num_rows();
  lifted.k_prime = strategy.lifted_dim();

  lifted.hulls.reserve(strategy.dim());
  lifted.m_prime = 0;
  for (int t = 2; t <= set.horizon(); ++t) {
    lifted.hulls.push_back(stage_hull(strategy, t, set.bounds(t)));
    lifted.m_prime += strategy.pieces(t) + 1;
  }

  lifted.W_rep = Eigen::MatrixXd::Zero(lifted.m, lifted.k_prime);
  for (int t = 2; t <= set.horizon(); ++t) {
    const int off = strategy.stage_offset(t);
    for (int j = 0; j < strategy.pieces(t); ++j) {
      lifted.W_rep.col(off + j) = set.W().col(stage_coord(t));
    }
  }

  lifted.A = Eigen::MatrixXd::Zero(lifted.m + lifted.m_prime, lifted.k_prime);
  lifted.b = Eigen::VectorXd::Zero(lifted.m + lifted.m_prime);
  lifted.A.topRows(lifted.m) = lifted.W_rep;
  lifted.b.head(lifted.m) = set.h();
  int row = lifted.m;
  for (int t = 2; t <= set.horizon(); ++t) {
    const StageHull& hull = lifted.hulls[stage_coord(t)];
    lifted.A.block(row, strategy.stage_offset(t), hull.A.rows(), hull.A.cols()) = hull.A;
    lifted.b.segment(row, hull.b.size()) = hull.b;
    row += static_cast<int>(hull.A.rows());
  }
  return lifted;
}

Eigen::MatrixXd observation_matrix(int stage, const LiftingStrategy& strategy) {
  const int k = strategy.lifted_dim();
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(k, k);
  V.topLeftCorner(strategy.observed_dim(stage), strategy.observed_dim(stage))
      .setIdentity();
  return V;
}

Eigen::RowVectorXd unit_selector(int stage, const LiftingStrategy& strategy) {
  Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(strategy.lifted_dim());
  e.segment(strategy.stage_offset(stage), strategy.pieces(stage)).setOnes();
  return e;
}

Eigen::VectorXd lifted_mean(const LiftingStrategy& strategy, const UncertaintySet& set) {
  strategy.validate_for(set);
  Eigen::VectorXd mean(strategy.lifted_dim());
  for (int t = 2; t <= strategy.horizon(); ++t) {
    const Interval& b = set.bounds(t);
    const auto& z = strategy.breakpoints(t);
    const int r = static_cast<int>(z.size()) + 1;
    const int off = strategy.stage_offset(t);
    const double width = b.width();
    if (r == 1) {
      mean(off) = b.mid();
      continue;
    }
    // E[min(d, z_1)] for a uniform on [l, u].
    mean(off) = ((z[0] * z[0] - b.lo * b.lo) / 2.0 + z[0] * (b.hi - z[0])) / width;
    for (int j = 1; j < r - 1; ++j) {
      const double delta = z[j] - z[j - 1];
      mean(off + j) = (delta * delta / 2.0 + delta * (b.hi - z[j])) / width;
    }
    const double tail = b.hi - z[r - 2];
    mean(off + r - 1) = tail * tail / 2.0 / width;
  }
  return mean;
}

Eigen::VectorXd lifted_mean_mc(const LiftingStrategy& strategy, const UncertaintySet& set,
                               int n, std::uint64_t seed) {
  strategy.validate_for(set);
  require(n >= 1, "Monte Carlo sample count must be positive");
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(strategy.lifted_dim());
  Eigen::VectorXd d(strategy.dim());
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < strategy.dim(); ++c) {
      const Interval& b = set.all_bounds()[c];
      d(c) = b.lo + unit() * b.width();
    }
    acc += lift_point(d, strategy, set);
  }
  return acc / static_cast<double>(n);
}

}  // namespace drlift
