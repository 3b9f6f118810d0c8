#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace drlift {

/// Error thrown when a point or parameter lies outside its declared domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed interval [lo, hi] for one uncertain coordinate.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

// Stages are 1-based as in the multistage model; uncertainty first appears in
// stage 2. Coordinate i of a realization vector (0-based, length T-1)
// corresponds to stage i+2. All conversions between the two conventions go
// through stage_coord()/coord_stage().
inline int stage_coord(int stage) { return stage - 2; }
inline int coord_stage(int coord) { return coord + 2; }

/// Polytope {d in R^(T-1) : W d >= h} together with per-stage bounds
/// [l_t, u_t] for t = 2..T. The bounds box must be contained in the polytope.
class UncertaintySet {
 public:
  UncertaintySet(int horizon, Eigen::MatrixXd W, Eigen::VectorXd h,
                 std::vector<Interval> bounds);

  /// Hyper-rectangle: W/h hold exactly the 2(T-1) box rows
  /// d_i >= l_i and -d_i >= -u_i.
  static UncertaintySet box(int horizon, std::vector<Interval> bounds);
  static UncertaintySet box(int horizon, double lo, double hi);

  int horizon() const { return horizon_; }
  int dim() const { return static_cast<int>(bounds_.size()); }
  int num_rows() const { return static_cast<int>(h_.size()); }
  const Eigen::MatrixXd& W() const { return W_; }
  const Eigen::VectorXd& h() const { return h_; }
  const Interval& bounds(int stage) const;
  const std::vector<Interval>& all_bounds() const { return bounds_; }

  /// True when W/h consist exactly of the box rows (up to row order).
  bool is_hyper_rectangle() const { return hyper_rectangle_; }

  bool contains(const Eigen::VectorXd& d, double tol = 1e-9) const;
  Eigen::VectorXd mean() const;  // per-stage uniform means

 private:
  int horizon_;
  Eigen::MatrixXd W_;
  Eigen::VectorXd h_;
  std::vector<Interval> bounds_;
  bool hyper_rectangle_;
};

/// Per-stage ordered breakpoint lists z^t. An empty list in every stage is an
/// LDR; a shared list in every stage is a PLDR; stage-varying counts form an
/// HDR. Strictly increasing order is enforced at construction; interiority
/// with respect to an UncertaintySet is checked by validate_for().
class LiftingStrategy {
 public:
  /// breakpoints[i] holds the breakpoints of stage i+2.
  explicit LiftingStrategy(std::vector<std::vector<double>> breakpoints);

  static LiftingStrategy none(int horizon);
  static LiftingStrategy uniform(int horizon, std::vector<double> z);

  int horizon() const { return static_cast<int>(breakpoints_.size()) + 1; }
  int dim() const { return static_cast<int>(breakpoints_.size()); }

  const std::vector<double>& breakpoints(int stage) const;
  /// r_t: number of linear pieces in stage t (breakpoint count + 1).
  int pieces(int stage) const;
  /// k' = sum_t r_t
  int lifted_dim() const { return lifted_dim_; }
  /// k_t = sum_{i=2..t} r_i: lifted coordinates observable at stage t.
  int observed_dim(int stage) const;
  /// Start of stage t's block within the lifted vector.
  int stage_offset(int stage) const;

  bool trivial() const;         // all r_t == 1
  bool non_increasing() const;  // r_2 >= r_3 >= ... >= r_T

  /// Checks l_t < z_1 < ... < z_{r_t-1} < u_t for every stage.
  void validate_for(const UncertaintySet& set) const;

  /// Copy with one extra breakpoint inserted in the given stage.
  LiftingStrategy refined_with(int stage, double z) const;
  /// True when every stage's breakpoint set contains the other's.
  bool refines(const LiftingStrategy& coarser) const;

  bool operator==(const LiftingStrategy& other) const {
    return breakpoints_ == other.breakpoints_;
  }

 private:
  std::vector<std::vector<double>> breakpoints_;
  std::vector<int> offsets_;  // per stage, plus trailing k'
  int lifted_dim_ = 0;
};

/// Half-space description {d' : A d' >= b} of one stage's lifted hull.
struct StageHull {
  Eigen::MatrixXd A;  // (r_t+1) x r_t; 2 x 1 box rows when r_t = 1
  Eigen::VectorXd b;
};

/// Assembled outer approximation of conv(lifted set):
/// {d' in R^k' : A d' >= b} with A = [W_rep; blockdiag(hulls)].
struct LiftedSetDescription {
  Eigen::MatrixXd A;       // (m + m') x k'
  Eigen::VectorXd b;       // m + m'
  Eigen::MatrixXd W_rep;   // m x k': W composed with the retraction
  std::vector<StageHull> hulls;  // stage 2..T
  int m = 0;        // rows of W
  int m_prime = 0;  // sum_t (r_t + 1)
  int k_prime = 0;  // sum_t r_t
};

/// Maps a realization to its piecewise components. Component j of stage t is
/// the portion of d_t falling into segment j of the breakpoint chain.
Eigen::VectorXd lift_point(const Eigen::VectorXd& d, const LiftingStrategy& strategy,
                           const UncertaintySet& set);

/// Sums each stage's lifted components back to the original realization.
Eigen::VectorXd retract_point(const Eigen::VectorXd& lifted,
                              const LiftingStrategy& strategy);

/// Convex hull of stage t's lifted segment: the polytope with vertices
/// lift(l_t), lift(z_1), ..., lift(u_t). For r_t = 1 returns the box rows.
StageHull stage_hull(const LiftingStrategy& strategy, int stage, Interval bounds);

LiftedSetDescription outer_approximation(const UncertaintySet& set,
                                         const LiftingStrategy& strategy);

/// k' x k' projector: identity on the first k_t coordinates, zero elsewhere.
Eigen::MatrixXd observation_matrix(int stage, const LiftingStrategy& strategy);

/// Row vector with ones exactly over stage t's lifted block.
Eigen::RowVectorXd unit_selector(int stage, const LiftingStrategy& strategy);

/// Component-wise expectation of the lifted vector under independent
/// per-stage uniforms on the set's bounds, in closed form.
Eigen::VectorXd lifted_mean(const LiftingStrategy& strategy, const UncertaintySet& set);

/// Seeded Monte Carlo estimate of the same expectation; agreement with the
/// closed form within sampling error is a test invariant.
Eigen::VectorXd lifted_mean_mc(const LiftingStrategy& strategy, const UncertaintySet& set,
                               int n, std::uint64_t seed);

// --- serialization -------------------------------------------------------

/// {"stages": [{"breakpoints": [...]}, ...]}
std::string strategy_to_json(const LiftingStrategy& strategy);
LiftingStrategy strategy_from_json(const std::string& text);

/// Parses "3^2,2^6,1^0,0^1" into per-stage breakpoint counts (here
/// 3,3,2,2,2,2,2,2,0).
std::vector<int> parse_hdr_counts(const std::string& shorthand);

/// Builds the strategy for an HDR shorthand: a stage with count c uses the
/// first c values of the base set.
LiftingStrategy hdr_strategy(const std::string& shorthand,
                             const std::vector<double>& base_set);

}  // namespace drlift
