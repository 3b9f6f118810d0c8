#pragma once

#include "drlift/counterpart.hpp"
#include "drlift/lp.hpp"

#include <Eigen/Dense>

#include <vector>

namespace drlift::testing {

/// Brute-force vertex enumeration of {x : A x >= b} over all dim-subsets of
/// rows. Intended for small dimensions only.
std::vector<Eigen::VectorXd> enumerate_vertices(const Eigen::MatrixXd& A,
                                                const Eigen::VectorXd& b, double tol = 1e-9);

/// True when the two vertex sets match pairwise within tol.
bool same_vertex_set(const std::vector<Eigen::VectorXd>& a,
                     const std::vector<Eigen::VectorXd>& b, double tol = 1e-9);

/// Independent LP oracle: enumerates the vertices of the feasible region
/// (rows plus finite variable bounds, all in the structural space) and takes
/// the best objective value. Requires every variable to carry finite bounds.
struct BruteForceResult {
  bool feasible = false;
  double objective = 0.0;
  Eigen::VectorXd argmin;
};
BruteForceResult brute_force_lp(const CounterpartLP& lp, double tol = 1e-9);

}  // namespace drlift::testing
