#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qmetric/metric_space.hpp"

namespace qmetric {

struct LpSolution {
  double value = 0.0;
  Eigen::VectorXd x;
  std::size_t pivots = 0;
};

/// Dense simplex for  max c·x  s.t.  A x <= b, x >= 0  with b >= 0, so the
/// origin is a feasible starting vertex. Dantzig pricing, switching to Bland's
/// rule after a run of degenerate pivots. Throws Error{input_shape} on size
/// mismatch or negative b, Error{config} if the LP is unbounded.
LpSolution maximize_from_feasible_origin(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                         const Eigen::VectorXd& c, double tol = 1e-9);

struct LipschitzLpSolution {
  double value = 0.0;
  RealFunction maximizer;
};

/// max Σ c_i f_i over f with Lip_d(f) <= 1 and f(0) = 0.
///
/// When Σ c_i = 0 the objective is invariant under adding constants, so the
/// gauge f(0) = 0 loses nothing; that is the only case accepted (Error
/// {input_shape} otherwise). Pairs whose constraint is implied by a two-step
/// path (d_ik + d_kj <= d_ij) are dropped from the LP.
LipschitzLpSolution maximize_over_lipschitz_ball(const FiniteMetricSpace& space,
                                                 const Eigen::VectorXd& c, double tol = 1e-9);

}  // namespace qmetric
