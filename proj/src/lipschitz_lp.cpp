#include "qmetric/lipschitz_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qmetric/error.hpp"

namespace qmetric {

namespace {

constexpr double kPivotTolerance = 1e-12;
constexpr std::size_t kDegenerateRunBeforeBland = 50;

}  // namespace

LpSolution maximize_from_feasible_origin(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                         const Eigen::VectorXd& c, double tol) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m || c.size() != n) throw Error(ErrorKind::input_shape, "LP size mismatch");
  if ((b.array() < -tol).any()) {
    throw Error(ErrorKind::input_shape, "origin is not feasible (negative right-hand side)");
  }

  // Condensed tableau: basic_i = rhs_i - Σ_j t(i, j)·nonbasic_j,
  //                    z       = z0    + Σ_j obj_j·nonbasic_j.
  // Labels < n are structural variables, labels >= n are slacks.
  Eigen::MatrixXd t = a;
  Eigen::VectorXd rhs = b.cwiseMax(0.0);
  Eigen::RowVectorXd obj = c.transpose();
  double z = 0.0;
  std::vector<Eigen::Index> nonbasic(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> basic(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < n; ++j) nonbasic[j] = j;
  for (Eigen::Index i = 0; i < m; ++i) basic[i] = n + i;

  const std::size_t max_pivots = 50 * static_cast<std::size_t>(m + n) + 1000;
  std::size_t pivots = 0;
  std::size_t degenerate_run = 0;

  while (true) {
    const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
    Eigen::Index s = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (obj(j) <= tol) continue;
      if (s < 0) {
        s = j;
      } else if (bland ? nonbasic[j] < nonbasic[s] : obj(j) > obj(s)) {
        s = j;
      }
    }
    if (s < 0) break;

    Eigen::Index r = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, s) <= kPivotTolerance) continue;
      const double ratio = rhs(i) / t(i, s);
      if (r < 0 || ratio < best - kPivotTolerance) {
        r = i;
        best = ratio;
      } else if (ratio <= best + kPivotTolerance && basic[i] < basic[r]) {
        r = i;
        best = std::min(best, ratio);
      }
    }
    if (r < 0) throw Error(ErrorKind::config, "LP is unbounded");
    if (++pivots > max_pivots) throw Error(ErrorKind::config, "simplex did not terminate");
    degenerate_run = rhs(r) <= tol ? degenerate_run + 1 : 0;

    const double p = t(r, s);
    const Eigen::VectorXd col = t.col(s);
    const Eigen::RowVectorXd row = t.row(r) / p;
    const double rhs_r = rhs(r) / p;

    rhs -= col * rhs_r;
    t.noalias() -= col * row;
    t.row(r) = row;
    rhs(r) = rhs_r;
    t.col(s) = -col / p;
    t(r, s) = 1.0 / p;

    const double obj_s = obj(s);
    z += obj_s * rhs_r;
    obj -= obj_s * row;
    obj(s) = -obj_s / p;

    for (Eigen::Index i = 0; i < m; ++i) {
      if (rhs(i) < 0.0 && rhs(i) > -tol) rhs(i) = 0.0;
    }
    std::swap(nonbasic[s], basic[r]);
  }

  LpSolution solution;
  solution.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basic[i] < n) solution.x(basic[i]) = rhs(i);
  }
  solution.value = z;
  solution.pivots = pivots;
  return solution;
}

LipschitzLpSolution maximize_over_lipschitz_ball(const FiniteMetricSpace& space,
                                                 const Eigen::VectorXd& c, double tol) {
  const std::size_t n = space.size();
  if (static_cast<std::size_t>(c.size()) != n) {
    throw Error(ErrorKind::input_shape, "objective size differs from the space size");
  }
  if (std::abs(c.sum()) > 1e-9 * std::max(1.0, c.cwiseAbs().sum())) {
    throw Error(ErrorKind::input_shape, "objective must sum to zero (gauge invariance)");
  }
  if (n == 1) return {0.0, RealFunction::constant(1, 0.0)};

  const auto& d = space.distances();
  const double prune_slack = 1e-12 * std::max(1.0, d.maxCoeff());
  auto implied = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      if (d(i, k) + d(k, j) <= d(i, j) + prune_slack) return true;
    }
    return false;
  };

  // Substitute g_i = f_i + d(i, 0) for i >= 1 (f_0 = 0). Then
  //   f_i - f_j <= d_ij   becomes  g_i - g_j <= d_ij + d_i0 - d_j0  (>= 0),
  //   f_i - f_0 <= d_i0   becomes  g_i <= 2 d_i0,
  //   f_0 - f_i <= d_0i   becomes  g_i >= 0.
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!implied(i, j)) rows.emplace_back(i, j);
    }
  }
  const auto vars = static_cast<Eigen::Index>(n - 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * rows.size()), vars);
  Eigen::VectorXd b(a.rows());
  Eigen::Index r = 0;
  for (const auto& [i, j] : rows) {
    if (i == 0) {
      a(r, static_cast<Eigen::Index>(j - 1)) = 1.0;
      b(r++) = 2.0 * d(j, 0);
      // f_0 - f_j <= d_0j is the sign constraint g_j >= 0.
      continue;
    }
    for (const auto& [u, v] : {std::pair{i, j}, std::pair{j, i}}) {
      a(r, static_cast<Eigen::Index>(u - 1)) = 1.0;
      a(r, static_cast<Eigen::Index>(v - 1)) = -1.0;
      b(r++) = std::max(0.0, d(u, v) + d(u, 0) - d(v, 0));
    }
  }
  a.conservativeResize(r, vars);
  b.conservativeResize(r);

  Eigen::VectorXd offset(vars);
  for (Eigen::Index i = 0; i < vars; ++i) offset(i) = d(i + 1, 0);
  const Eigen::VectorXd objective = c.tail(vars);

  const LpSolution lp = maximize_from_feasible_origin(a, b, objective, tol);

  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  f.tail(vars) = lp.x - offset;
  return {c.dot(f), RealFunction(std::move(f))};
}

}  // namespace qmetric
