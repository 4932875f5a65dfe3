#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmetric/tolerances.hpp"

namespace qmetric {

/// Labeled finite metric space. The metric axioms (zero diagonal, symmetry,
/// positivity off the diagonal, triangle inequality) are validated at
/// construction; instances are immutable afterwards.
class FiniteMetricSpace {
 public:
  /// Throws Error{invalid_metric} when an axiom fails, Error{input_shape} on
  /// a label/matrix size mismatch. Asymmetry within the algebraic tolerance is
  /// symmetrized away.
  FiniteMetricSpace(std::vector<std::string> labels, Eigen::MatrixXd dist,
                    const Tolerances& tol = {});

  /// Euclidean distances between coordinate rows (all rows the same length).
  static FiniteMetricSpace from_points(std::vector<std::string> labels,
                                       const std::vector<std::vector<double>>& points,
                                       const Tolerances& tol = {});

  std::size_t size() const noexcept { return labels_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const Eigen::MatrixXd& distances() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd dist_;
};

/// Real-valued function on the points of a finite metric space.
class RealFunction {
 public:
  RealFunction() = default;
  explicit RealFunction(Eigen::VectorXd values) : values_(std::move(values)) {}
  static RealFunction constant(std::size_t n, double value);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }
  double& operator[](std::size_t i) { return values_(static_cast<Eigen::Index>(i)); }
  const Eigen::VectorXd& values() const noexcept { return values_; }

 private:
  Eigen::VectorXd values_;
};

/// Finitely supported probability measure (a state of C(X)).
class ProbabilityMeasure {
 public:
  /// Throws Error{invalid_measure} unless weights are nonnegative and sum to 1
  /// within 1e-12.
  explicit ProbabilityMeasure(Eigen::VectorXd weights);
  static ProbabilityMeasure dirac(std::size_t n, std::size_t at);
  static ProbabilityMeasure uniform(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(weights_.size()); }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

 private:
  Eigen::VectorXd weights_;
};

/// δ = smallest off-diagonal distance. Error{degenerate_space} below 2 points.
double min_separation(const FiniteMetricSpace& space);

/// Largest pairwise distance, 0 for a single point.
double diameter(const FiniteMetricSpace& space);

/// max |f(x) - f(y)| / d(x, y) over all ordered pairs; 0 on a single point.
double lipschitz_seminorm(const FiniteMetricSpace& space, const RealFunction& f);

/// Same, for complex values (used by the extended L-seminorm on non
/// self-adjoint elements).
double lipschitz_seminorm(const FiniteMetricSpace& space, const Eigen::VectorXcd& f);

/// Monge-Kantorovich (Wasserstein-1) distance, computed as the dual LP
/// sup { Σ f_i (p_i - q_i) : |f_i - f_j| <= d_ij } with f_0 pinned to 0.
double mk_distance(const FiniteMetricSpace& space, const ProbabilityMeasure& p,
                   const ProbabilityMeasure& q);

/// Hausdorff distance between two nonempty index subsets.
double hausdorff_distance(const FiniteMetricSpace& space, const std::vector<std::size_t>& s,
                          const std::vector<std::size_t>& t);

/// Text format, '#' starts a comment:
///
///     metric <n>
///     <label> d_1 ... d_n        (n rows)
///
/// or
///
///     euclidean <n> <dim>
///     <label> x_1 ... x_dim      (n rows)
FiniteMetricSpace read_metric_space(std::istream& in, const Tolerances& tol = {});
FiniteMetricSpace read_metric_space_file(const std::string& path, const Tolerances& tol = {});
void write_metric_space(std::ostream& out, const FiniteMetricSpace& space);

}  // namespace qmetric
