#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmetric/metric_space.hpp"
#include "qmetric/random.hpp"

namespace qmetric::testing {

inline std::vector<std::string> labels(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// n points uniform in [0, 1]^dim with Euclidean distances.
inline FiniteMetricSpace random_cloud(std::size_t n, std::size_t dim, Rng& rng) {
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts) {
    for (auto& x : p) x = rng.uniform();
  }
  return FiniteMetricSpace::from_points(labels(n), pts);
}

/// Equispaced n-point circle net with arc distances written out directly.
inline FiniteMetricSpace circle_points(std::size_t n, double circumference) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double t = std::abs(static_cast<double>(i) - static_cast<double>(j)) * circumference /
                       static_cast<double>(n);
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::min(t, circumference - t);
    }
  }
  return FiniteMetricSpace(labels(n), d);
}

inline Eigen::VectorXd random_weights(std::size_t n, Rng& rng) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.uniform() + 1e-3;
  return w / w.sum();
}

inline RealFunction random_function(std::size_t n, Rng& rng) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
  return RealFunction(v);
}

}  // namespace qmetric::testing
