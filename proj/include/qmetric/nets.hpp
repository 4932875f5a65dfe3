#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qmetric/metric_space.hpp"

namespace qmetric {

/// Circle of the given circumference with the arc-length metric.
struct Circle {
  double circumference = 2.0 * std::numbers::pi;
};

/// Segment [0, length] with |x - y|.
struct Interval {
  double length = 1.0;
};

/// T^dim, each factor a circle of the given circumference, max-of-arcs metric.
struct FlatTorus {
  std::size_t dim = 2;
  double circumference = 2.0 * std::numbers::pi;
};

/// Finite Euclidean point list. Without `asserted_haus` the list *is* the
/// space X and a net of size n is its first n points (exact Hausdorff value).
/// With `asserted_haus` the list is a user net of some compact space the
/// library never sees; n must equal the number of points and the asserted
/// value is reported as the Hausdorff bound.
struct PointCloud {
  std::vector<std::vector<double>> points;
  std::optional<double> asserted_haus;
};

using SpaceGenerator = std::variant<Circle, Interval, FlatTorus, PointCloud>;

struct Net {
  FiniteMetricSpace space;
  /// Exact or certified upper value of Haus(X, X_n).
  double haus_bound = 0.0;
  /// Ambient coordinates of each net point (angles / positions).
  std::vector<std::vector<double>> coordinates;
};

/// Equispaced n-point net. Circle: angles k·C/n. Interval: midpoints
/// (k + 1/2)·len/n. Torus: an m^dim grid with n = m^dim (Error{config}
/// otherwise).
Net epsilon_net(const SpaceGenerator& generator, std::size_t n);

/// Ground metric between two ambient coordinate vectors.
double ambient_distance(const SpaceGenerator& generator, std::span<const double> x,
                        std::span<const double> y);

/// Hausdorff distance between two nets of the same generator, measured in
/// the ambient metric.
double net_hausdorff(const SpaceGenerator& generator, const Net& a, const Net& b);

/// True for generators that describe a finite space (PointCloud without an
/// asserted bound); `finite_size` is then the number of points.
std::optional<std::size_t> finite_size(const SpaceGenerator& generator);

std::string describe(const SpaceGenerator& generator);

/// {"kind": "circle"|"interval"|"torus"|"points", ...}. Unknown kinds and bad
/// parameters throw Error{config}.
SpaceGenerator generator_from_json(const nlohmann::json& j);
nlohmann::json generator_to_json(const SpaceGenerator& generator);

}  // namespace qmetric
