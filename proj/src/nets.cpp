#include "qmetric/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmetric/error.hpp"

namespace qmetric {

namespace {

std::vector<std::string> point_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  return labels;
}

double arc(double x, double y, double circumference) {
  const double t = std::fmod(std::abs(x - y), circumference);
  return std::min(t, circumference - t);
}

// Index-based cyclic distance keeps equispaced nets exactly symmetric and
// exactly invariant under rotations.
double cyclic_steps(std::size_t a, std::size_t b, std::size_t n) {
  const std::size_t diff = a > b ? a - b : b - a;
  return static_cast<double>(std::min(diff, n - diff));
}

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::config, std::string(field) + " must be positive and finite", field);
  }
}

Net circle_net(const Circle& c, std::size_t n) {
  require_positive(c.circumference, "circumference");
  const double step = c.circumference / static_cast<double>(n);
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<std::vector<double>> coords;
  for (std::size_t i = 0; i < n; ++i) {
    coords.push_back({static_cast<double>(i) * step});
    for (std::size_t j = 0; j < n; ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cyclic_steps(i, j, n) * step;
    }
  }
  return {FiniteMetricSpace(point_labels(n), std::move(d)), 0.5 * step, std::move(coords)};
}

Net interval_net(const Interval& iv, std::size_t n) {
  require_positive(iv.length, "length");
  const double step = iv.length / static_cast<double>(n);
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<std::vector<double>> coords;
  for (std::size_t i = 0; i < n; ++i) {
    coords.push_back({(static_cast<double>(i) + 0.5) * step});
    for (std::size_t j = 0; j < n; ++j) {
      const double steps = i > j ? static_cast<double>(i - j) : static_cast<double>(j - i);
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = steps * step;
    }
  }
  return {FiniteMetricSpace(point_labels(n), std::move(d)), 0.5 * step, std::move(coords)};
}

Net torus_net(const FlatTorus& t, std::size_t n) {
  require_positive(t.circumference, "circumference");
  if (t.dim == 0) throw Error(ErrorKind::config, "torus dimension must be positive", "dim");
  auto m = static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(t.dim))));
  std::size_t total = 1;
  for (std::size_t k = 0; k < t.dim; ++k) total *= m;
  if (m == 0 || total != n) {
    throw Error(ErrorKind::config,
                "torus nets need n = m^dim points; got n = " + std::to_string(n), "n");
  }
  const double step = t.circumference / static_cast<double>(m);
  std::vector<std::vector<std::size_t>> grid(n, std::vector<std::size_t>(t.dim));
  std::vector<std::vector<double>> coords(n, std::vector<double>(t.dim));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (std::size_t k = 0; k < t.dim; ++k) {
      grid[i][k] = rest % m;
      coords[i][k] = static_cast<double>(grid[i][k]) * step;
      rest /= m;
    }
  }
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double worst = 0.0;
      for (std::size_t k = 0; k < t.dim; ++k) {
        worst = std::max(worst, cyclic_steps(grid[i][k], grid[j][k], m));
      }
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = worst * step;
    }
  }
  return {FiniteMetricSpace(point_labels(n), std::move(d)), 0.5 * step, std::move(coords)};
}

Net cloud_net(const PointCloud& cloud, std::size_t n) {
  if (cloud.points.empty()) throw Error(ErrorKind::config, "point list is empty", "points");
  if (cloud.asserted_haus) {
    if (!(*cloud.asserted_haus >= 0.0) || !std::isfinite(*cloud.asserted_haus)) {
      throw Error(ErrorKind::config, "asserted Hausdorff bound must be >= 0", "haus_bound");
    }
    if (n != cloud.points.size()) {
      throw Error(ErrorKind::config, "a user net is used whole: n must equal the point count", "n");
    }
    return {FiniteMetricSpace::from_points(point_labels(n), cloud.points), *cloud.asserted_haus,
            cloud.points};
  }
  if (n > cloud.points.size()) {
    throw Error(ErrorKind::config, "net larger than the point list", "n");
  }
  std::vector<std::vector<double>> coords(cloud.points.begin(),
                                          cloud.points.begin() + static_cast<std::ptrdiff_t>(n));
  Net net{FiniteMetricSpace::from_points(point_labels(n), coords), 0.0, coords};
  const SpaceGenerator gen = cloud;
  for (const auto& x : cloud.points) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& y : coords) nearest = std::min(nearest, ambient_distance(gen, x, y));
    net.haus_bound = std::max(net.haus_bound, nearest);
  }
  return net;
}

}  // namespace

Net epsilon_net(const SpaceGenerator& generator, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::config, "net size must be at least 1", "n");
  return std::visit(
      [n](const auto& g) -> Net {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Circle>) return circle_net(g, n);
        if constexpr (std::is_same_v<G, Interval>) return interval_net(g, n);
        if constexpr (std::is_same_v<G, FlatTorus>) return torus_net(g, n);
        if constexpr (std::is_same_v<G, PointCloud>) return cloud_net(g, n);
      },
      generator);
}

double ambient_distance(const SpaceGenerator& generator, std::span<const double> x,
                        std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::input_shape, "coordinate size mismatch");
  return std::visit(
      [&](const auto& g) -> double {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Circle>) {
          return arc(x[0], y[0], g.circumference);
        } else if constexpr (std::is_same_v<G, Interval>) {
          return std::abs(x[0] - y[0]);
        } else if constexpr (std::is_same_v<G, FlatTorus>) {
          double worst = 0.0;
          for (std::size_t k = 0; k < x.size(); ++k) {
            worst = std::max(worst, arc(x[k], y[k], g.circumference));
          }
          return worst;
        } else {
          double s = 0.0;
          for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
          return std::sqrt(s);
        }
      },
      generator);
}

double net_hausdorff(const SpaceGenerator& generator, const Net& a, const Net& b) {
  auto directed = [&](const Net& from, const Net& to) {
    double worst = 0.0;
    for (const auto& x : from.coordinates) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& y : to.coordinates) nearest = std::min(nearest, ambient_distance(generator, x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

std::optional<std::size_t> finite_size(const SpaceGenerator& generator) {
  if (const auto* cloud = std::get_if<PointCloud>(&generator)) {
    if (!cloud->asserted_haus) return cloud->points.size();
  }
  return std::nullopt;
}

std::string describe(const SpaceGenerator& generator) {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Circle>) {
          out << "circle(" << g.circumference << ")";
        } else if constexpr (std::is_same_v<G, Interval>) {
          out << "interval(" << g.length << ")";
        } else if constexpr (std::is_same_v<G, FlatTorus>) {
          out << "torus(dim=" << g.dim << ", " << g.circumference << ")";
        } else {
          out << "points(" << g.points.size() << (g.asserted_haus ? ", user net" : "") << ")";
        }
      },
      generator);
  return out.str();
}

namespace {

double number_field(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw Error(ErrorKind::config, std::string(key) + " must be a number", key);
  return j.at(key).get<double>();
}

}  // namespace

SpaceGenerator generator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorKind::config, "generator needs a string 'kind'", "generator");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "circle") {
    Circle c{number_field(j, "circumference", 2.0 * std::numbers::pi)};
    require_positive(c.circumference, "circumference");
    return c;
  }
  if (kind == "interval") {
    Interval iv{number_field(j, "length", 1.0)};
    require_positive(iv.length, "length");
    return iv;
  }
  if (kind == "torus") {
    const double dim = number_field(j, "dim", 2.0);
    if (dim < 1 || dim != std::floor(dim)) throw Error(ErrorKind::config, "dim must be a positive integer", "dim");
    FlatTorus t{static_cast<std::size_t>(dim), number_field(j, "circumference", 2.0 * std::numbers::pi)};
    require_positive(t.circumference, "circumference");
    return t;
  }
  if (kind == "points") {
    PointCloud cloud;
    if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty()) {
      throw Error(ErrorKind::config, "points generator needs a nonempty 'points' array", "points");
    }
    try {
      cloud.points = j.at("points").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorKind::config, "points must be arrays of numbers", "points");
    }
    for (const auto& p : cloud.points) {
      if (p.empty() || p.size() != cloud.points.front().size()) {
        throw Error(ErrorKind::config, "points must share one nonzero dimension", "points");
      }
    }
    if (j.contains("haus_bound")) cloud.asserted_haus = number_field(j, "haus_bound", 0.0);
    return cloud;
  }
  throw Error(ErrorKind::config, "unknown generator '" + kind + "'", "generator");
}

nlohmann::json generator_to_json(const SpaceGenerator& generator) {
  return std::visit(
      [](const auto& g) -> nlohmann::json {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Circle>) {
          return {{"kind", "circle"}, {"circumference", g.circumference}};
        } else if constexpr (std::is_same_v<G, Interval>) {
          return {{"kind", "interval"}, {"length", g.length}};
        } else if constexpr (std::is_same_v<G, FlatTorus>) {
          return {{"kind", "torus"}, {"dim", g.dim}, {"circumference", g.circumference}};
        } else {
          nlohmann::json j = {{"kind", "points"}, {"points", g.points}};
          if (g.asserted_haus) j["haus_bound"] = *g.asserted_haus;
          return j;
        }
      },
      generator);
}

}  // namespace qmetric
