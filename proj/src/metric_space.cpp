#include "qmetric/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qmetric/error.hpp"
#include "qmetric/lipschitz_lp.hpp"

namespace qmetric {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, Eigen::MatrixXd dist,
                                     const Tolerances& tol)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (n == 0) throw Error(ErrorKind::input_shape, "metric space needs at least one point");
  if (dist_.rows() != n || dist_.cols() != n) {
    throw Error(ErrorKind::input_shape, "distance matrix is " + std::to_string(dist_.rows()) +
                                            "x" + std::to_string(dist_.cols()) + " for " +
                                            std::to_string(n) + " labels");
  }
  if (!dist_.allFinite()) throw Error(ErrorKind::invalid_metric, "non-finite distance");
  const double slack = tol.algebraic * std::max(1.0, dist_.cwiseAbs().maxCoeff());

  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(dist_(i, i)) > slack) {
      throw Error(ErrorKind::invalid_metric, "nonzero self-distance at " + labels_[i]);
    }
    dist_(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(dist_(i, j) - dist_(j, i)) > slack) {
        throw Error(ErrorKind::invalid_metric,
                    "asymmetric distance between " + labels_[i] + " and " + labels_[j]);
      }
      const double d = 0.5 * (dist_(i, j) + dist_(j, i));
      if (!(d > 0.0)) {
        throw Error(ErrorKind::invalid_metric,
                    "distinct points " + labels_[i] + ", " + labels_[j] + " at distance 0");
      }
      dist_(i, j) = dist_(j, i) = d;
    }
  }
  // O(n^3) triangle check: every downstream bound assumes a genuine metric.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        if (dist_(i, k) > dist_(i, j) + dist_(j, k) + slack) {
          throw Error(ErrorKind::invalid_metric, "triangle inequality fails for (" + labels_[i] +
                                                     ", " + labels_[j] + ", " + labels_[k] + ")");
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::vector<std::string> labels,
                                                 const std::vector<std::vector<double>>& points,
                                                 const Tolerances& tol) {
  if (labels.size() != points.size()) {
    throw Error(ErrorKind::input_shape, "label count differs from point count");
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (points[i].size() != points[0].size()) {
      throw Error(ErrorKind::input_shape, "points have different dimensions");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < points[i].size(); ++c) {
        const double diff = points[i][c] - points[j][c];
        s += diff * diff;
      }
      dist(i, j) = dist(j, i) = std::sqrt(s);
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(dist), tol);
}

RealFunction RealFunction::constant(std::size_t n, double value) {
  return RealFunction(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), value));
}

ProbabilityMeasure::ProbabilityMeasure(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw Error(ErrorKind::invalid_measure, "empty weight vector");
  if (!weights_.allFinite() || (weights_.array() < 0.0).any()) {
    throw Error(ErrorKind::invalid_measure, "weights must be finite and nonnegative");
  }
  if (std::abs(weights_.sum() - 1.0) > 1e-12) {
    throw Error(ErrorKind::invalid_measure, "weights sum to " + std::to_string(weights_.sum()));
  }
}

ProbabilityMeasure ProbabilityMeasure::dirac(std::size_t n, std::size_t at) {
  if (at >= n) throw Error(ErrorKind::input_shape, "Dirac point out of range");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  w(static_cast<Eigen::Index>(at)) = 1.0;
  return ProbabilityMeasure(std::move(w));
}

ProbabilityMeasure ProbabilityMeasure::uniform(std::size_t n) {
  return ProbabilityMeasure(
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

double min_separation(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n < 2) throw Error(ErrorKind::degenerate_space, "separation undefined for a single point");
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) delta = std::min(delta, space(i, j));
  }
  return delta;
}

double diameter(const FiniteMetricSpace& space) { return space.distances().maxCoeff(); }

namespace {

template <class Values>
double lipschitz_impl(const FiniteMetricSpace& space, const Values& f) {
  const std::size_t n = space.size();
  if (static_cast<std::size_t>(f.size()) != n) {
    throw Error(ErrorKind::input_shape, "function has " + std::to_string(f.size()) +
                                            " values on a " + std::to_string(n) + "-point space");
  }
  double lip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      lip = std::max(lip, std::abs(f(a) - f(b)) / space(i, j));
    }
  }
  return lip;
}

}  // namespace

double lipschitz_seminorm(const FiniteMetricSpace& space, const RealFunction& f) {
  return lipschitz_impl(space, f.values());
}

double lipschitz_seminorm(const FiniteMetricSpace& space, const Eigen::VectorXcd& f) {
  return lipschitz_impl(space, f);
}

double mk_distance(const FiniteMetricSpace& space, const ProbabilityMeasure& p,
                   const ProbabilityMeasure& q) {
  if (p.size() != space.size() || q.size() != space.size()) {
    throw Error(ErrorKind::input_shape, "measure size differs from the space size");
  }
  if (space.size() == 1) return 0.0;
  const Eigen::VectorXd c = p.weights() - q.weights();
  return std::max(0.0, maximize_over_lipschitz_ball(space, c).value);
}

double hausdorff_distance(const FiniteMetricSpace& space, const std::vector<std::size_t>& s,
                          const std::vector<std::size_t>& t) {
  if (s.empty() || t.empty()) throw Error(ErrorKind::empty_set, "Hausdorff distance of an empty set");
  for (auto i : s) {
    if (i >= space.size()) throw Error(ErrorKind::input_shape, "index out of range");
  }
  for (auto i : t) {
    if (i >= space.size()) throw Error(ErrorKind::input_shape, "index out of range");
  }
  auto directed = [&](const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    double worst = 0.0;
    for (auto x : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (auto y : to) nearest = std::min(nearest, space(x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(s, t), directed(t, s));
}

namespace {

std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

double parse_number(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) throw Error(ErrorKind::input_shape, "expected a number, got '" + tok + "'");
  return v;
}

std::size_t parse_count(const std::string& tok) {
  const double v = parse_number(tok);
  if (v < 1 || v != std::floor(v)) throw Error(ErrorKind::input_shape, "bad count '" + tok + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

FiniteMetricSpace read_metric_space(std::istream& in, const Tolerances& tol) {
  const auto tokens = tokenize(in);
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw Error(ErrorKind::input_shape, "unexpected end of input");
    return tokens[pos++];
  };
  const std::string kind = next();
  std::vector<std::string> labels;

  if (kind == "metric") {
    const std::size_t n = parse_count(next());
    Eigen::MatrixXd dist(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(next());
      for (std::size_t j = 0; j < n; ++j) {
        dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_number(next());
      }
    }
    if (pos != tokens.size()) throw Error(ErrorKind::input_shape, "trailing tokens after matrix");
    return FiniteMetricSpace(std::move(labels), std::move(dist), tol);
  }
  if (kind == "euclidean") {
    const std::size_t n = parse_count(next());
    const std::size_t dim = parse_count(next());
    std::vector<std::vector<double>> points(n, std::vector<double>(dim));
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(next());
      for (std::size_t c = 0; c < dim; ++c) points[i][c] = parse_number(next());
    }
    if (pos != tokens.size()) throw Error(ErrorKind::input_shape, "trailing tokens after points");
    return FiniteMetricSpace::from_points(std::move(labels), points, tol);
  }
  throw Error(ErrorKind::input_shape, "expected 'metric' or 'euclidean', got '" + kind + "'");
}

FiniteMetricSpace read_metric_space_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open metric space file " + path, "input");
  return read_metric_space(in, tol);
}

void write_metric_space(std::ostream& out, const FiniteMetricSpace& space) {
  out << "metric " << space.size() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << space.labels()[i];
    for (std::size_t j = 0; j < space.size(); ++j) out << ' ' << space(i, j);
    out << '\n';
  }
}

}  // namespace qmetric
