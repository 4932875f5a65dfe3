#include "qmetric/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qmetric/error.hpp"

namespace qmetric {

namespace {

void require_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw Error(ErrorKind::input_shape, "element of dimension " + std::to_string(got) +
                                            " in a bridge over M_" + std::to_string(expected));
  }
}

// Membership in the range of a conditional expectation: P(a) = a up to the
// spectral tolerance (projections built from characters round at ~1e-15).
void require_fixed(const UnitPivotBridge::Projection& p, const MatrixElement& a, const char* side) {
  const double scale = std::max(1.0, a.entries().cwiseAbs().maxCoeff());
  const double moved = (p(a).entries() - a.entries()).cwiseAbs().maxCoeff();
  if (moved > Tolerances{}.spectral * scale) {
    throw Error(ErrorKind::not_in_subalgebra, std::string("element is not in the ") + side + " subalgebra");
  }
}

}  // namespace

UnitPivotBridge::UnitPivotBridge(std::size_t n, Projection left, Projection right, bool diagonal_right)
    : dim_(n), left_(std::move(left)), right_(std::move(right)), diagonal_right_(diagonal_right) {
  if (n == 0) throw Error(ErrorKind::input_shape, "bridge over M_0");
}

UnitPivotBridge UnitPivotBridge::matrix_to_diagonal(std::size_t n) {
  const ExpectationOntoDiagonal e(n);
  return UnitPivotBridge(
      n, [](const MatrixElement& a) { return a; },
      [e](const MatrixElement& a) { return pinch(e, a); }, true);
}

UnitPivotBridge UnitPivotBridge::subalgebras(std::size_t n, Projection left, Projection right) {
  if (!left || !right) throw Error(ErrorKind::config, "subalgebra bridge needs both projections");
  return UnitPivotBridge(n, std::move(left), std::move(right), false);
}

MatrixElement UnitPivotBridge::embed_left(const MatrixElement& a) const {
  require_dim(dim_, a.dim());
  require_fixed(left_, a, "left");
  return a;
}

MatrixElement UnitPivotBridge::embed_right(const MatrixElement& b) const {
  require_dim(dim_, b.dim());
  if (diagonal_right_) {
    // ρ∘ρ⁻¹: round-trips through the diagonal to reject non-diagonal input.
    const DiagonalEmbedding rho(dim_);
    return embed_diagonal(rho, extract_diagonal_complex(rho, b));
  }
  require_fixed(right_, b, "right");
  return b;
}

MatrixElement UnitPivotBridge::embed_right(const RealFunction& f) const {
  if (!diagonal_right_) {
    throw Error(ErrorKind::input_shape, "this bridge's right algebra is not a function algebra");
  }
  require_dim(dim_, f.size());
  return embed_diagonal(DiagonalEmbedding(dim_), f);
}

double bridge_norm(const UnitPivotBridge& bridge, const MatrixElement& a, const MatrixElement& b) {
  return operator_norm(bridge.embed_left(a) - bridge.embed_right(b));
}

double bridge_norm(const UnitPivotBridge& bridge, const MatrixElement& a, const RealFunction& f) {
  return operator_norm(bridge.embed_left(a) - bridge.embed_right(f));
}

ReachCertificate certify_reach_upper(const ApproximationPair& pair) {
  ReachCertificate cert;
  cert.to_matrices = {"C(Y) -> M_n", "f -> rho(f)", 0.0};
  cert.to_functions = {"M_n -> C(Y)", "a -> rho^-1(E(a))", pair.beta()};
  cert.upper_bound = std::max(cert.to_matrices.worst_case, cert.to_functions.worst_case);
  return cert;
}

WitnessCheck check_reach_witnesses(const ApproximationPair& pair,
                                   const std::vector<MatrixElement>& unit_ball,
                                   const std::vector<RealFunction>& lipschitz_ball) {
  WitnessCheck check;
  const auto bridge = UnitPivotBridge::matrix_to_diagonal(pair.dim());
  for (const auto& a : unit_ball) {
    const MatrixElement e = pinch(pair.expectation(), a);
    const RealFunction f = extract_diagonal(pair.rho(), e);
    check.max_bridge_norm = std::max(check.max_bridge_norm, bridge_norm(bridge, a, f));
    check.max_witness_lipschitz = std::max(check.max_witness_lipschitz, lipschitz_seminorm(pair.net(), f));
  }
  for (const auto& f : lipschitz_ball) {
    check.max_embedded_l = std::max(check.max_embedded_l, l_seminorm(pair, embed_diagonal(pair.rho(), f)));
  }
  check.samples = unit_ball.size() + lipschitz_ball.size();
  return check;
}

namespace {

constexpr double kInvGolden = 0.6180339887498949;
constexpr int kLineSearchIterations = 40;

double distance_to_diagonal(const ComplexMatrix& a, const Eigen::VectorXd& f) {
  ComplexMatrix m = a;
  m.diagonal() -= f.cast<Complex>();
  return operator_norm(MatrixElement(0.5 * (m + m.adjoint())));
}

}  // namespace

double inner_infimum_estimate(const ApproximationPair& pair, const MatrixElement& a,
                              std::size_t max_steps, double tolerance) {
  if (!a.is_self_adjoint()) throw Error(ErrorKind::not_self_adjoint, "reach estimates need self-adjoint samples");
  const std::size_t n = pair.dim();
  const auto& d = pair.net();
  Eigen::VectorXd f = a.entries().diagonal().real();
  // The proof's witness is Lipschitz-feasible on the unit ball; shrink it
  // into the ball otherwise so descent starts from a feasible point.
  if (const double lip = lipschitz_seminorm(d, RealFunction(f)); lip > 1.0) f /= lip;
  double best = distance_to_diagonal(a.entries(), f);

  std::size_t steps = 0;
  while (steps < max_steps) {
    const double sweep_start = best;
    for (std::size_t i = 0; i < n && steps < max_steps; ++i, ++steps) {
      const auto ii = static_cast<Eigen::Index>(i);
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double fj = f(static_cast<Eigen::Index>(j));
        lo = std::max(lo, fj - d(i, j));
        hi = std::min(hi, fj + d(i, j));
      }
      lo = std::min(lo, f(ii));
      hi = std::max(hi, f(ii));
      // ‖a − ρ(f)‖ is convex in each coordinate: golden-section search.
      auto value_at = [&](double x) {
        Eigen::VectorXd g = f;
        g(ii) = x;
        return distance_to_diagonal(a.entries(), g);
      };
      double x1 = hi - kInvGolden * (hi - lo);
      double x2 = lo + kInvGolden * (hi - lo);
      double v1 = value_at(x1);
      double v2 = value_at(x2);
      for (int it = 0; it < kLineSearchIterations && hi - lo > tolerance; ++it) {
        if (v1 <= v2) {
          hi = x2;
          x2 = x1;
          v2 = v1;
          x1 = hi - kInvGolden * (hi - lo);
          v1 = value_at(x1);
        } else {
          lo = x1;
          x1 = x2;
          v1 = v2;
          x2 = lo + kInvGolden * (hi - lo);
          v2 = value_at(x2);
        }
      }
      const double x = v1 <= v2 ? x1 : x2;
      const double v = std::min(v1, v2);
      if (v < best) {
        best = v;
        f(ii) = x;
      }
    }
    if (sweep_start - best < tolerance) break;
  }
  return best;
}

ReachEstimate estimate_reach_lower(const ApproximationPair& pair, const ReachEstimateOptions& options) {
  if (options.samples == 0) throw Error(ErrorKind::config, "sample count must be at least 1", "samples");
  if (options.max_steps == 0) throw Error(ErrorKind::config, "max_steps must be at least 1", "max_steps");
  ReachEstimate estimate;
  const auto samples = sample_unit_ball(pair, options.samples, options.seed);
  estimate.samples = samples.size();
  estimate.witness = samples.front();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double v = inner_infimum_estimate(pair, samples[k], options.max_steps, options.tolerance);
    if (v > estimate.value) {
      estimate.value = v;
      estimate.argmax = k;
      estimate.witness = samples[k];
    }
  }
  return estimate;
}

double BetaRule::beta(double delta, std::size_t n) const {
  switch (kind) {
    case Kind::delta_over_n:
      if (n == 0) throw Error(ErrorKind::config, "n must be positive", "n");
      return delta / static_cast<double>(n);
    case Kind::fixed:
      if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::config, "fixed beta must be positive and finite", "beta");
      }
      return value;
    case Kind::fraction_of_delta:
      if (!(value > 0.0) || !(value <= 1.0)) {
        throw Error(ErrorKind::config, "fraction of delta must lie in (0, 1]", "beta_rule");
      }
      return value * delta;
  }
  return 0.0;
}

std::string BetaRule::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::delta_over_n: out << "delta_over_n"; break;
    case Kind::fixed: out << "fixed(" << value << ")"; break;
    case Kind::fraction_of_delta: out << "fraction_of_delta(" << value << ")"; break;
  }
  return out.str();
}

Approximation approximate_compact_space(const SpaceGenerator& generator, std::size_t n,
                                        const BetaRule& rule, Regime regime) {
  Net net = epsilon_net(generator, n);
  if (net.space.size() < 2) {
    throw Error(ErrorKind::degenerate_space, "an approximation needs a net with at least two points", "n");
  }
  const double delta = min_separation(net.space);
  const double beta = rule.beta(delta, n);
  ApproximationPair pair(net.space, beta, regime);
  const double haus = net.haus_bound;
  return Approximation{std::move(net), std::move(pair), haus, beta, haus + beta};
}

ConvergenceReport convergence_experiment(const SpaceGenerator& generator,
                                         const std::vector<std::size_t>& n_list,
                                         const BetaRule& rule) {
  if (n_list.empty()) throw Error(ErrorKind::config, "n_list is empty", "n_list");
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] <= n_list[k - 1]) {
      throw Error(ErrorKind::config, "n_list must be strictly increasing", "n_list");
    }
  }
  ConvergenceReport report;
  for (const auto n : n_list) {
    const auto approx = approximate_compact_space(generator, n, rule);
    report.rows.push_back({n, approx.pair.delta(), approx.beta, approx.haus, approx.certified_bound});
  }
  report.strictly_decreasing = true;
  report.non_increasing = true;
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    const double prev = report.rows[k - 1].certified_bound;
    const double cur = report.rows[k].certified_bound;
    if (!(cur < prev)) report.strictly_decreasing = false;
    if (!(cur <= prev)) report.non_increasing = false;
  }
  return report;
}

TriangleAssembly triangle_assembly(const SpaceGenerator& generator, std::size_t n,
                                   std::size_t n_second, const BetaRule& rule) {
  const auto approx = approximate_compact_space(generator, n, rule);
  const Net second = epsilon_net(generator, n_second);
  TriangleAssembly t;
  t.net_leg = net_hausdorff(generator, approx.net, second);
  t.direct = approx.certified_bound;
  t.via_second_net = approx.beta + t.net_leg + second.haus_bound;
  t.holds = t.direct <= t.via_second_net + 1e-12 * std::max(1.0, t.via_second_net);
  return t;
}

}  // namespace qmetric
