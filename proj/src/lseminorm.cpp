#include "qmetric/lseminorm.hpp"

#include <algorithm>
#include <cmath>

#include "qmetric/error.hpp"
#include "qmetric/lipschitz_lp.hpp"

namespace qmetric {

namespace {

// Corollary mode tolerates β/δ exceeding 1 by rounding only.
constexpr double kRatioSlack = 1e-12;

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

ApproximationPair::ApproximationPair(FiniteMetricSpace net, double beta, Regime regime)
    : net_(std::move(net)),
      rho_(net_.size()),
      expectation_(net_.size()),
      beta_(beta),
      delta_(0.0),
      leibniz_constant_(2.0),
      regime_(regime) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::config, "beta must be positive and finite", "beta");
  }
  if (net_.size() < 2) {
    throw Error(ErrorKind::degenerate_space, "the net needs at least two points");
  }
  delta_ = min_separation(net_);
  const double ratio = beta_ / delta_;
  if (regime_ == Regime::corollary && ratio > 1.0 + kRatioSlack) {
    throw Error(ErrorKind::corollary_mode_violation,
                "beta/delta = " + std::to_string(ratio) + " > 1 in corollary mode", "beta");
  }
  leibniz_constant_ = std::max(2.0, 1.0 + ratio);
}

LTerms l_seminorm_terms(const ApproximationPair& pair, const MatrixElement& a,
                        const LOptions& options) {
  if (a.dim() != pair.dim()) {
    throw Error(ErrorKind::input_shape, "element is " + std::to_string(a.dim()) + "x" +
                                            std::to_string(a.dim()) + ", pair has dimension " +
                                            std::to_string(pair.dim()));
  }
  LTerms terms;
  const MatrixElement e = pinch(pair.expectation(), a);
  terms.off_diagonal = operator_norm(a - e) / pair.beta();
  if (a.is_self_adjoint()) {
    terms.lipschitz = lipschitz_seminorm(pair.net(), RealFunction(e.entries().diagonal().real()));
  } else {
    if (!options.allow_non_self_adjoint) {
      throw Error(ErrorKind::not_self_adjoint, "L is defined on self-adjoint elements");
    }
    terms.lipschitz = lipschitz_seminorm(pair.net(), Eigen::VectorXcd(e.entries().diagonal()));
    terms.extended = true;
  }
  return terms;
}

double l_seminorm(const ApproximationPair& pair, const MatrixElement& a, const LOptions& options) {
  return l_seminorm_terms(pair, a, options).value();
}

LeibnizResidual quasi_leibniz_residual(const ApproximationPair& pair, const MatrixElement& a,
                                       const MatrixElement& b) {
  const double la = l_seminorm(pair, a);
  const double lb = l_seminorm(pair, b);
  const double bound = pair.leibniz_constant() * (operator_norm(a) * lb + operator_norm(b) * la);
  return {bound - l_seminorm(pair, jordan_product(a, b)), bound - l_seminorm(pair, lie_product(a, b))};
}

bool kernel_check(const ApproximationPair& pair, const MatrixElement& a, const Tolerances& tol) {
  const double scale = std::max(1.0, operator_norm(a));
  if (l_seminorm(pair, a) > tol.spectral * scale) return false;
  // L(a) ≤ ε forces ‖a − E(a)‖ ≤ βε and |f_i − f_j| ≤ diam·ε on the diagonal.
  const MatrixElement centered = a - MatrixElement::scalar(a.dim(), trace_state(a));
  const double allowed = (pair.beta() + diameter(pair.net())) * tol.spectral * scale;
  return operator_norm(centered) <= allowed + tol.algebraic * scale;
}

std::size_t kernel_dimension(const ApproximationPair& pair, const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(pair.dim());
  const Eigen::Index off_coords = n * (n - 1);
  const Eigen::Index pairs = n * (n - 1) / 2;
  // Columns follow self_adjoint_coordinates: n diagonal entries, then the
  // (re, im) coordinates of each i < j.
  Eigen::MatrixXd constraints = Eigen::MatrixXd::Zero(off_coords + pairs, n * n);
  for (Eigen::Index k = 0; k < off_coords; ++k) constraints(k, n + k) = 1.0;
  Eigen::Index row = off_coords;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double inv_d = 1.0 / pair.net()(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      constraints(row, i) = inv_d;
      constraints(row, j) = -inv_d;
      ++row;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(constraints);
  lu.setThreshold(tol.spectral);
  return static_cast<std::size_t>(n * n - lu.rank());
}

RadiusBound unit_ball_radius_bound(const ApproximationPair& pair) {
  const auto n = static_cast<Eigen::Index>(pair.dim());
  const Eigen::VectorXd mean = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double radius = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd c = -mean;
    c(i) += 1.0;
    // f_i − τ_Y(f) is invariant under adding constants, so the gauge-fixed
    // LP over the Lipschitz ball sees the mean-zero problem exactly.
    for (const double sign : {1.0, -1.0}) {
      radius = std::max(radius, maximize_over_lipschitz_ball(pair.net(), sign * c).value);
    }
  }
  return {radius, pair.beta() + radius};
}

MatrixElement unit_ball_element(const ApproximationPair& pair, const RealFunction& f,
                                const MatrixElement& c, double f_scale, double c_scale) {
  if (f.size() != pair.dim() || c.dim() != pair.dim()) {
    throw Error(ErrorKind::input_shape, "unit-ball ingredients have the wrong dimension");
  }
  if (!c.is_self_adjoint()) throw Error(ErrorKind::input_shape, "off-diagonal part must be self-adjoint");
  const double slack = 1e-12 * std::max(1.0, max_abs(c.entries()));
  if (c.entries().diagonal().cwiseAbs().maxCoeff() > slack) {
    throw Error(ErrorKind::input_shape, "off-diagonal part has a nonzero diagonal");
  }
  Eigen::VectorXd values = f.values();
  if (const double lip = lipschitz_seminorm(pair.net(), f); lip > 0.0) values *= f_scale / lip;
  ComplexMatrix off = c.entries();
  off.diagonal().setZero();
  if (const double norm = operator_norm(c); norm > 0.0) off *= c_scale * pair.beta() / norm;
  off += values.cast<Complex>().asDiagonal();
  return MatrixElement(0.5 * (off + off.adjoint()));
}

std::vector<MatrixElement> sample_unit_ball(const ApproximationPair& pair, std::size_t count,
                                            std::uint64_t seed) {
  if (count == 0) throw Error(ErrorKind::config, "sample count must be at least 1", "samples");
  std::vector<MatrixElement> out;
  out.reserve(count);
  const std::size_t n = pair.dim();
  for (std::size_t k = 0; k < count; ++k) {
    // One derived stream per sample: sample k does not depend on count.
    Rng rng(derive_seed(seed, k));
    Eigen::VectorXd f(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = rng.normal();
    const MatrixElement c = random_zero_diagonal_self_adjoint(n, rng);
    const bool extreme = k % 4 == 0;
    const double f_scale = extreme ? 1.0 : rng.uniform();
    const double c_scale = extreme ? 1.0 : rng.uniform();
    out.push_back(unit_ball_element(pair, RealFunction(std::move(f)), c, f_scale, c_scale));
  }
  return out;
}

}  // namespace qmetric
