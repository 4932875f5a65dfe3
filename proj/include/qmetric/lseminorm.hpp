#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmetric/matrix_algebra.hpp"
#include "qmetric/metric_space.hpp"
#include "qmetric/tolerances.hpp"

namespace qmetric {

/// Corollary mode requires β ≤ δ, which pins the Leibniz constant at 2.
/// Theorem mode accepts any β > 0 with D = max{2, 1 + β/δ}.
enum class Regime { corollary, theorem };

/// (M_n, ρ, E, β, Y): full matrix algebra over the finite metric space Y with
/// its diagonal copy of C(Y), the pinching expectation and the tolerance β.
class ApproximationPair {
 public:
  /// Throws Error{config, "beta"} for β ≤ 0 or non-finite β,
  /// Error{degenerate_space} for |Y| < 2, Error{corollary_mode_violation}
  /// when β/δ > 1 in corollary mode.
  ApproximationPair(FiniteMetricSpace net, double beta, Regime regime = Regime::corollary);

  const FiniteMetricSpace& net() const noexcept { return net_; }
  const DiagonalEmbedding& rho() const noexcept { return rho_; }
  const ExpectationOntoDiagonal& expectation() const noexcept { return expectation_; }
  std::size_t dim() const noexcept { return net_.size(); }
  double beta() const noexcept { return beta_; }
  double delta() const noexcept { return delta_; }
  /// D = max{2, 1 + β/δ}.
  double leibniz_constant() const noexcept { return leibniz_constant_; }
  Regime regime() const noexcept { return regime_; }

 private:
  FiniteMetricSpace net_;
  DiagonalEmbedding rho_;
  ExpectationOntoDiagonal expectation_;
  double beta_;
  double delta_;
  double leibniz_constant_;
  Regime regime_;
};

struct LOptions {
  /// Off by default: L lives on self-adjoint elements. When enabled, a
  /// non-self-adjoint a is evaluated with the complex Lipschitz seminorm of
  /// the diagonal and LTerms::extended is set.
  bool allow_non_self_adjoint = false;
};

struct LTerms {
  double off_diagonal = 0.0;  ///< ‖a - E(a)‖ / β
  double lipschitz = 0.0;     ///< Lip_d(ρ⁻¹(E(a)))
  bool extended = false;
  double value() const { return off_diagonal > lipschitz ? off_diagonal : lipschitz; }
};

/// L(a) = max{ ‖a - E(a)‖/β, Lip_d(ρ⁻¹(E(a))) }.
/// Error{not_self_adjoint} for non self-adjoint input unless allowed.
LTerms l_seminorm_terms(const ApproximationPair& pair, const MatrixElement& a,
                        const LOptions& options = {});
double l_seminorm(const ApproximationPair& pair, const MatrixElement& a,
                  const LOptions& options = {});

/// D·(‖a‖L(b) + ‖b‖L(a)) − L(a∘b), and the same with the Lie product.
/// The quasi-Leibniz inequality holds iff both are ≥ 0.
struct LeibnizResidual {
  double jordan = 0.0;
  double lie = 0.0;
};
LeibnizResidual quasi_leibniz_residual(const ApproximationPair& pair, const MatrixElement& a,
                                       const MatrixElement& b);

/// True iff L(a) vanishes (spectral tolerance, scaled by ‖a‖), in which case
/// a is also checked to sit within (β + diam)·tol of τ(a)·1.
bool kernel_check(const ApproximationPair& pair, const MatrixElement& a, const Tolerances& tol = {});

/// Dimension of {a ∈ sa(M_n) : L(a) = 0}, as the null space of the stacked
/// linear conditions "off-diagonal part = 0" and "f_i − f_j = 0".
std::size_t kernel_dimension(const ApproximationPair& pair, const Tolerances& tol = {});

struct RadiusBound {
  /// max{‖f‖∞ : Lip_d(f) ≤ 1, τ_Y(f) = 0}, by LP.
  double lipschitz_radius = 0.0;
  /// β + lipschitz_radius: every self-adjoint a with L(a) ≤ 1, τ(a) = 0 has
  /// ‖a‖ at most this.
  double bound = 0.0;
};
RadiusBound unit_ball_radius_bound(const ApproximationPair& pair);

/// ρ(f̂) + ĉ where f̂ = f·f_scale/Lip(f) and ĉ = c·c_scale·β/‖c‖ (each
/// rescale skipped when the denominator is 0). With scales in [0, 1] and c
/// self-adjoint with zero diagonal, the result has L ≤ 1 and E(result) = ρ(f̂).
/// Error{input_shape} if c has a nonzero diagonal or is not self-adjoint.
MatrixElement unit_ball_element(const ApproximationPair& pair, const RealFunction& f,
                                const MatrixElement& c, double f_scale, double c_scale);

/// Deterministic samples of {L ≤ 1}. Every fourth sample is extreme
/// (both scales 1); the rest draw scales uniformly from [0, 1].
std::vector<MatrixElement> sample_unit_ball(const ApproximationPair& pair, std::size_t count,
                                            std::uint64_t seed);

}  // namespace qmetric
