#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmetric/lseminorm.hpp"
#include "qmetric/matrix_algebra.hpp"
#include "qmetric/nets.hpp"

namespace qmetric {

/// Bridge (D, π_left, π_right, 1_D) whose ambient algebra D is M_n.
///
/// Only unit pivots are supported, so the height of every bridge is zero and
/// its length equals its reach. The left algebra is always embedded by the
/// identity or a canonical injection; the right one either by ρ (diagonal
/// copy of C(Y)) or a canonical injection.
class UnitPivotBridge {
 public:
  /// Conditional expectation onto a subalgebra; used to decide membership.
  using Projection = std::function<MatrixElement(const MatrixElement&)>;

  /// (M_n, id, ρ, 1).
  static UnitPivotBridge matrix_to_diagonal(std::size_t n);
  /// (M_n, ι_left, ι_right, 1) for two unital subalgebras given by their
  /// expectations.
  static UnitPivotBridge subalgebras(std::size_t n, Projection left, Projection right);

  static constexpr double height() { return 0.0; }

  std::size_t ambient_dim() const noexcept { return dim_; }
  MatrixElement pivot() const { return MatrixElement::identity(dim_); }

  /// Error{input_shape} on dimension mismatch, Error{not_in_subalgebra} if
  /// the element is not in the embedded algebra.
  MatrixElement embed_left(const MatrixElement& a) const;
  MatrixElement embed_right(const MatrixElement& b) const;
  MatrixElement embed_right(const RealFunction& f) const;

 private:
  UnitPivotBridge(std::size_t n, Projection left, Projection right, bool diagonal_right);

  std::size_t dim_;
  Projection left_;
  Projection right_;
  bool diagonal_right_;
};

/// ‖π_left(a)·x − x·π_right(b)‖ with x the pivot (here: the unit).
double bridge_norm(const UnitPivotBridge& bridge, const MatrixElement& a, const MatrixElement& b);
double bridge_norm(const UnitPivotBridge& bridge, const MatrixElement& a, const RealFunction& f);

struct DirectionBound {
  std::string direction;
  std::string witness;
  double worst_case = 0.0;
};

/// Certified reach upper bound for (M_n, id, ρ, 1) between (M_n, L) and
/// (C(Y), Lip): the witness maps f ↦ ρ(f) and a ↦ ρ⁻¹(E(a)) give worst cases
/// 0 and β, so reach = length ≤ β.
struct ReachCertificate {
  double upper_bound = 0.0;
  DirectionBound to_matrices;
  DirectionBound to_functions;
};
ReachCertificate certify_reach_upper(const ApproximationPair& pair);

/// Numerical re-check of the certificate witnesses on given samples.
struct WitnessCheck {
  double max_bridge_norm = 0.0;       ///< max ‖a − ρ(ρ⁻¹(E(a)))‖ over unit-ball a
  double max_witness_lipschitz = 0.0; ///< max Lip(ρ⁻¹(E(a)))
  double max_embedded_l = 0.0;        ///< max L(ρ(f)) over Lip(f) ≤ 1
  std::size_t samples = 0;
};
WitnessCheck check_reach_witnesses(const ApproximationPair& pair,
                                   const std::vector<MatrixElement>& unit_ball,
                                   const std::vector<RealFunction>& lipschitz_ball);

struct ReachEstimateOptions {
  std::size_t samples = 64;
  std::uint64_t seed = 0;
  std::size_t max_steps = 200;
  double tolerance = 1e-9;
};

/// Empirical lower estimate of this bridge's reach: max over sampled unit-ball
/// a of an upper estimate of inf{‖a − ρ(f)‖ : Lip(f) ≤ 1}. Sampled, not
/// certified.
struct ReachEstimate {
  static constexpr const char* label = "sampled, not certified";
  double value = 0.0;
  std::size_t samples = 0;
  std::size_t argmax = 0;
  MatrixElement witness = MatrixElement::zero(1);
};
ReachEstimate estimate_reach_lower(const ApproximationPair& pair,
                                   const ReachEstimateOptions& options = {});

/// inf over Lip(f) ≤ 1 of ‖a − ρ(f)‖, started at f = ρ⁻¹(E(a)) and improved
/// by coordinate descent (golden-section line search inside each coordinate's
/// Lipschitz-feasible interval). Returns the best value found.
double inner_infimum_estimate(const ApproximationPair& pair, const MatrixElement& a,
                              std::size_t max_steps = 200, double tolerance = 1e-9);

/// β_Y as a function of the net's separation δ and size n. Error{config} for
/// a nonpositive fixed value or a fraction outside (0, 1].
struct BetaRule {
  enum class Kind { delta_over_n, fixed, fraction_of_delta };
  Kind kind = Kind::delta_over_n;
  double value = 0.0;  ///< β for `fixed`, r ∈ (0, 1] for `fraction_of_delta`

  double beta(double delta, std::size_t n) const;
  std::string describe() const;
};

struct Approximation {
  Net net;
  ApproximationPair pair;
  double haus = 0.0;
  double beta = 0.0;
  /// Haus(X, Y) + β_Y.
  double certified_bound = 0.0;
};

/// Net → pair over M_{#Y} → Haus + β certificate. Corollary mode throws
/// Error{corollary_mode_violation} when β_Y > δ.
Approximation approximate_compact_space(const SpaceGenerator& generator, std::size_t n,
                                        const BetaRule& rule,
                                        Regime regime = Regime::corollary);

struct ConvergenceRow {
  std::size_t n = 0;
  double delta = 0.0;
  double beta = 0.0;
  double haus = 0.0;
  double certified_bound = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool strictly_decreasing = false;
  bool non_increasing = false;
};

/// Error{config} unless n_list is nonempty and strictly increasing.
ConvergenceReport convergence_experiment(const SpaceGenerator& generator,
                                         const std::vector<std::size_t>& n_list,
                                         const BetaRule& rule);

/// Bookkeeping for going through a second net Y':
///   direct = Haus(X, Y) + β_Y
///   via    = β_Y + Haus(Y, Y') + Haus(X, Y')
/// The second is the triangle-inequality assembly of the same three legs.
struct TriangleAssembly {
  double direct = 0.0;
  double via_second_net = 0.0;
  double net_leg = 0.0;
  bool holds = false;
};
TriangleAssembly triangle_assembly(const SpaceGenerator& generator, std::size_t n,
                                   std::size_t n_second, const BetaRule& rule);

}  // namespace qmetric
