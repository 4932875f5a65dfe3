#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmetric/fuzzy_torus.hpp"
#include "qmetric/torus_subgroup.hpp"

namespace qmetric {

/// Samples of {a self-adjoint : L(a) = 1, τ(a) = 0} for the action seminorm.
///
/// The first `structured` elements are the coefficient lines W + W* and
/// i(W − W*) for every monomial W = U^m V^n ≠ 1, each rescaled to L = 1; the
/// expectation gap is attained along such lines, so they are always present.
/// The rest are random mixtures of monomials with decaying weights.
struct ActionSamples {
  std::vector<MatrixElement> elements;
  std::size_t structured = 0;
  std::uint64_t seed = 0;
};

ActionSamples sample_action_unit_sphere(const FuzzyTorus& torus, const LengthFn& length,
                                        std::size_t random_count, std::uint64_t seed);

/// Sampled max of ‖E_H(a) − E_H'(a)‖ over the samples: a lower bound for the
/// sup over the unit ball. Zero exactly when H = H'.
double expectation_gap(const FuzzyTorus& torus, const TorusSubgroup& h, const TorusSubgroup& h_prime,
                       const ActionSamples& samples);
double expectation_gap(const FuzzyTorus& torus, const LengthFn& length, const TorusSubgroup& h,
                       const TorusSubgroup& h_prime, std::size_t random_count, std::uint64_t seed);

/// Bridge (M_q, ι_H, ι_H', 1) between the fixed point algebras. The witness
/// maps a ↦ E_H'(a) and b ↦ E_H(b) are L-contractions, so the worst sampled
/// ‖a − E_H'(a)‖ (a ∈ A_H) and ‖b − E_H(b)‖ (b ∈ A_H') are the per-direction
/// reach values of this bridge along the samples.
struct FixedPointBridgeReport {
  double left_to_right = 0.0;
  double right_to_left = 0.0;
  double reach = 0.0;
  std::size_t dim_left = 0;
  std::size_t dim_right = 0;
  /// max over witnesses of L(E(a)) − L(a); ≤ 0 up to rounding.
  double witness_l_excess = 0.0;
};

FixedPointBridgeReport fixed_point_bridge(const FuzzyTorus& torus, const LengthFn& length,
                                          const TorusSubgroup& h, const TorusSubgroup& h_prime,
                                          const ActionSamples& samples,
                                          bool check_witnesses = true);

struct ChainRow {
  int m = 0;
  std::size_t subgroup_size = 0;
  std::size_t fixed_dim = 0;
  double haus = 0.0;
  double gap = 0.0;
  double reach = 0.0;
};

/// Sweep over Z_m ⊂ Z_q × {1} for every divisor m of q, against
/// H_∞ = Z_q × {1}, ordered by increasing m.
std::vector<ChainRow> divisor_chain_sweep(const FuzzyTorus& torus, const LengthFn& length,
                                          const ActionSamples& samples,
                                          bool check_witnesses = false);

}  // namespace qmetric
