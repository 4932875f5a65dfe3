#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qmetric/matrix_algebra.hpp"

namespace qmetric {

/// Element (j, k) of Z_q × Z_q, sitting in T² as (e^{2πij/q}, e^{2πik/q}).
struct GroupElement {
  int j = 0;
  int k = 0;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Fuzzy torus: M_q generated by the clock U = diag(1, ω, …, ω^{q-1}) and the
/// shift V (V e_k = e_{k-1}), ω = e^{2πip/q}, so that VU = ωUV. The monomials
/// U^m V^n form a τ-orthonormal basis.
class FuzzyTorus {
 public:
  /// Error{config} unless q ≥ 2 and gcd(p, q) = 1.
  FuzzyTorus(int q, int p);

  int order() const noexcept { return q_; }
  int p() const noexcept { return p_; }
  Complex omega() const noexcept { return omega_; }
  const MatrixElement& clock() const noexcept { return clock_; }
  const MatrixElement& shift() const noexcept { return shift_; }

  MatrixElement monomial(int m, int n) const;

  /// c(m, n) = τ((U^m V^n)* a), a q×q table indexed [m][n].
  ComplexMatrix coefficients(const MatrixElement& a) const;
  MatrixElement from_coefficients(const ComplexMatrix& c) const;

  /// e^{2πi(jm + kn)/q}: the dual action multiplies the (m, n) coefficient by
  /// this.
  Complex character(GroupElement g, int m, int n) const;

  /// α^(j,k)(a) entrywise: (r, c) ↦ ζ^{k(c−r)}·a(r+s, c+s) with s = j·p⁻¹
  /// mod q and ζ = e^{2πi/q}. O(q²), no coefficient transform.
  ComplexMatrix act(GroupElement g, const ComplexMatrix& a) const;

 private:
  int q_;
  int p_;
  int p_inverse_;
  Complex omega_;
  std::vector<Complex> powers_;  // ω^r, r ∈ [0, q)
  std::vector<Complex> roots_;   // e^{2πis/q}, s ∈ [0, q)
  MatrixElement clock_;
  MatrixElement shift_;
};

MatrixElement dual_action(const FuzzyTorus& torus, GroupElement g, const MatrixElement& a);

/// Length function on Z_q². The default is the restriction of the
/// max-of-angles length on T²: ℓ(g) = max(|θ_1|, |θ_2|), θ ∈ (−π, π].
class LengthFn {
 public:
  static LengthFn max_angle(int q);
  /// Validates ℓ(e) = 0, ℓ > 0 elsewhere, ℓ(g⁻¹) = ℓ(g) and subadditivity
  /// over all of Z_q² (Error{config} on failure).
  static LengthFn custom(int q, std::function<double(GroupElement)> fn);

  int order() const noexcept { return q_; }
  double operator()(GroupElement g) const;

 private:
  LengthFn(int q, std::vector<double> table) : q_(q), table_(std::move(table)) {}
  int q_;
  std::vector<double> table_;  // indexed j*q + k
};

/// max over g ≠ e of ‖a − α^g(a)‖ / ℓ(g). Error{not_self_adjoint} for
/// non self-adjoint a.
double action_lip_seminorm(const FuzzyTorus& torus, const LengthFn& length, const MatrixElement& a);

int positive_mod(int a, int q);

}  // namespace qmetric
