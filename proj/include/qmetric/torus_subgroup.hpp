#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qmetric/fuzzy_torus.hpp"

namespace qmetric {

/// Subgroup of Z_q × Z_q as an explicit sorted element list.
class TorusSubgroup {
 public:
  /// Subgroup generated by `generators` (the identity alone if empty).
  static TorusSubgroup generated_by(int q, std::vector<GroupElement> generators);
  static TorusSubgroup trivial(int q) { return generated_by(q, {}); }
  static TorusSubgroup full(int q) { return generated_by(q, {{1, 0}, {0, 1}}); }
  /// Z_m embedded in the first factor: generated by (q/m, 0). Error{config}
  /// unless m divides q.
  static TorusSubgroup first_factor_cyclic(int q, int m);

  int order() const noexcept { return q_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  bool contains(GroupElement g) const;
  bool is_subgroup_of(const TorusSubgroup& other) const;

  friend bool operator==(const TorusSubgroup& a, const TorusSubgroup& b) {
    return a.q_ == b.q_ && a.elements_ == b.elements_;
  }

 private:
  TorusSubgroup(int q, std::vector<GroupElement> elements, std::vector<GroupElement> generators)
      : q_(q), elements_(std::move(elements)), generators_(std::move(generators)) {}

  int q_;
  std::vector<GroupElement> elements_;
  std::vector<GroupElement> generators_;
};

/// All subgroups of Z_q², deduplicated, ordered by size then elements.
/// Error{config} unless 1 ≤ q ≤ 24.
std::vector<TorusSubgroup> enumerate_subgroups(int q);

/// Hausdorff distance for the invariant metric (g, h) ↦ ℓ(g⁻¹h).
double subgroup_hausdorff(const LengthFn& length, const TorusSubgroup& a, const TorusSubgroup& b);

/// E_H(a) = (1/|H|) Σ_{h∈H} α^h(a), evaluated on the monomial coefficients
/// with the averaged character table.
class AveragingExpectation {
 public:
  AveragingExpectation(const FuzzyTorus& torus, const TorusSubgroup& subgroup);
  MatrixElement operator()(const MatrixElement& a) const;
  const TorusSubgroup& subgroup() const noexcept { return subgroup_; }

 private:
  FuzzyTorus torus_;
  TorusSubgroup subgroup_;
  ComplexMatrix multipliers_;
};

MatrixElement averaging_expectation(const FuzzyTorus& torus, const TorusSubgroup& subgroup,
                                    const MatrixElement& a);

/// Monomials (m, n) fixed by every element of H, by exact integer arithmetic:
/// jm + kn ≡ 0 (mod q) for all (j, k) ∈ H.
std::vector<std::pair<int, int>> fixed_subalgebra_basis(const FuzzyTorus& torus,
                                                       const TorusSubgroup& subgroup);

}  // namespace qmetric
