#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmetric/metric_space.hpp"
#include "qmetric/tolerances.hpp"

namespace qmetric {

/// σ as an image table: point i goes to perm[i].
using Permutation = std::vector<std::size_t>;

/// Finite permutation group acting on {0, …, n−1}, stored as its full
/// element list (closure of the generators).
class PermutationGroup {
 public:
  /// Error{input_shape} if a generator is not a permutation of n points.
  static PermutationGroup generated_by(std::size_t n, std::vector<Permutation> generators);

  std::size_t degree() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  bool contains(const Permutation& p) const;
  bool is_subgroup_of(const PermutationGroup& other) const;

  /// Orbits in order of their smallest point.
  std::vector<std::vector<std::size_t>> orbits() const;

  /// Every subgroup, as joins of cyclic subgroups until the lattice closes.
  std::vector<PermutationGroup> subgroups() const;

 private:
  PermutationGroup(std::size_t n, std::vector<Permutation> elements,
                   std::vector<Permutation> generators)
      : n_(n), elements_(std::move(elements)), generators_(std::move(generators)) {}

  std::size_t n_;
  std::vector<Permutation> elements_;  // sorted
  std::vector<Permutation> generators_;
};

/// x ↦ x + shift (mod n).
Permutation rotation(std::size_t n, std::size_t shift);

/// Orbit averaging (E_H f)(x) = (1/|H|) Σ_h f(h·x).
RealFunction orbit_average(const PermutationGroup& h, const RealFunction& f);

/// Quotient X/H: orbits with d̄(O, O') = min pairwise distance, closed under
/// shortest paths.
FiniteMetricSpace quotient_space(const FiniteMetricSpace& space, const PermutationGroup& h);

struct CommutativeFixedPointReport {
  std::size_t orbit_count = 0;
  /// Numerical rank of E_H as a linear map on C(X).
  std::size_t fixed_dimension = 0;
  std::size_t quotient_size = 0;
  /// max over samples of Lip(E_H f) − Lip(f).
  double max_lip_excess = 0.0;
  /// Direction C(X) → C(X)^H of the inclusion bridge, witness E_H:
  /// sampled max ‖f − E_H f‖∞ over Lip(f) ≤ 1.
  double reach_sampled = 0.0;
  /// The same sup computed exactly: max_x MK(δ_x, uniform measure on H·x).
  double reach_exact = 0.0;
  /// max_x Haus({x}, H·x) = max_x max_h d(x, h·x); bounds reach_exact.
  double orbit_radius = 0.0;
  std::size_t samples = 0;
};

/// Error{action_not_isometric} if some element of G moves a distance by more
/// than the algebraic tolerance, Error{config} if H ⊄ G or degrees differ.
CommutativeFixedPointReport commutative_fixed_point_check(const FiniteMetricSpace& space,
                                                          const PermutationGroup& g,
                                                          const PermutationGroup& h,
                                                          std::size_t samples, std::uint64_t seed,
                                                          const Tolerances& tol = {});

}  // namespace qmetric
