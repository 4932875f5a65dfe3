#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "json.hpp"

#include "qmetric/metric_space.hpp"
#include "qmetric/random.hpp"
#include "qmetric/tolerances.hpp"

namespace qmetric {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Element of the full matrix algebra M_n(C).
///
/// The self-adjoint flag is decided once, at construction, by comparing the
/// entries with their conjugate transpose (algebraic tolerance, relative to
/// the largest entry), so the flag can never disagree with the entries.
class MatrixElement {
 public:
  /// Throws Error{input_shape} for non-square or empty input, or non-finite
  /// entries.
  explicit MatrixElement(ComplexMatrix entries, const Tolerances& tol = {});

  static MatrixElement identity(std::size_t n);
  static MatrixElement zero(std::size_t n);
  static MatrixElement scalar(std::size_t n, Complex value);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  bool is_self_adjoint() const noexcept { return self_adjoint_; }

  MatrixElement adjoint() const;

  friend MatrixElement operator+(const MatrixElement& a, const MatrixElement& b);
  friend MatrixElement operator-(const MatrixElement& a, const MatrixElement& b);
  friend MatrixElement operator*(const MatrixElement& a, const MatrixElement& b);
  friend MatrixElement operator*(Complex s, const MatrixElement& a);
  friend MatrixElement operator*(double s, const MatrixElement& a);

 private:
  ComplexMatrix entries_;
  bool self_adjoint_ = false;
};

/// Largest singular value. Self-adjoint elements go through a Hermitian
/// eigenvalue solve (max |λ|), everything else through a full SVD.
double operator_norm(const MatrixElement& a);

/// (ab + ba) / 2. Error{input_shape} on dimension mismatch.
MatrixElement jordan_product(const MatrixElement& a, const MatrixElement& b);
/// (ab - ba) / 2i. Error{input_shape} on dimension mismatch.
MatrixElement lie_product(const MatrixElement& a, const MatrixElement& b);

/// Normalized trace (1/n) tr(a), the unique tracial state on M_n.
Complex trace_state(const MatrixElement& a);

/// ρ : C(Y) → M_n, f ↦ diag(f), a unital *-isomorphism onto the diagonal.
class DiagonalEmbedding {
 public:
  explicit DiagonalEmbedding(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
};

MatrixElement embed_diagonal(const DiagonalEmbedding& rho, const RealFunction& f);
MatrixElement embed_diagonal(const DiagonalEmbedding& rho, const Eigen::VectorXcd& f);

/// ρ⁻¹ on the diagonal subalgebra. Error{not_in_subalgebra} when an
/// off-diagonal entry exceeds the algebraic tolerance or a diagonal entry has
/// an imaginary part beyond it.
RealFunction extract_diagonal(const DiagonalEmbedding& rho, const MatrixElement& a,
                              const Tolerances& tol = {});
Eigen::VectorXcd extract_diagonal_complex(const DiagonalEmbedding& rho, const MatrixElement& a,
                                          const Tolerances& tol = {});

/// The τ-preserving conditional expectation of M_n onto its diagonal:
/// pinching, i.e. zeroing every off-diagonal entry.
class ExpectationOntoDiagonal {
 public:
  explicit ExpectationOntoDiagonal(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
};

MatrixElement pinch(const ExpectationOntoDiagonal& e, const MatrixElement& a);

/// Real coordinates of a self-adjoint n×n matrix in the basis
/// {E_ii} ∪ {E_ij + E_ji} ∪ {i(E_ij - E_ji)} (i < j); n² entries.
Eigen::VectorXd self_adjoint_coordinates(const MatrixElement& a);
MatrixElement from_self_adjoint_coordinates(std::size_t n, const Eigen::VectorXd& coords);

// Random elements. Entries are standard complex Gaussians (GUE-like for the
// self-adjoint variants).
MatrixElement random_matrix(std::size_t n, Rng& rng);
MatrixElement random_self_adjoint(std::size_t n, Rng& rng);
MatrixElement random_zero_diagonal_self_adjoint(std::size_t n, Rng& rng);
MatrixElement random_positive(std::size_t n, Rng& rng);

/// Row-major list of [re, im] pairs: {"dim": n, "entries": [[re, im], ...]}.
nlohmann::json to_json(const MatrixElement& a);
MatrixElement matrix_from_json(const nlohmann::json& j);

}  // namespace qmetric
