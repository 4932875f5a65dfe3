#include "qmetric/matrix_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "qmetric/error.hpp"

namespace qmetric {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_dim(const MatrixElement& a, const MatrixElement& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::input_shape, "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                            std::to_string(b.dim()));
  }
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Products of self-adjoint pairs are self-adjoint in exact arithmetic; drop
// the rounding asymmetry so the flag stays set for large entries too.
MatrixElement hermitian_if(const ComplexMatrix& m, bool symmetrize) {
  if (!symmetrize) return MatrixElement(m);
  return MatrixElement(0.5 * (m + m.adjoint()));
}

}  // namespace

MatrixElement::MatrixElement(ComplexMatrix entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw Error(ErrorKind::input_shape, "matrix must be square and nonempty, got " +
                                            std::to_string(entries_.rows()) + "x" +
                                            std::to_string(entries_.cols()));
  }
  if (!entries_.allFinite()) throw Error(ErrorKind::input_shape, "non-finite matrix entry");
  const double slack = tol.algebraic * std::max(1.0, max_abs(entries_));
  self_adjoint_ = max_abs(entries_ - entries_.adjoint()) <= slack;
}

MatrixElement MatrixElement::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return MatrixElement(ComplexMatrix::Identity(k, k));
}

MatrixElement MatrixElement::zero(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return MatrixElement(ComplexMatrix::Zero(k, k));
}

MatrixElement MatrixElement::scalar(std::size_t n, Complex value) {
  const auto k = static_cast<Eigen::Index>(n);
  return MatrixElement(value * ComplexMatrix::Identity(k, k));
}

MatrixElement MatrixElement::adjoint() const { return MatrixElement(entries_.adjoint()); }

MatrixElement operator+(const MatrixElement& a, const MatrixElement& b) {
  require_same_dim(a, b);
  return MatrixElement(a.entries_ + b.entries_);
}

MatrixElement operator-(const MatrixElement& a, const MatrixElement& b) {
  require_same_dim(a, b);
  return MatrixElement(a.entries_ - b.entries_);
}

MatrixElement operator*(const MatrixElement& a, const MatrixElement& b) {
  require_same_dim(a, b);
  return MatrixElement(a.entries_ * b.entries_);
}

MatrixElement operator*(Complex s, const MatrixElement& a) { return MatrixElement(s * a.entries_); }

MatrixElement operator*(double s, const MatrixElement& a) { return MatrixElement(s * a.entries_); }

double operator_norm(const MatrixElement& a) {
  if (a.is_self_adjoint()) {
    // Symmetrize so the solver sees an exactly Hermitian input.
    const ComplexMatrix h = 0.5 * (a.entries() + a.entries().adjoint());
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
  }
  const Eigen::JacobiSVD<ComplexMatrix> svd(a.entries());
  return svd.singularValues()(0);
}

MatrixElement jordan_product(const MatrixElement& a, const MatrixElement& b) {
  require_same_dim(a, b);
  const ComplexMatrix ab = a.entries() * b.entries();
  const ComplexMatrix ba = b.entries() * a.entries();
  return hermitian_if(0.5 * (ab + ba), a.is_self_adjoint() && b.is_self_adjoint());
}

MatrixElement lie_product(const MatrixElement& a, const MatrixElement& b) {
  require_same_dim(a, b);
  const ComplexMatrix ab = a.entries() * b.entries();
  const ComplexMatrix ba = b.entries() * a.entries();
  return hermitian_if((ab - ba) / (2.0 * kI), a.is_self_adjoint() && b.is_self_adjoint());
}

Complex trace_state(const MatrixElement& a) {
  return a.entries().trace() / static_cast<double>(a.dim());
}

MatrixElement embed_diagonal(const DiagonalEmbedding& rho, const RealFunction& f) {
  if (f.size() != rho.dim()) throw Error(ErrorKind::input_shape, "function size differs from embedding dimension");
  return MatrixElement(f.values().cast<Complex>().asDiagonal().toDenseMatrix());
}

MatrixElement embed_diagonal(const DiagonalEmbedding& rho, const Eigen::VectorXcd& f) {
  if (static_cast<std::size_t>(f.size()) != rho.dim()) {
    throw Error(ErrorKind::input_shape, "function size differs from embedding dimension");
  }
  return MatrixElement(f.asDiagonal().toDenseMatrix());
}

Eigen::VectorXcd extract_diagonal_complex(const DiagonalEmbedding& rho, const MatrixElement& a,
                                          const Tolerances& tol) {
  if (a.dim() != rho.dim()) throw Error(ErrorKind::input_shape, "matrix size differs from embedding dimension");
  const double slack = tol.algebraic * std::max(1.0, max_abs(a.entries()));
  ComplexMatrix off = a.entries();
  off.diagonal().setZero();
  if (max_abs(off) > slack) {
    throw Error(ErrorKind::not_in_subalgebra, "element has off-diagonal entries");
  }
  return a.entries().diagonal();
}

RealFunction extract_diagonal(const DiagonalEmbedding& rho, const MatrixElement& a,
                              const Tolerances& tol) {
  const Eigen::VectorXcd diag = extract_diagonal_complex(rho, a, tol);
  const double slack = tol.algebraic * std::max(1.0, max_abs(a.entries()));
  if (diag.size() > 0 && diag.imag().cwiseAbs().maxCoeff() > slack) {
    throw Error(ErrorKind::not_in_subalgebra, "diagonal has imaginary parts");
  }
  return RealFunction(diag.real());
}

MatrixElement pinch(const ExpectationOntoDiagonal& e, const MatrixElement& a) {
  if (a.dim() != e.dim()) throw Error(ErrorKind::input_shape, "matrix size differs from expectation dimension");
  return MatrixElement(ComplexMatrix(a.entries().diagonal().asDiagonal()));
}

Eigen::VectorXd self_adjoint_coordinates(const MatrixElement& a) {
  if (!a.is_self_adjoint()) throw Error(ErrorKind::not_self_adjoint, "coordinates need a self-adjoint element");
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::VectorXd c(n * n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) c(k++) = a.entries()(i, i).real();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      // a_ij = x + iy  ⇒  a = ... + x(E_ij + E_ji) + y·i(E_ij - E_ji)
      c(k++) = a.entries()(i, j).real();
      c(k++) = a.entries()(i, j).imag();
    }
  }
  return c;
}

MatrixElement from_self_adjoint_coordinates(std::size_t n, const Eigen::VectorXd& coords) {
  const auto k = static_cast<Eigen::Index>(n);
  if (coords.size() != k * k) throw Error(ErrorKind::input_shape, "need n^2 coordinates");
  ComplexMatrix m = ComplexMatrix::Zero(k, k);
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < k; ++i) m(i, i) = coords(t++);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double x = coords(t++);
      const double y = coords(t++);
      m(i, j) = Complex(x, y);
      m(j, i) = Complex(x, -y);
    }
  }
  return MatrixElement(std::move(m));
}

MatrixElement random_matrix(std::size_t n, Rng& rng) {
  const auto k = static_cast<Eigen::Index>(n);
  ComplexMatrix m(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      m(i, j) = Complex(re, im);
    }
  }
  return MatrixElement(std::move(m));
}

MatrixElement random_self_adjoint(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_matrix(n, rng).entries();
  return MatrixElement(0.5 * (g + g.adjoint()));
}

MatrixElement random_zero_diagonal_self_adjoint(std::size_t n, Rng& rng) {
  ComplexMatrix h = random_self_adjoint(n, rng).entries();
  h.diagonal().setZero();
  return MatrixElement(std::move(h));
}

MatrixElement random_positive(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_matrix(n, rng).entries();
  return MatrixElement(g.adjoint() * g);
}

nlohmann::json to_json(const MatrixElement& a) {
  nlohmann::json entries = nlohmann::json::array();
  const auto n = static_cast<Eigen::Index>(a.dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      entries.push_back({a.entries()(i, j).real(), a.entries()(i, j).imag()});
    }
  }
  return {{"dim", a.dim()}, {"entries", std::move(entries)}};
}

MatrixElement matrix_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("dim").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != n * n) {
      throw Error(ErrorKind::input_shape, "expected dim^2 entries", "entries");
    }
    const auto k = static_cast<Eigen::Index>(n);
    ComplexMatrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index c = 0; c < k; ++c) {
        const auto& e = entries.at(static_cast<std::size_t>(i * k + c));
        if (e.is_number()) {
          m(i, c) = e.get<double>();
        } else {
          m(i, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
      }
    }
    return MatrixElement(std::move(m));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::input_shape, std::string("malformed matrix JSON: ") + ex.what(), "entries");
  }
}

}  // namespace qmetric
