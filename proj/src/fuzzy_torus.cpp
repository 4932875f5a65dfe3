#include "qmetric/fuzzy_torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qmetric/error.hpp"

namespace qmetric {

int positive_mod(int a, int q) {
  const int r = a % q;
  return r < 0 ? r + q : r;
}

namespace {

Complex unit_root(long long numerator, int q) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(numerator % q) / q;
  return {std::cos(angle), std::sin(angle)};
}

int checked_order(int q, int p) {
  if (q < 2) throw Error(ErrorKind::config, "fuzzy torus order q must be at least 2", "q");
  if (std::gcd(positive_mod(p, q), q) != 1) {
    throw Error(ErrorKind::config, "p must be coprime to q", "p");
  }
  return q;
}

int inverse_mod(int p, int q) {
  for (int x = 1; x < q; ++x) {
    if ((static_cast<long long>(p) * x) % q == 1) return x;
  }
  return 0;
}

ComplexMatrix clock_matrix(int q, int p) {
  ComplexMatrix u = ComplexMatrix::Zero(q, q);
  for (int k = 0; k < q; ++k) u(k, k) = unit_root(static_cast<long long>(positive_mod(p, q)) * k, q);
  return u;
}

ComplexMatrix shift_matrix(int q) {
  ComplexMatrix v = ComplexMatrix::Zero(q, q);
  for (int k = 0; k < q; ++k) v(positive_mod(k - 1, q), k) = 1.0;
  return v;
}

MatrixElement keep_hermitian(ComplexMatrix m, bool symmetrize) {
  if (symmetrize) m = 0.5 * (m + m.adjoint()).eval();
  return MatrixElement(std::move(m));
}

}  // namespace

FuzzyTorus::FuzzyTorus(int q, int p)
    : q_(checked_order(q, p)),
      p_(p),
      p_inverse_(inverse_mod(positive_mod(p, q), q)),
      omega_(unit_root(positive_mod(p, q), q)),
      clock_(clock_matrix(q, p)),
      shift_(shift_matrix(q)) {
  powers_.reserve(static_cast<std::size_t>(q));
  roots_.reserve(static_cast<std::size_t>(q));
  for (int r = 0; r < q; ++r) {
    powers_.push_back(unit_root(static_cast<long long>(positive_mod(p, q)) * r, q));
    roots_.push_back(unit_root(r, q));
  }
}

MatrixElement FuzzyTorus::monomial(int m, int n) const {
  // U^m V^n e_k = ω^{m(k−n)} e_{k−n}.
  ComplexMatrix w = ComplexMatrix::Zero(q_, q_);
  const int mm = positive_mod(m, q_);
  for (int k = 0; k < q_; ++k) {
    const int r = positive_mod(k - n, q_);
    w(r, k) = powers_[static_cast<std::size_t>((mm * r) % q_)];
  }
  return MatrixElement(std::move(w));
}

ComplexMatrix FuzzyTorus::coefficients(const MatrixElement& a) const {
  if (a.dim() != static_cast<std::size_t>(q_)) {
    throw Error(ErrorKind::input_shape, "element is not in M_" + std::to_string(q_));
  }
  const auto& e = a.entries();
  ComplexMatrix c(q_, q_);
  for (int m = 0; m < q_; ++m) {
    for (int n = 0; n < q_; ++n) {
      Complex s = 0.0;
      for (int k = 0; k < q_; ++k) {
        const int r = positive_mod(k - n, q_);
        s += std::conj(powers_[static_cast<std::size_t>((m * r) % q_)]) * e(r, k);
      }
      c(m, n) = s / static_cast<double>(q_);
    }
  }
  return c;
}

MatrixElement FuzzyTorus::from_coefficients(const ComplexMatrix& c) const {
  if (c.rows() != q_ || c.cols() != q_) throw Error(ErrorKind::input_shape, "coefficient table must be q x q");
  ComplexMatrix a = ComplexMatrix::Zero(q_, q_);
  for (int r = 0; r < q_; ++r) {
    for (int k = 0; k < q_; ++k) {
      const int n = positive_mod(k - r, q_);
      Complex s = 0.0;
      for (int m = 0; m < q_; ++m) s += c(m, n) * powers_[static_cast<std::size_t>((m * r) % q_)];
      a(r, k) = s;
    }
  }
  return MatrixElement(std::move(a));
}

Complex FuzzyTorus::character(GroupElement g, int m, int n) const {
  const long long s = static_cast<long long>(positive_mod(g.j, q_)) * positive_mod(m, q_) +
                      static_cast<long long>(positive_mod(g.k, q_)) * positive_mod(n, q_);
  return roots_[static_cast<std::size_t>(s % q_)];
}

ComplexMatrix FuzzyTorus::act(GroupElement g, const ComplexMatrix& a) const {
  if (a.rows() != q_ || a.cols() != q_) {
    throw Error(ErrorKind::input_shape, "element is not in M_" + std::to_string(q_));
  }
  // ζ^j = ω^s, and multiplying the U^m coefficients by ω^{ms} shifts both
  // indices by s; the V^n phase depends only on n = c − r.
  const int s = static_cast<int>(static_cast<long long>(positive_mod(g.j, q_)) * p_inverse_ % q_);
  const int k = positive_mod(g.k, q_);
  ComplexMatrix out(q_, q_);
  for (int c = 0; c < q_; ++c) {
    const int cs = (c + s) % q_;
    for (int r = 0; r < q_; ++r) {
      const int n = positive_mod(c - r, q_);
      out(r, c) = roots_[static_cast<std::size_t>(k * n % q_)] * a((r + s) % q_, cs);
    }
  }
  return out;
}

MatrixElement dual_action(const FuzzyTorus& torus, GroupElement g, const MatrixElement& a) {
  return keep_hermitian(torus.act(g, a.entries()), a.is_self_adjoint());
}

LengthFn LengthFn::max_angle(int q) {
  if (q < 1) throw Error(ErrorKind::config, "group order must be positive", "q");
  std::vector<double> table(static_cast<std::size_t>(q * q));
  auto angle = [q](int j) { return 2.0 * std::numbers::pi * std::min(j, q - j) / q; };
  for (int j = 0; j < q; ++j) {
    for (int k = 0; k < q; ++k) table[static_cast<std::size_t>(j * q + k)] = std::max(angle(j), angle(k));
  }
  return LengthFn(q, std::move(table));
}

LengthFn LengthFn::custom(int q, std::function<double(GroupElement)> fn) {
  if (q < 1) throw Error(ErrorKind::config, "group order must be positive", "q");
  constexpr double slack = 1e-12;
  std::vector<double> table(static_cast<std::size_t>(q * q));
  for (int j = 0; j < q; ++j) {
    for (int k = 0; k < q; ++k) {
      const double v = fn({j, k});
      if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::config, "length must be finite and >= 0", "length");
      table[static_cast<std::size_t>(j * q + k)] = v;
    }
  }
  auto at = [&](int j, int k) { return table[static_cast<std::size_t>(positive_mod(j, q) * q + positive_mod(k, q))]; };
  if (std::abs(at(0, 0)) > slack) throw Error(ErrorKind::config, "length of the identity must be 0", "length");
  for (int j = 0; j < q; ++j) {
    for (int k = 0; k < q; ++k) {
      if ((j != 0 || k != 0) && !(at(j, k) > slack)) {
        throw Error(ErrorKind::config, "length must be positive away from the identity", "length");
      }
      if (std::abs(at(j, k) - at(-j, -k)) > slack) {
        throw Error(ErrorKind::config, "length must be symmetric under inversion", "length");
      }
      for (int s = 0; s < q; ++s) {
        for (int t = 0; t < q; ++t) {
          if (at(j + s, k + t) > at(j, k) + at(s, t) + slack) {
            throw Error(ErrorKind::config, "length must be subadditive", "length");
          }
        }
      }
    }
  }
  return LengthFn(q, std::move(table));
}

double LengthFn::operator()(GroupElement g) const {
  return table_[static_cast<std::size_t>(positive_mod(g.j, q_) * q_ + positive_mod(g.k, q_))];
}

double action_lip_seminorm(const FuzzyTorus& torus, const LengthFn& length, const MatrixElement& a) {
  if (!a.is_self_adjoint()) throw Error(ErrorKind::not_self_adjoint, "the action seminorm lives on self-adjoint elements");
  const int q = torus.order();
  if (length.order() != q) throw Error(ErrorKind::config, "length function is for another group order", "length");
  if (a.dim() != static_cast<std::size_t>(q)) throw Error(ErrorKind::input_shape, "element is not in M_" + std::to_string(q));
  // ‖a − α^{g⁻¹}(a)‖ = ‖α^{g⁻¹}(α^g(a) − a)‖ and ℓ(g⁻¹) = ℓ(g): one of each
  // inverse pair is enough. Short elements usually carry the max, so they go
  // first, and later ones are skipped when the Frobenius / row-sum bound on
  // the norm cannot beat the current best.
  std::vector<GroupElement> reps;
  for (int j = 0; j < q; ++j) {
    for (int k = 0; k < q; ++k) {
      const GroupElement g{j, k};
      const GroupElement inverse{positive_mod(-j, q), positive_mod(-k, q)};
      if (g == GroupElement{} || inverse < g) continue;
      reps.push_back(g);
    }
  }
  std::stable_sort(reps.begin(), reps.end(),
                   [&length](GroupElement x, GroupElement y) { return length(x) < length(y); });
  double best = 0.0;
  for (const auto& g : reps) {
    const ComplexMatrix d = a.entries() - torus.act(g, a.entries());
    const double cheap = std::min(d.norm(), d.cwiseAbs().rowwise().sum().maxCoeff());
    if (cheap * (1.0 + 1e-12) < best * length(g)) continue;
    const MatrixElement moved = keep_hermitian(d, true);
    best = std::max(best, operator_norm(moved) / length(g));
  }
  return best;
}

}  // namespace qmetric
