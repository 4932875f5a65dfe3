#include "qmetric/torus_subgroup.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "qmetric/error.hpp"

namespace qmetric {

namespace {

constexpr int kMaxOrder = 24;

GroupElement add(GroupElement a, GroupElement b, int q) {
  return {positive_mod(a.j + b.j, q), positive_mod(a.k + b.k, q)};
}

}  // namespace

TorusSubgroup TorusSubgroup::generated_by(int q, std::vector<GroupElement> generators) {
  if (q < 1) throw Error(ErrorKind::config, "group order must be positive", "q");
  for (auto& g : generators) g = {positive_mod(g.j, q), positive_mod(g.k, q)};
  // Breadth-first closure under adding generators; in a finite group this is
  // also closed under inverses.
  std::vector<char> seen(static_cast<std::size_t>(q * q), 0);
  std::vector<GroupElement> elements;
  std::deque<GroupElement> frontier{GroupElement{}};
  seen[0] = 1;
  while (!frontier.empty()) {
    const GroupElement x = frontier.front();
    frontier.pop_front();
    elements.push_back(x);
    for (const auto& g : generators) {
      const GroupElement y = add(x, g, q);
      auto& flag = seen[static_cast<std::size_t>(y.j * q + y.k)];
      if (!flag) {
        flag = 1;
        frontier.push_back(y);
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return TorusSubgroup(q, std::move(elements), std::move(generators));
}

TorusSubgroup TorusSubgroup::first_factor_cyclic(int q, int m) {
  if (m < 1 || q < 1 || q % m != 0) {
    throw Error(ErrorKind::config, "m must divide q", "m");
  }
  return generated_by(q, {{q / m, 0}});
}

bool TorusSubgroup::contains(GroupElement g) const {
  g = {positive_mod(g.j, q_), positive_mod(g.k, q_)};
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool TorusSubgroup::is_subgroup_of(const TorusSubgroup& other) const {
  if (q_ != other.q_) return false;
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

std::vector<TorusSubgroup> enumerate_subgroups(int q) {
  if (q < 1 || q > kMaxOrder) {
    throw Error(ErrorKind::config, "subgroup enumeration supports 1 <= q <= 24", "q");
  }
  // Z_q² has rank ≤ 2, so every subgroup is ⟨a, b⟩ = ⟨a⟩ ∨ ⟨b⟩ for two of its
  // elements: cyclic subgroups first, then all pairwise joins.
  std::map<std::vector<GroupElement>, TorusSubgroup> found;
  std::vector<GroupElement> cyclic_generators;
  for (int j = 0; j < q; ++j) {
    for (int k = 0; k < q; ++k) {
      auto h = TorusSubgroup::generated_by(q, {{j, k}});
      if (found.emplace(h.elements(), h).second) cyclic_generators.push_back({j, k});
    }
  }
  for (std::size_t a = 0; a < cyclic_generators.size(); ++a) {
    for (std::size_t b = a + 1; b < cyclic_generators.size(); ++b) {
      auto h = TorusSubgroup::generated_by(q, {cyclic_generators[a], cyclic_generators[b]});
      found.emplace(h.elements(), std::move(h));
    }
  }
  std::vector<TorusSubgroup> out;
  out.reserve(found.size());
  for (auto& [elements, h] : found) out.push_back(std::move(h));
  std::stable_sort(out.begin(), out.end(),
                   [](const TorusSubgroup& x, const TorusSubgroup& y) { return x.size() < y.size(); });
  return out;
}

double subgroup_hausdorff(const LengthFn& length, const TorusSubgroup& a, const TorusSubgroup& b) {
  if (a.order() != b.order() || length.order() != a.order()) {
    throw Error(ErrorKind::config, "subgroups live in different ambient groups", "q");
  }
  const int q = a.order();
  auto directed = [&](const TorusSubgroup& from, const TorusSubgroup& to) {
    double worst = 0.0;
    for (const auto& x : from.elements()) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& y : to.elements()) {
        nearest = std::min(nearest, length({positive_mod(y.j - x.j, q), positive_mod(y.k - x.k, q)}));
      }
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

AveragingExpectation::AveragingExpectation(const FuzzyTorus& torus, const TorusSubgroup& subgroup)
    : torus_(torus), subgroup_(subgroup) {
  const int q = torus.order();
  if (subgroup.order() != q) {
    throw Error(ErrorKind::config, "subgroup lives in Z_" + std::to_string(subgroup.order()) +
                                       "^2, torus has q = " + std::to_string(q), "q");
  }
  // Haar average of the character values: (1/|H|) Σ_h χ_h(m, n).
  multipliers_ = ComplexMatrix::Zero(q, q);
  for (const auto& h : subgroup.elements()) {
    for (int m = 0; m < q; ++m) {
      for (int n = 0; n < q; ++n) multipliers_(m, n) += torus.character(h, m, n);
    }
  }
  multipliers_ /= static_cast<double>(subgroup.size());
}

MatrixElement AveragingExpectation::operator()(const MatrixElement& a) const {
  const ComplexMatrix c = torus_.coefficients(a).cwiseProduct(multipliers_);
  ComplexMatrix out = torus_.from_coefficients(c).entries();
  if (a.is_self_adjoint()) out = (0.5 * (out + out.adjoint())).eval();
  return MatrixElement(std::move(out));
}

MatrixElement averaging_expectation(const FuzzyTorus& torus, const TorusSubgroup& subgroup,
                                    const MatrixElement& a) {
  return AveragingExpectation(torus, subgroup)(a);
}

std::vector<std::pair<int, int>> fixed_subalgebra_basis(const FuzzyTorus& torus,
                                                       const TorusSubgroup& subgroup) {
  const int q = torus.order();
  if (subgroup.order() != q) throw Error(ErrorKind::config, "subgroup and torus orders differ", "q");
  std::vector<std::pair<int, int>> basis;
  for (int m = 0; m < q; ++m) {
    for (int n = 0; n < q; ++n) {
      const bool fixed = std::all_of(subgroup.elements().begin(), subgroup.elements().end(),
                                     [&](const GroupElement& h) { return (h.j * m + h.k * n) % q == 0; });
      if (fixed) basis.emplace_back(m, n);
    }
  }
  return basis;
}

}  // namespace qmetric
