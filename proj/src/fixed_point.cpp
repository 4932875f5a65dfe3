#include "qmetric/fixed_point.hpp"

#include <algorithm>
#include <cmath>

#include "qmetric/bridge.hpp"
#include "qmetric/error.hpp"
#include "qmetric/random.hpp"

namespace qmetric {

namespace {

constexpr Complex kI{0.0, 1.0};

MatrixElement hermitian(const ComplexMatrix& m) { return MatrixElement(0.5 * (m + m.adjoint())); }

// |m| measured on Z_q as the distance to 0.
int centered(int m, int q) { return std::min(m, q - m); }

}  // namespace

ActionSamples sample_action_unit_sphere(const FuzzyTorus& torus, const LengthFn& length,
                                        std::size_t random_count, std::uint64_t seed) {
  const int q = torus.order();
  ActionSamples out;
  out.seed = seed;
  auto push_normalized = [&](const MatrixElement& a) {
    const double l = action_lip_seminorm(torus, length, a);
    if (l > 0.0) out.elements.push_back((1.0 / l) * a);
  };

  for (int m = 0; m < q; ++m) {
    for (int n = 0; n < q; ++n) {
      if (m == 0 && n == 0) continue;
      // W* is a multiple of U^{-m} V^{-n}: one line per inverse pair.
      const int mi = positive_mod(-m, q);
      const int ni = positive_mod(-n, q);
      if (std::pair{mi, ni} < std::pair{m, n}) continue;
      const ComplexMatrix w = torus.monomial(m, n).entries();
      for (const ComplexMatrix& line : {ComplexMatrix(w + w.adjoint()), ComplexMatrix(kI * (w - w.adjoint()))}) {
        if (line.cwiseAbs().maxCoeff() < 1e-12) continue;
        push_normalized(hermitian(line));
      }
    }
  }
  out.structured = out.elements.size();

  for (std::size_t s = 0; s < random_count; ++s) {
    Rng rng(derive_seed(seed, s));
    ComplexMatrix c = ComplexMatrix::Zero(q, q);
    for (int m = 0; m < q; ++m) {
      for (int n = 0; n < q; ++n) {
        const double weight = 1.0 / (1.0 + centered(m, q) + centered(n, q));
        const double re = rng.normal();
        const double im = rng.normal();
        c(m, n) = weight * Complex(re, im);
      }
    }
    c(0, 0) = 0.0;
    const ComplexMatrix x = torus.from_coefficients(c).entries();
    ComplexMatrix a = 0.5 * (x + x.adjoint());
    a -= (a.trace() / static_cast<double>(q)) * ComplexMatrix::Identity(q, q);
    push_normalized(hermitian(a));
  }
  return out;
}

double expectation_gap(const FuzzyTorus& torus, const TorusSubgroup& h, const TorusSubgroup& h_prime,
                       const ActionSamples& samples) {
  if (samples.elements.empty()) throw Error(ErrorKind::config, "no samples", "samples");
  const AveragingExpectation e(torus, h);
  const AveragingExpectation e_prime(torus, h_prime);
  double gap = 0.0;
  for (const auto& a : samples.elements) gap = std::max(gap, operator_norm(e(a) - e_prime(a)));
  return gap;
}

double expectation_gap(const FuzzyTorus& torus, const LengthFn& length, const TorusSubgroup& h,
                       const TorusSubgroup& h_prime, std::size_t random_count, std::uint64_t seed) {
  return expectation_gap(torus, h, h_prime, sample_action_unit_sphere(torus, length, random_count, seed));
}

FixedPointBridgeReport fixed_point_bridge(const FuzzyTorus& torus, const LengthFn& length,
                                          const TorusSubgroup& h, const TorusSubgroup& h_prime,
                                          const ActionSamples& samples, bool check_witnesses) {
  if (samples.elements.empty()) throw Error(ErrorKind::config, "no samples", "samples");
  const AveragingExpectation e(torus, h);
  const AveragingExpectation e_prime(torus, h_prime);
  const int q = torus.order();
  auto left_proj = [&e](const MatrixElement& a) { return e(a); };
  auto right_proj = [&e_prime](const MatrixElement& a) { return e_prime(a); };
  const auto bridge = UnitPivotBridge::subalgebras(static_cast<std::size_t>(q), left_proj, right_proj);

  FixedPointBridgeReport report;
  report.dim_left = fixed_subalgebra_basis(torus, h).size();
  report.dim_right = fixed_subalgebra_basis(torus, h_prime).size();
  for (const auto& sample : samples.elements) {
    // E_H is an L-contraction, so E_H(sample) is in the unit ball of A_H.
    const MatrixElement a = e(sample);
    const MatrixElement a_witness = e_prime(a);
    report.left_to_right = std::max(report.left_to_right, bridge_norm(bridge, a, a_witness));
    const MatrixElement b = e_prime(sample);
    const MatrixElement b_witness = e(b);
    report.right_to_left = std::max(report.right_to_left, bridge_norm(bridge, b_witness, b));
    if (check_witnesses) {
      const double la = action_lip_seminorm(torus, length, a);
      const double lb = action_lip_seminorm(torus, length, b);
      const double ls = action_lip_seminorm(torus, length, sample);
      report.witness_l_excess = std::max(
          {report.witness_l_excess, action_lip_seminorm(torus, length, a_witness) - la,
           action_lip_seminorm(torus, length, b_witness) - lb, la - ls, lb - ls});
    }
  }
  report.reach = std::max(report.left_to_right, report.right_to_left);
  return report;
}

std::vector<ChainRow> divisor_chain_sweep(const FuzzyTorus& torus, const LengthFn& length,
                                          const ActionSamples& samples, bool check_witnesses) {
  const int q = torus.order();
  const auto top = TorusSubgroup::first_factor_cyclic(q, q);
  std::vector<ChainRow> rows;
  for (int m = 1; m <= q; ++m) {
    if (q % m != 0) continue;
    const auto hm = TorusSubgroup::first_factor_cyclic(q, m);
    ChainRow row;
    row.m = m;
    row.subgroup_size = hm.size();
    row.fixed_dim = fixed_subalgebra_basis(torus, hm).size();
    row.haus = subgroup_hausdorff(length, hm, top);
    row.gap = expectation_gap(torus, hm, top, samples);
    row.reach = fixed_point_bridge(torus, length, hm, top, samples, check_witnesses).reach;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qmetric
