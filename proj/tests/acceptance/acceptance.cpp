#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qmetric/bridge.hpp"
#include "qmetric/error.hpp"
#include "qmetric/fixed_point.hpp"
#include "qmetric/fuzzy_torus.hpp"
#include "qmetric/lseminorm.hpp"
#include "qmetric/matrix_algebra.hpp"
#include "qmetric/metric_space.hpp"
#include "qmetric/nets.hpp"
#include "qmetric/permutation_action.hpp"
#include "qmetric/random.hpp"
#include "qmetric/torus_subgroup.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#ifndef QMETRIC_DATA_DIR
#define QMETRIC_DATA_DIR "tests/data"
#endif

namespace qmetric::acceptance {

namespace {

constexpr double pi = std::numbers::pi;

// Pinned tolerances, one per criterion family.
constexpr double kRecoveryTol = 1e-12;
constexpr double kLeibnizTol = 1e-9;
constexpr double kBridgeTol = 1e-12;
constexpr double kReachEstimateTol = 1e-9;
constexpr double kConvergenceTol = 1e-12;
constexpr double kFinalBoundLimit = 0.05;
constexpr double kAxiomTol = 1e-12;
constexpr double kMkTol = 1e-9;
constexpr double kTorusTol = 1e-12;
constexpr double kKernelRelTol = 1e-9;
constexpr double kChainTol = 1e-12;
constexpr double kLipExcessTol = 1e-12;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string num(double x) {
  std::ostringstream out;
  out << std::setprecision(3) << x;
  return out.str();
}

// Worst-so-far tracker for "≤ tolerance" style checks.
struct Worst {
  double value = 0.0;
  void see(double x) { value = std::max(value, x); }
};

CriterionResult finish(CriterionResult r, const Stopwatch& clock, bool checks_ok) {
  r.seconds = clock.seconds();
  const bool in_time = r.limit_seconds <= 0.0 || r.seconds < r.limit_seconds;
  r.passed = checks_ok && in_time;
  if (!in_time) r.detail += "; runtime limit exceeded";
  return r;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<int> coprime_residues(int q) {
  std::vector<int> out;
  for (int p = 1; p < q; ++p) {
    if (std::gcd(p, q) == 1) out.push_back(p);
  }
  return out;
}

struct Configuration {
  std::string label;
  FiniteMetricSpace space;
  double beta;
  Regime regime;
};

// n ∈ {2, …, 8} point clouds, each at β = δ (D = 2) and β = 3δ (D = 4).
std::vector<Configuration> leibniz_configurations(std::uint64_t seed) {
  std::vector<Configuration> out;
  Rng rng(seed);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto space = testing::random_cloud(n, 2, rng);
    const double delta = min_separation(space);
    out.push_back({"cloud" + std::to_string(n) + "/beta=delta", space, delta, Regime::corollary});
    out.push_back({"cloud" + std::to_string(n) + "/beta=3delta", space, 3 * delta, Regime::theorem});
  }
  return out;
}

}  // namespace

std::string default_data_dir() { return QMETRIC_DATA_DIR; }

CriterionResult diagonal_recovery(const Options& options) {
  Stopwatch clock;
  CriterionResult r{1, "diagonal-recovery", false, "", 0, 0.0, 10.0};
  Rng rng(derive_seed(options.seed, 1));
  Worst err;
  for (int c = 0; c < 20; ++c) {
    const std::size_t n = 2 + static_cast<std::size_t>(c) % 15;
    const auto space = testing::random_cloud(n, 2, rng);
    const ApproximationPair pair(space, min_separation(space));
    for (int t = 0; t < 100; ++t) {
      const auto f = testing::random_function(n, rng);
      err.see(std::abs(l_seminorm(pair, embed_diagonal(pair.rho(), f)) - lipschitz_seminorm(space, f)));
      ++r.checks;
    }
  }
  r.detail = "20 configs x 100 f, max |L(rho f) - Lip f| = " + num(err.value) + " (tol " + num(kRecoveryTol) + ")";
  return finish(r, clock, err.value <= kRecoveryTol);
}

CriterionResult quasi_leibniz(const Options& options) {
  Stopwatch clock;
  CriterionResult r{2, "quasi-leibniz", false, "", 0, 0.0, 60.0};
  double min_residual = std::numeric_limits<double>::infinity();
  double d_min = std::numeric_limits<double>::infinity();
  double d_max = 0.0;
  const auto configs = leibniz_configurations(derive_seed(options.seed, 2));
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto& cfg = configs[c];
    const ApproximationPair pair(cfg.space, cfg.beta, cfg.regime);
    d_min = std::min(d_min, pair.leibniz_constant());
    d_max = std::max(d_max, pair.leibniz_constant());
    const std::size_t n = pair.dim();
    const auto ball = sample_unit_ball(pair, 256, derive_seed(options.seed, 200 + c));
    Rng rng(derive_seed(options.seed, 100 + c));
    auto draw = [&](int kind) -> MatrixElement {
      switch (kind) {
        case 0: return random_self_adjoint(n, rng);
        case 1: return ball[rng.index(ball.size())];
        default: return embed_diagonal(pair.rho(), testing::random_function(n, rng)) +
                        random_zero_diagonal_self_adjoint(n, rng);
      }
    };
    for (int t = 0; t < 10000; ++t) {
      const auto a = draw(t % 3);
      const auto b = draw((t / 3) % 3);
      const auto res = quasi_leibniz_residual(pair, a, b);
      min_residual = std::min({min_residual, res.jordan, res.lie});
      ++r.checks;
    }
  }
  r.detail = std::to_string(configs.size()) + " configs x 10^4 pairs, D in [" + num(d_min) + ", " + num(d_max) +
             "], min residual = " + num(min_residual) + " (tol -" + num(kLeibnizTol) + ")";
  return finish(r, clock, min_residual >= -kLeibnizTol);
}

CriterionResult reach_certificate(const Options& options) {
  Stopwatch clock;
  CriterionResult r{3, "reach-certificate", false, "", 0, 0.0, 0.0};
  std::vector<Configuration> configs = leibniz_configurations(derive_seed(options.seed, 2));
  for (std::size_t n : {4, 8}) {
    const auto a = approximate_compact_space(Circle{}, n, BetaRule{});
    configs.push_back({"circle" + std::to_string(n), a.net.space, a.beta, Regime::corollary});
  }
  {
    const auto a = approximate_compact_space(Interval{1.0}, 6, BetaRule{});
    configs.push_back({"interval6", a.net.space, a.beta, Regime::corollary});
  }
  double bridge_excess = -std::numeric_limits<double>::infinity();
  double estimate_excess = -std::numeric_limits<double>::infinity();
  double witness_lip = 0.0;
  bool certificate_ok = true;
  Rng rng(derive_seed(options.seed, 3));
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto& cfg = configs[c];
    const ApproximationPair pair(cfg.space, cfg.beta, cfg.regime);
    certificate_ok = certificate_ok && certify_reach_upper(pair).upper_bound == pair.beta();
    const auto ball = sample_unit_ball(pair, 500, derive_seed(options.seed, 300 + c));
    std::vector<RealFunction> lip;
    for (std::size_t x = 0; x < pair.dim(); ++x) lip.emplace_back(cfg.space.distances().row(x).transpose());
    for (int t = 0; t < 50; ++t) {
      const auto f = testing::random_function(pair.dim(), rng);
      lip.emplace_back(f.values() / lipschitz_seminorm(cfg.space, f));
    }
    const auto check = check_reach_witnesses(pair, ball, lip);
    bridge_excess = std::max(bridge_excess, check.max_bridge_norm - pair.beta());
    witness_lip = std::max({witness_lip, check.max_witness_lipschitz, check.max_embedded_l});
    const auto est = estimate_reach_lower(pair, {.samples = 8, .seed = derive_seed(options.seed, 400 + c)});
    estimate_excess = std::max(estimate_excess, est.value - pair.beta());
    r.checks += check.samples + 1;
  }
  r.detail = std::to_string(configs.size()) + " configs, max(bridge norm - beta) = " + num(bridge_excess) +
             " (tol " + num(kBridgeTol) + "), max(estimate - beta) = " + num(estimate_excess) + " (tol " +
             num(kReachEstimateTol) + "), witness Lip max = " + num(witness_lip);
  return finish(r, clock,
                certificate_ok && bridge_excess <= kBridgeTol && estimate_excess <= kReachEstimateTol &&
                    witness_lip <= 1.0 + kBridgeTol);
}

CriterionResult circle_convergence(const Options&) {
  Stopwatch clock;
  CriterionResult r{4, "circle-convergence", false, "", 0, 0.0, 5.0};
  const auto report = convergence_experiment(Circle{2 * pi}, {4, 8, 16, 32, 64}, BetaRule{});
  Worst err;
  for (const auto& row : report.rows) {
    const double n = static_cast<double>(row.n);
    err.see(std::abs(row.certified_bound - (pi / n + 2 * pi / (n * n))));
    ++r.checks;
  }
  const double final_bound = report.rows.back().certified_bound;
  const bool final_ok = final_bound < kFinalBoundLimit;
  r.detail = "max |bound - (pi/n + 2pi/n^2)| = " + num(err.value) + " (tol " + num(kConvergenceTol) +
             "), strictly decreasing = " + (report.strictly_decreasing ? "yes" : "no") + ", final bound (n=64) = " +
             num(final_bound) + (final_ok ? " < " : " NOT < ") + num(kFinalBoundLimit);
  return finish(r, clock, err.value <= kConvergenceTol && report.strictly_decreasing && final_ok);
}

CriterionResult expectation_axioms(const Options& options) {
  Stopwatch clock;
  CriterionResult r{5, "expectation-axioms", false, "", 0, 0.0, 0.0};
  Worst idem, unital, trace, contract, bimodule, lcontract;
  std::size_t instances = 0;

  Rng rng(derive_seed(options.seed, 5));
  for (std::size_t n = 2; n <= 16; ++n) {
    const auto space = testing::random_cloud(n, 2, rng);
    const ApproximationPair pair(space, min_separation(space));
    const auto& e = pair.expectation();
    unital.see(max_abs(pinch(e, MatrixElement::identity(n)).entries() - ComplexMatrix::Identity(n, n)));
    for (int t = 0; t < 1000; ++t) {
      const auto a = random_self_adjoint(n, rng);
      const double scale = std::max(1.0, operator_norm(a));
      const auto ea = pinch(e, a);
      idem.see(max_abs(pinch(e, ea).entries() - ea.entries()) / scale);
      trace.see(std::abs(trace_state(ea) - trace_state(a)) / scale);
      contract.see((operator_norm(ea) - operator_norm(a)) / scale);
      const auto f = embed_diagonal(pair.rho(), testing::random_function(n, rng));
      const auto g = embed_diagonal(pair.rho(), testing::random_function(n, rng));
      const auto lhs = pinch(e, f * a * g);
      bimodule.see(max_abs(lhs.entries() - (f * ea * g).entries()) / std::max(1.0, operator_norm(lhs)));
      lcontract.see((l_seminorm(pair, ea) - l_seminorm(pair, a)) / std::max(1.0, l_seminorm(pair, a)));
      ++r.checks;
    }
    ++instances;
  }

  struct Averaging {
    int q;
    int p;
    TorusSubgroup h;
  };
  std::vector<Averaging> cases;
  for (int q : {3, 4}) {
    for (int p : coprime_residues(q)) {
      for (const auto& h : enumerate_subgroups(q)) cases.push_back({q, p, h});
    }
  }
  for (const auto& gens : std::vector<std::vector<GroupElement>>{
           {}, {{3, 0}}, {{2, 0}}, {{1, 1}}, {{1, 0}}, {{3, 0}, {0, 3}}, {{2, 0}, {0, 2}}, {{1, 0}, {0, 1}}}) {
    cases.push_back({6, 5, TorusSubgroup::generated_by(6, gens)});
  }
  for (const auto& c : cases) {
    const FuzzyTorus torus(c.q, c.p);
    const auto length = LengthFn::max_angle(c.q);
    const AveragingExpectation e(torus, c.h);
    unital.see(max_abs(e(MatrixElement::identity(c.q)).entries() - ComplexMatrix::Identity(c.q, c.q)));
    for (int t = 0; t < 1000; ++t) {
      const auto a = random_self_adjoint(static_cast<std::size_t>(c.q), rng);
      const double scale = std::max(1.0, operator_norm(a));
      const auto ea = e(a);
      idem.see(max_abs(e(ea).entries() - ea.entries()) / scale);
      trace.see(std::abs(trace_state(ea) - trace_state(a)) / scale);
      contract.see((operator_norm(ea) - operator_norm(a)) / scale);
      // Module property over the fixed point algebra itself.
      const auto x = e(random_matrix(static_cast<std::size_t>(c.q), rng));
      const auto y = e(random_matrix(static_cast<std::size_t>(c.q), rng));
      const auto lhs = e(x * a * y);
      bimodule.see(max_abs(lhs.entries() - (x * ea * y).entries()) /
                   std::max(1.0, operator_norm(x) * scale * operator_norm(y)));
      const double la = action_lip_seminorm(torus, length, a);
      lcontract.see((action_lip_seminorm(torus, length, ea) - la) / std::max(1.0, la));
      ++r.checks;
    }
    ++instances;
  }
  const double worst = std::max({idem.value, unital.value, trace.value, contract.value, bimodule.value, lcontract.value});
  r.detail = std::to_string(instances) + " instances x 10^3 elements; worst (relative to max(1, norm)): idempotence " +
             num(idem.value) + ", unitality " + num(unital.value) + ", trace " + num(trace.value) + ", contractivity " +
             num(contract.value) + ", bimodule " + num(bimodule.value) + ", L-contraction " + num(lcontract.value) +
             " (tol " + num(kAxiomTol) + ")";
  return finish(r, clock, worst <= kAxiomTol);
}

CriterionResult mk_oracle(const Options& options) {
  Stopwatch clock;
  CriterionResult r{6, "mk-oracle", false, "", 0, 0.0, 0.0};
  std::vector<std::pair<std::string, FiniteMetricSpace>> corpus;
  const std::filesystem::path dir = options.data_dir.empty() ? default_data_dir() : options.data_dir;
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() == ".txt") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) corpus.emplace_back(f.filename().string(), read_metric_space_file(f.string()));
  const std::size_t file_count = corpus.size();
  for (std::size_t n = 2; n <= 6; ++n) {
    corpus.emplace_back("circle" + std::to_string(n), epsilon_net(Circle{}, n).space);
    corpus.emplace_back("interval" + std::to_string(n), epsilon_net(Interval{}, n).space);
  }
  Rng rng(derive_seed(options.seed, 6));
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int c = 0; c < 3; ++c) corpus.emplace_back("cloud" + std::to_string(n), testing::random_cloud(n, 3, rng));
  }

  Worst err;
  std::size_t spaces = 0;
  for (const auto& [name, space] : corpus) {
    const std::size_t n = space.size();
    if (n > 6) continue;
    ++spaces;
    const auto& d = space.distances();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const auto p = ProbabilityMeasure::dirac(n, x);
        const auto q = ProbabilityMeasure::dirac(n, y);
        err.see(std::abs(mk_distance(space, p, q) - oracle::transport_cost_by_trees(d, p.weights(), q.weights())));
        ++r.checks;
      }
    }
    for (int t = 0; t < 20; ++t) {
      const ProbabilityMeasure p(testing::random_weights(n, rng));
      const ProbabilityMeasure q(testing::random_weights(n, rng));
      err.see(std::abs(mk_distance(space, p, q) - oracle::transport_cost_by_trees(d, p.weights(), q.weights())));
      ++r.checks;
    }
  }
  r.detail = std::to_string(spaces) + " spaces (" + std::to_string(file_count) + " corpus files scanned, <= 6 points kept), " +
             std::to_string(r.checks) + " measure pairs, max |LP - tree oracle| = " + num(err.value) + " (tol " +
             num(kMkTol) + ")";
  return finish(r, clock, file_count > 0 && err.value <= kMkTol);
}

namespace {

// Null-space dimension of a ↦ (a − α^g(a))_{g ≠ e} on sa(M_q), from the
// eigenvalues of the accumulated Gram matrix.
std::size_t action_kernel_dimension(const FuzzyTorus& torus) {
  const int q = torus.order();
  const Eigen::Index dim = q * q;
  std::vector<MatrixElement> basis;
  for (Eigen::Index i = 0; i < dim; ++i) {
    basis.push_back(from_self_adjoint_coordinates(static_cast<std::size_t>(q), Eigen::VectorXd::Unit(dim, i)));
  }
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd column_block(dim, dim);
  for (int j = 0; j < q; ++j) {
    for (int k = 0; k < q; ++k) {
      if (j == 0 && k == 0) continue;
      for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& b = basis[static_cast<std::size_t>(i)];
        column_block.col(i) = self_adjoint_coordinates(b - dual_action(torus, {j, k}, b));
      }
      gram.noalias() += column_block.transpose() * column_block;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  std::size_t null = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::abs(eig.eigenvalues()(i)) <= kKernelRelTol * top) ++null;
  }
  return null;
}

}  // namespace

CriterionResult fuzzy_torus_structure(const Options& options) {
  Stopwatch clock;
  CriterionResult r{7, "fuzzy-torus-structure", false, "", 0, 0.0, 0.0};
  Worst commutation, invariance, full_average;
  double min_residual = std::numeric_limits<double>::infinity();
  bool kernel_ok = true;
  std::size_t instances = 0;
  Rng rng(derive_seed(options.seed, 7));
  for (int q = 2; q <= 12; ++q) {
    const auto length = LengthFn::max_angle(q);
    const auto full = TorusSubgroup::full(q);
    const auto n = static_cast<std::size_t>(q);
    for (int p : coprime_residues(q)) {
      const FuzzyTorus torus(q, p);
      ++instances;
      const auto& u = torus.clock();
      const auto& v = torus.shift();
      commutation.see(max_abs((v * u).entries() - torus.omega() * (u * v).entries()));
      kernel_ok = kernel_ok && action_kernel_dimension(torus) == 1;

      for (int t = 0; t < 3; ++t) {
        const auto a = random_self_adjoint(n, rng);
        const double la = action_lip_seminorm(torus, length, a);
        for (int j = 0; j < q; ++j) {
          for (int k = 0; k < q; ++k) {
            const double moved = action_lip_seminorm(torus, length, dual_action(torus, {j, k}, a));
            invariance.see(std::abs(moved - la) / std::max(1.0, la));
            ++r.checks;
          }
        }
      }
      for (int t = 0; t < 10; ++t) {
        const auto a = random_matrix(n, rng);
        const auto ea = averaging_expectation(torus, full, a);
        full_average.see(max_abs(ea.entries() - trace_state(a) * ComplexMatrix::Identity(q, q)) /
                         std::max(1.0, operator_norm(a)));
        ++r.checks;
      }
      for (int t = 0; t < 1000; ++t) {
        const auto a = random_self_adjoint(n, rng);
        const auto b = random_self_adjoint(n, rng);
        const double la = action_lip_seminorm(torus, length, a);
        const double lb = action_lip_seminorm(torus, length, b);
        const double bound = operator_norm(a) * lb + la * operator_norm(b);
        min_residual = std::min({min_residual, bound - action_lip_seminorm(torus, length, jordan_product(a, b)),
                                 bound - action_lip_seminorm(torus, length, lie_product(a, b))});
        ++r.checks;
      }
    }
  }
  r.detail = std::to_string(instances) + " (q, p) instances; VU - wUV " + num(commutation.value) + ", kernel dim 1 " +
             (kernel_ok ? "everywhere" : "VIOLATED") + ", |L(a^g a) - L(a)| rel " + num(invariance.value) +
             ", E_full - tau " + num(full_average.value) + " (tol " + num(kTorusTol) + "); Leibniz (1,0) min residual " +
             num(min_residual) + " (tol -" + num(kLeibnizTol) + ")";
  return finish(r, clock,
                commutation.value <= kTorusTol && kernel_ok && invariance.value <= kTorusTol &&
                    full_average.value <= kTorusTol && min_residual >= -kLeibnizTol);
}

CriterionResult fixed_point_modulus(const Options& options) {
  Stopwatch clock;
  CriterionResult r{8, "fixed-point-modulus", false, "", 0, 0.0, 60.0};
  const int q = 12;
  const auto length = LengthFn::max_angle(q);
  bool monotone = true;
  bool top_zero = true;
  std::string gaps;
  for (int p : coprime_residues(q)) {
    const FuzzyTorus torus(q, p);
    const auto samples = sample_action_unit_sphere(torus, length, 64, derive_seed(options.seed, 800 + p));
    const auto rows = divisor_chain_sweep(torus, length, samples);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      monotone = monotone && rows[i].gap <= rows[i - 1].gap + kChainTol && rows[i].haus <= rows[i - 1].haus + kChainTol;
    }
    const auto top = TorusSubgroup::first_factor_cyclic(q, q);
    top_zero = top_zero && expectation_gap(torus, top, top, samples) == 0.0 && rows.back().gap == 0.0;
    r.checks += rows.size();
    if (p == 1) {
      for (const auto& row : rows) gaps += (gaps.empty() ? "" : " ") + std::to_string(row.m) + ":" + num(row.gap);
    }
  }
  bool dims_ok = true;
  const FuzzyTorus torus(q, 1);
  const auto subgroups = enumerate_subgroups(q);
  for (const auto& h : subgroups) {
    dims_ok = dims_ok && fixed_subalgebra_basis(torus, h).size() * h.size() == static_cast<std::size_t>(q * q);
    ++r.checks;
  }
  r.detail = "q=12, all p; chain gap weakly decreasing " + std::string(monotone ? "yes" : "NO") + " (tol " +
             num(kChainTol) + "), gap(H_inf, H_inf) = 0 " + (top_zero ? "yes" : "NO") + ", dim*|H| = 144 on " +
             std::to_string(subgroups.size()) + " subgroups " + (dims_ok ? "yes" : "NO") + "; p=1 gaps [" + gaps + "]";
  return finish(r, clock, monotone && top_zero && dims_ok);
}

CriterionResult commutative_cross_check(const Options& options) {
  Stopwatch clock;
  CriterionResult r{9, "commutative-cross-check", false, "", 0, 0.0, 0.0};
  const auto space = epsilon_net(Circle{}, 6).space;
  const auto g = PermutationGroup::generated_by(6, {rotation(6, 1)});
  const auto subgroups = g.subgroups();
  bool dims_ok = true;
  Worst excess;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    const auto report = commutative_fixed_point_check(space, g, subgroups[i], 1000, derive_seed(options.seed, 900 + i));
    dims_ok = dims_ok && report.fixed_dimension == report.orbit_count && report.quotient_size == report.orbit_count &&
              report.orbit_count * subgroups[i].size() == 6;
    excess.see(report.max_lip_excess);
    r.checks += report.samples;
  }
  r.detail = std::to_string(subgroups.size()) + " subgroups of Z_6; dim C(X)^H = |X/H| " + (dims_ok ? "yes" : "NO") +
             ", max Lip(E_H f) - Lip(f) = " + num(excess.value) + " (tol " + num(kLipExcessTol) + ")";
  return finish(r, clock, dims_ok && excess.value <= kLipExcessTol);
}

std::vector<CriterionResult> run_all(const Options& options, const std::vector<int>& only) {
  using Fn = CriterionResult (*)(const Options&);
  const Fn all[] = {diagonal_recovery,  quasi_leibniz,  reach_certificate,     circle_convergence,     expectation_axioms,
                    mk_oracle,          fuzzy_torus_structure, fixed_point_modulus, commutative_cross_check};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    try {
      out.push_back(all[id - 1](options));
    } catch (const std::exception& e) {
      out.push_back({id, "criterion-" + std::to_string(id), false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

std::string format_line(const CriterionResult& result) {
  std::ostringstream out;
  out << (result.passed ? "PASS" : "FAIL") << "  " << result.id << "  " << result.name << "  " << result.detail
      << "  (" << std::fixed << std::setprecision(2) << result.seconds << " s";
  if (result.limit_seconds > 0.0) out << ", limit " << std::setprecision(0) << result.limit_seconds << " s";
  out << ")";
  return out.str();
}

}  // namespace qmetric::acceptance
