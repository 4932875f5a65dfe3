#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qmetric/bridge.hpp"
#include "qmetric/error.hpp"
#include "support/fixtures.hpp"

using namespace qmetric;
using qmetric::testing::random_cloud;
using qmetric::testing::random_function;

namespace {

constexpr double pi = std::numbers::pi;

double max_off_diagonal(const MatrixElement& a) {
  ComplexMatrix m = a.entries();
  m.diagonal().setZero();
  return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(UnitPivotBridge, MatrixToDiagonal) {
  const auto bridge = UnitPivotBridge::matrix_to_diagonal(3);
  EXPECT_EQ(bridge.height(), 0.0);
  EXPECT_EQ(bridge.pivot().entries(), ComplexMatrix::Identity(3, 3));
  Rng rng(1);
  const auto a = random_self_adjoint(3, rng);
  EXPECT_EQ(bridge.embed_left(a).entries(), a.entries());
  try {
    bridge.embed_right(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_in_subalgebra);
  }
  const auto f = random_function(3, rng);
  EXPECT_EQ(bridge.embed_right(f).entries(), embed_diagonal(DiagonalEmbedding(3), f).entries());
  EXPECT_THROW(bridge.embed_left(MatrixElement::identity(2)), Error);
}

TEST(UnitPivotBridge, SubalgebrasChecksMembershipOnBothSides) {
  const ExpectationOntoDiagonal e(3);
  const auto bridge = UnitPivotBridge::subalgebras(
      3, [](const MatrixElement& a) { return a; }, [e](const MatrixElement& a) { return pinch(e, a); });
  Rng rng(2);
  const auto a = random_self_adjoint(3, rng);
  EXPECT_NO_THROW(bridge.embed_left(a));
  EXPECT_THROW(bridge.embed_right(a), Error);
  EXPECT_NO_THROW(bridge.embed_right(pinch(e, a)));
}

TEST(BridgeNorm, Examples) {
  const auto bridge = UnitPivotBridge::matrix_to_diagonal(2);
  const RealFunction f(Eigen::Vector2d(1.0, -2.0));
  const auto rf = embed_diagonal(DiagonalEmbedding(2), f);
  EXPECT_EQ(bridge_norm(bridge, rf, f), 0.0);
  EXPECT_NEAR(bridge_norm(bridge, MatrixElement::zero(2), f), 2.0, 1e-14);
  EXPECT_NEAR(bridge_norm(bridge, MatrixElement::identity(2), rf), 3.0, 1e-14);
}

TEST(ReachCertificate, EqualsBetaWithBothWitnesses) {
  Rng rng(3);
  const auto space = random_cloud(5, 2, rng);
  const ApproximationPair p(space, 0.4 * min_separation(space));
  const auto cert = certify_reach_upper(p);
  EXPECT_EQ(cert.upper_bound, p.beta());
  EXPECT_EQ(cert.to_matrices.worst_case, 0.0);
  EXPECT_EQ(cert.to_functions.worst_case, p.beta());
  EXPECT_FALSE(cert.to_functions.witness.empty());
}

TEST(ReachCertificate, WitnessesHoldOnSamples) {
  Rng rng(4);
  for (int config = 0; config < 6; ++config) {
    const auto space = random_cloud(3 + config, 2, rng);
    const ApproximationPair p(space, min_separation(space));
    const auto ball = sample_unit_ball(p, 100, 7 + config);
    std::vector<RealFunction> lip;
    for (int t = 0; t < 50; ++t) {
      auto f = random_function(space.size(), rng);
      const double l = lipschitz_seminorm(space, f);
      lip.emplace_back(f.values() / l);
    }
    const auto check = check_reach_witnesses(p, ball, lip);
    EXPECT_EQ(check.samples, 150U);
    EXPECT_LE(check.max_bridge_norm, p.beta() * (1 + 1e-12));
    EXPECT_LE(check.max_witness_lipschitz, 1.0 + 1e-12);
    EXPECT_LE(check.max_embedded_l, 1.0 + 1e-12);
  }
}

TEST(InnerInfimum, TwoPointHoppingIsExact) {
  // For a Hermitian 2x2 matrix the norm dominates the off-diagonal entry,
  // so f = 0 is optimal for β(e12 + e21).
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;
  const ApproximationPair p(FiniteMetricSpace(qmetric::testing::labels(2), d), 0.5);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 0.5;
  EXPECT_NEAR(inner_infimum_estimate(p, MatrixElement(m)), 0.5, 1e-12);
}

TEST(InnerInfimum, BracketedByEntryAndOffDiagonalNorm) {
  Rng rng(5);
  for (int config = 0; config < 5; ++config) {
    const auto space = random_cloud(4 + config, 2, rng);
    const ApproximationPair p(space, min_separation(space));
    for (const auto& a : sample_unit_ball(p, 12, 50 + config)) {
      const double v = inner_infimum_estimate(p, a);
      const auto diag = pinch(p.expectation(), a);
      EXPECT_LE(v, operator_norm(a - diag) * (1 + 1e-12) + 1e-15);
      EXPECT_GE(v, max_off_diagonal(a) * (1 - 1e-12));
    }
  }
}

TEST(ReachEstimate, BelowCertificate) {
  Rng rng(6);
  const auto space = random_cloud(6, 2, rng);
  const ApproximationPair p(space, min_separation(space));
  const auto est = estimate_reach_lower(p, {.samples = 24, .seed = 9});
  EXPECT_EQ(est.samples, 24U);
  EXPECT_GT(est.value, 0.0);
  EXPECT_LE(est.value, p.beta() * (1 + 1e-12));
  EXPECT_STREQ(ReachEstimate::label, "sampled, not certified");
  const auto again = estimate_reach_lower(p, {.samples = 24, .seed = 9});
  EXPECT_EQ(again.value, est.value);
}

TEST(BetaRule, Values) {
  EXPECT_DOUBLE_EQ((BetaRule{}).beta(0.5, 10), 0.05);
  EXPECT_EQ((BetaRule{BetaRule::Kind::fixed, 0.3}).beta(0.5, 10), 0.3);
  EXPECT_EQ((BetaRule{BetaRule::Kind::fraction_of_delta, 0.5}).beta(0.5, 10), 0.25);
  EXPECT_THROW((BetaRule{BetaRule::Kind::fixed, 0.0}).beta(0.5, 10), Error);
  EXPECT_THROW((BetaRule{BetaRule::Kind::fraction_of_delta, -1.0}).beta(0.5, 10), Error);
  EXPECT_THROW((BetaRule{BetaRule::Kind::fraction_of_delta, 1.5}).beta(0.5, 10), Error);
  EXPECT_EQ((BetaRule{BetaRule::Kind::fraction_of_delta, 1.0}).beta(0.5, 10), 0.5);
  EXPECT_EQ((BetaRule{}).describe(), "delta_over_n");
}

TEST(ApproximateCompactSpace, CircleCertificate) {
  for (std::size_t n : {4, 8, 16, 32}) {
    const auto a = approximate_compact_space(Circle{}, n, BetaRule{});
    const double nd = static_cast<double>(n);
    EXPECT_NEAR(a.haus, pi / nd, 1e-12);
    EXPECT_NEAR(a.beta, 2 * pi / (nd * nd), 1e-12);
    EXPECT_NEAR(a.certified_bound, pi / nd + 2 * pi / (nd * nd), 1e-12);
    EXPECT_EQ(a.pair.dim(), n);
  }
}

TEST(ApproximateCompactSpace, CorollaryViolationAndTheoremMode) {
  const BetaRule big{BetaRule::Kind::fixed, 10.0};
  try {
    approximate_compact_space(Circle{}, 8, big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::corollary_mode_violation);
  }
  const auto a = approximate_compact_space(Circle{}, 8, big, Regime::theorem);
  EXPECT_NEAR(a.pair.leibniz_constant(), 1 + 10.0 / (2 * pi / 8), 1e-12);
}

TEST(Convergence, CircleSweepDecreases) {
  const auto report = convergence_experiment(Circle{}, {4, 8, 16, 32}, BetaRule{});
  ASSERT_EQ(report.rows.size(), 4U);
  EXPECT_TRUE(report.strictly_decreasing);
  EXPECT_TRUE(report.non_increasing);
  for (const auto& row : report.rows) {
    const double n = static_cast<double>(row.n);
    EXPECT_NEAR(row.certified_bound, pi / n + 2 * pi / (n * n), 1e-12);
    EXPECT_NEAR(row.delta, 2 * pi / n, 1e-12);
  }
  EXPECT_THROW(convergence_experiment(Circle{}, {}, BetaRule{}), Error);
  EXPECT_THROW(convergence_experiment(Circle{}, {8, 4}, BetaRule{}), Error);
}

TEST(Convergence, IntervalAndTorus) {
  const auto interval = convergence_experiment(Interval{2.0}, {2, 4, 8}, BetaRule{});
  EXPECT_TRUE(interval.strictly_decreasing);
  EXPECT_NEAR(interval.rows[0].haus, 0.5, 1e-12);
  const auto torus = convergence_experiment(FlatTorus{}, {4, 16, 64}, BetaRule{});
  EXPECT_TRUE(torus.strictly_decreasing);
  EXPECT_NEAR(torus.rows[1].haus, pi / 4, 1e-12);
}

TEST(TriangleAssembly, HoldsAndDominatesDirect) {
  for (const auto& [n, m] : {std::pair<std::size_t, std::size_t>{8, 12}, {16, 5}, {6, 6}}) {
    const auto t = triangle_assembly(Circle{}, n, m, BetaRule{});
    EXPECT_TRUE(t.holds);
    EXPECT_GE(t.via_second_net, t.direct - 1e-12);
  }
  const auto same = triangle_assembly(Circle{}, 6, 6, BetaRule{});
  EXPECT_NEAR(same.net_leg, 0.0, 1e-12);
}
