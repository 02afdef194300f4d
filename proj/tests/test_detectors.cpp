#include <dissoc/detectors.hpp>

#include <gtest/gtest.h>

using namespace dissoc;

TEST(Negativity, BellAndProduct) {
  EXPECT_NEAR(negativity(ghz(2).rho, parse_partition("A|B", 2)), 0.5, 1e-12);
  Vector v = Vector::Zero(4);
  v(1) = 1.0;
  EXPECT_NEAR(negativity(QOperator::projector(v), parse_partition("A|B", 2)), 0.0, 1e-12);
  EXPECT_NEAR(negativity(max_mixed(3).rho, parse_partition("A|BC", 3)), 0.0, 1e-12);
}

TEST(Npt, GhzGlobalMinEigenvalueClosedForm) {
  // PT of q GHZ + (1 - q) I/2^N has the eigenvalue (1 - q)/2^N - q/2
  for (int n : {3, 4})
    for (double q : {0.1, 0.5, 0.9}) {
      const double expected = (1 - q) / std::ldexp(1.0, n) - q / 2;
      EXPECT_NEAR(pt_min_eigenvalue(ghz(n).rho, NoiseKind::Global, q, {1}), expected, 1e-12);
    }
}

TEST(Npt, GhzGlobalThresholdOracle) {
  for (int n : {3, 4, 6}) {
    const double oracle = 1.0 / (1.0 + std::ldexp(1.0, n - 1));
    const auto r1 = npt_threshold_shape(ghz(n), NoiseKind::Global, 1);
    ASSERT_TRUE(r1.q_threshold);
    EXPECT_NEAR(*r1.q_threshold, oracle, 1e-4) << "n=" << n;
    if (n % 2 == 0) {
      const auto rh = npt_threshold_shape(ghz(n), NoiseKind::Global, n / 2);
      ASSERT_TRUE(rh.q_threshold);
      EXPECT_NEAR(*rh.q_threshold, oracle, 1e-4) << "n=" << n;
      EXPECT_NEAR(rh.spread, 0.0, 1e-12);
    }
  }
}

TEST(Npt, UpbNeverNpt) {
  for (auto noise : {NoiseKind::Local, NoiseKind::Global}) {
    const auto r = npt_threshold_shape(upb3(), noise, 1);
    EXPECT_TRUE(r.never_npt());
    EXPECT_GE(r.min_eig_curve.back().second, 0.0);
  }
}

TEST(Npt, CurveMonotoneForGlobalNoise) {
  for (const auto& st : {ghz(3), w(3), ghz(4), w(4), cluster4()}) {
    const auto r = npt_threshold_shape(st, NoiseKind::Global, 1);
    ASSERT_EQ(r.min_eig_curve.size(), 50u);
    for (std::size_t i = 1; i < 50; ++i)
      EXPECT_LE(r.min_eig_curve[i].second, r.min_eig_curve[i - 1].second + 1e-12) << st.label();
  }
}

TEST(Npt, ThresholdBracketsSignChange) {
  const auto r = npt_threshold_shape(w(3), NoiseKind::Local, 1);
  ASSERT_TRUE(r.q_threshold);
  const auto cut = parse_partition(r.bipartition, 3).part(1);
  EXPECT_GE(pt_min_eigenvalue(w(3).rho, NoiseKind::Local, *r.q_threshold - kNptResolution, cut), 0.0);
  EXPECT_LT(pt_min_eigenvalue(w(3).rho, NoiseKind::Local, *r.q_threshold + kNptResolution, cut), 0.0);
}

TEST(Npt, RejectsBadShapes) {
  EXPECT_THROW(npt_threshold_shape(ghz(4), NoiseKind::Local, 3), std::invalid_argument);
  EXPECT_THROW(npt_threshold(ghz(4), NoiseKind::Local, parse_partition("A|B|CD", 4)), std::invalid_argument);
}

TEST(Witness, BellWitness) {
  const QOperator bell = ghz(2).rho;
  const QOperator xi = 0.5 * QOperator::identity(2) - bell;
  const Partition cut = parse_partition("A|B", 2);
  const auto entangled = witness_check(bell, xi, cut);
  EXPECT_EQ(entangled.verdict, WitnessVerdict::EntangledCertified);
  EXPECT_NEAR(entangled.expectation, -0.5, 1e-12);
  EXPECT_GE(entangled.screen_value, -1e-9);
  EXPECT_EQ(witness_check(max_mixed(2).rho, xi, cut).verdict, WitnessVerdict::Inconclusive);
  // an operator that is not block positive certifies nothing
  EXPECT_EQ(witness_check(bell, -1.0 * bell, cut).verdict, WitnessVerdict::Inconclusive);
}
