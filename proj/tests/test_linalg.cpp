#include "helpers.hpp"

#include <dissoc/linalg.hpp>
#include <dissoc/states.hpp>

#include <gtest/gtest.h>

using namespace dissoc;
using dissoc::test::kron;

TEST(QOperator, RejectsNonPowerOfTwo) {
  EXPECT_THROW(QOperator(Matrix::Identity(3, 3)), std::invalid_argument);
  EXPECT_THROW(QOperator(Matrix::Zero(2, 4)), std::invalid_argument);
  EXPECT_EQ(QOperator(Matrix::Identity(8, 8)).n_qubits(), 3);
}

TEST(QOperator, TensorMatchesKron) {
  std::mt19937_64 rng(3);
  const Matrix a = test::random_matrix(2, rng), b = test::random_matrix(4, rng);
  EXPECT_LT((tensor(QOperator(a), QOperator(b)).matrix() - kron(a, b)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PartialTrace, GhzMarginals) {
  const auto g = ghz(3).rho;
  EXPECT_LT((partial_trace(g, {1}).matrix() - 0.5 * Matrix::Identity(2, 2)).norm(), 1e-14);
  Matrix two = Matrix::Zero(4, 4);
  two(0, 0) = two(3, 3) = 0.5;
  EXPECT_LT((partial_trace(g, {1, 2}).matrix() - two).norm(), 1e-14);
  EXPECT_LT((partial_trace(g, {2, 3}).matrix() - two).norm(), 1e-14);
  EXPECT_NEAR(partial_trace(g, {}).trace().real(), 1.0, 1e-14);
}

TEST(PartialTrace, ProductStateFactorizes) {
  std::mt19937_64 rng(5);
  const Vector a = test::random_state_vector(2, rng), b = test::random_state_vector(2, rng),
               c = test::random_state_vector(2, rng);
  const auto rho = QOperator::projector(tensor(tensor(a, b), c));
  EXPECT_LT((partial_trace(rho, {2}).matrix() - b * b.adjoint()).norm(), 1e-13);
  EXPECT_LT((partial_trace(rho, {1, 3}).matrix() - kron(a * a.adjoint(), c * c.adjoint())).norm(), 1e-13);
}

TEST(PartialTranspose, BellStateMinimumEigenvalue) {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const auto pt = partial_transpose(QOperator::projector(bell), {2});
  EXPECT_NEAR(min_eigenvalue(pt), -0.5, 1e-14);
  // transposing both sides is the full transpose
  const auto full = partial_transpose(QOperator::projector(bell), {1, 2});
  EXPECT_LT((full.matrix() - QOperator::projector(bell).matrix().transpose()).norm(), 1e-14);
}

TEST(PermuteQubits, SwapsProductFactors) {
  Vector v = Vector::Zero(4);
  v(0b01) = 1;  // |0>|1>
  const Vector w = permute_qubits(v, {2, 1});
  EXPECT_NEAR(std::abs(w(0b10)), 1.0, 1e-15);
  std::mt19937_64 rng(11);
  const Matrix a = test::random_matrix(2, rng), b = test::random_matrix(2, rng), c = test::random_matrix(2, rng);
  const auto p = permute_qubits(QOperator(kron(kron(a, b), c)), {3, 1, 2});
  EXPECT_LT((p.matrix() - kron(kron(c, a), b)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Pauli, IndexConventionFirstQubitMostSignificant) {
  EXPECT_EQ(pauli_index({1, 0}), 4u);
  EXPECT_EQ(pauli_digits(4, 2), (std::vector<int>{1, 0}));
  EXPECT_EQ(pauli_weight(pauli_index({0, 3, 0, 2})), 2);
  EXPECT_LT((pauli_string({1, 3}).matrix() - kron(pauli_matrix(1), pauli_matrix(3))).norm(), 1e-15);
}

TEST(Pauli, RoundTripUpToSixQubits) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    const QOperator x(test::random_hermitian(Eigen::Index{1} << n, rng));
    const auto back = from_pauli(to_pauli(x));
    EXPECT_LT((back.matrix() - x.matrix()).cwiseAbs().maxCoeff(), 1e-12) << "n = " << n;
  }
}

TEST(Pauli, FastTransformMatchesTraceFormula) {
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 3; ++n) {
    const QOperator x(test::random_hermitian(Eigen::Index{1} << n, rng));
    const auto fast = to_pauli(x), direct = to_pauli_direct(x);
    ASSERT_EQ(fast.coeffs.size(), direct.coeffs.size());
    for (std::size_t s = 0; s < fast.coeffs.size(); ++s) {
      const double oracle = (pauli_string(pauli_digits(s, n)).matrix() * x.matrix()).trace().real() / std::ldexp(1.0, n);
      EXPECT_NEAR(fast.coeffs[s], oracle, 1e-12);
      EXPECT_NEAR(direct.coeffs[s], oracle, 1e-12);
    }
  }
}

TEST(Pauli, NonHermitianRejected) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(to_pauli(QOperator(m)), std::invalid_argument);
}

TEST(Psd, CoefficientRecurrenceAgreesWithEigenvalues) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int undecided = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index d = 8;
    Eigen::VectorXd lam(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      double v = unif(rng);
      if (std::abs(v) < 0.05) v = std::copysign(0.05, v);
      lam(i) = v;
    }
    if (trial % 2 == 0) lam = lam.cwiseAbs();  // half of the cases are PSD
    const Matrix u = test::random_unitary(d, rng);
    const Matrix x = u * lam.cast<cplx>().asDiagonal() * u.adjoint();
    const bool by_eigen = is_psd_eigen(x);
    ASSERT_EQ(by_eigen, lam.minCoeff() >= 0);
    const auto verdict = psd_by_coefficients(x);
    if (verdict == PsdVerdict::Undecided)
      ++undecided;
    else
      EXPECT_EQ(verdict == PsdVerdict::Psd, by_eigen) << "trial " << trial;
    EXPECT_EQ(is_psd(QOperator(x)), by_eigen);
  }
  EXPECT_LT(undecided, 20);
}

TEST(Psd, CharacteristicCoefficientsAreElementarySymmetric) {
  Eigen::VectorXd lam(3);
  lam << 1.0, 2.0, -3.0;
  const auto c = characteristic_coefficients(lam.cast<cplx>().asDiagonal().toDenseMatrix());
  EXPECT_NEAR(c[1], 0.0, 1e-12);    // 1 + 2 - 3
  EXPECT_NEAR(c[2], -7.0, 1e-12);   // 2 - 3 - 6
  EXPECT_NEAR(c[3], -6.0, 1e-12);
}

TEST(Psd, ToleranceBoundary) {
  Matrix x = Matrix::Identity(2, 2);
  x(1, 1) = -5e-10;
  EXPECT_TRUE(is_psd(QOperator(x)));
  x(1, 1) = -5e-9;
  EXPECT_FALSE(is_psd(QOperator(x)));
}
