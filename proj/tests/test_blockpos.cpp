#include "helpers.hpp"

#include <dissoc/blockpos.hpp>
#include <dissoc/states.hpp>

#include <gtest/gtest.h>

using namespace dissoc;

namespace {

const Partition kTwoParties = parse_partition("A|B", 2);

// 4^-N sum_s w_s P_s (x) P_s^T, clones after the system
QOperator dense_omega(const std::vector<double>& w, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix out = Matrix::Zero(d * d, d * d);
  for (std::size_t s = 0; s < w.size(); ++s) {
    const Matrix p = pauli_string(pauli_digits(s, n)).matrix();
    out += w[s] * test::kron(p, p.transpose());
  }
  return QOperator(out / std::pow(4.0, n));
}

std::vector<double> random_weights(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> w(detail::pow4(n));
  for (double& x : w) x = u(rng);
  w[0] = 1.0;
  return w;
}

}  // namespace

TEST(BlockPositivity, PsdOperatorsStayNonnegative) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix g = test::random_matrix(8, rng);
    const QOperator psd(g * g.adjoint());
    EXPECT_GE(block_positivity_heuristic(psd, parse_partition("A|B|C", 3)).min_value, -1e-12);
  }
}

TEST(BlockPositivity, BellProjectorValues) {
  const QOperator bell = ghz(2).rho;
  // -|phi+><phi+| reaches -1/2 on |00>; its partial transpose (swap/2) is block positive with minimum 0
  SeesawOptions opt;
  opt.restarts = 50;
  EXPECT_NEAR(block_positivity_heuristic(-1.0 * bell, kTwoParties, opt).min_value, -0.5, 1e-9);
  const double swap_min = block_positivity_heuristic(partial_transpose(bell, {1}), kTwoParties, opt).min_value;
  EXPECT_GE(swap_min, -1e-12);
  EXPECT_LE(swap_min, 1e-9);
}

TEST(BlockPositivity, MoreRestartsNeverWorse) {
  std::mt19937_64 rng(2);
  const QOperator h(test::random_hermitian(8, rng));
  SeesawOptions one, many;
  one.restarts = 1;
  many.restarts = 200;
  const auto r1 = block_positivity_heuristic(h, parse_partition("A|B|C", 3), one);
  const auto r200 = block_positivity_heuristic(h, parse_partition("A|B|C", 3), many);
  EXPECT_LE(r200.min_value, r1.min_value + 1e-12);
  EXPECT_EQ(r200.restart_values.size(), 200u);
  EXPECT_TRUE(r200.heuristic);
}

TEST(PauliSeesaw, EvaluateMatchesDenseOperator) {
  const int n = 2;
  const auto w = random_weights(n, 3);
  const QOperator omega = dense_omega(w, n);
  const PauliDiagonalSeesaw s(n, {{1}, {2}});
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector a = test::random_state_vector(2, rng), b = test::random_state_vector(2, rng),
                 c = test::random_state_vector(4, rng);
    const Vector v = tensor(tensor(a, b), c);
    EXPECT_NEAR(s.evaluate(w, {a, b}, c), (v.adjoint() * omega.matrix() * v)(0, 0).real(), 1e-12);
  }
}

TEST(PauliSeesaw, AgreesWithDenseSeesaw) {
  for (std::uint64_t seed : {5, 6, 7}) {
    const int n = 2;
    const auto w = random_weights(n, seed);
    const PauliDiagonalSeesaw s(n, {{1}, {2}});
    SeesawOptions opt;
    opt.restarts = 100;
    const double pauli = s.minimize(w, opt).min_value;
    const double dense = block_positivity_heuristic(dense_omega(w, n), parse_partition("A|B|CD", 4), opt).min_value;
    EXPECT_NEAR(pauli, dense, 1e-7) << "seed " << seed;
  }
}

TEST(PauliSeesaw, PointsSortedAndWarmStartsKept) {
  const auto w = random_weights(3, 8);
  const PauliDiagonalSeesaw s(3, {{1, 2}, {3}});
  SeesawOptions opt;
  opt.restarts = 10;
  const auto first = s.minimize(w, opt);
  ASSERT_EQ(first.points.size(), 10u);
  for (std::size_t i = 1; i < first.points.size(); ++i) EXPECT_LE(first.points[i - 1].value, first.points[i].value);
  const auto again = s.minimize(w, opt, {first.points.front()});
  EXPECT_EQ(again.points.size(), 11u);
  EXPECT_LE(again.min_value, first.min_value + 1e-12);
}
