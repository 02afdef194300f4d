#include "helpers.hpp"

#include <dissoc/decomposition.hpp>
#include <dissoc/sic.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace dissoc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

class SicDims : public ::testing::TestWithParam<int> {};

TEST_P(SicDims, OverlapsAndFrame) {
  const int d = GetParam();
  const SicSet& s = sic_vectors(d);
  ASSERT_EQ(s.vectors.size(), static_cast<std::size_t>(d * d));
  double worst = 0;
  for (std::size_t i = 0; i < s.vectors.size(); ++i) {
    EXPECT_NEAR(s.vectors[i].squaredNorm(), 1.0, 1e-12);
    for (std::size_t j = 0; j < s.vectors.size(); ++j)
      if (i != j) worst = std::max(worst, std::abs(std::norm(s.vectors[i].dot(s.vectors[j])) - 1.0 / (d + 1)));
  }
  EXPECT_LT(worst, 1e-9);
  EXPECT_TRUE(verify_sic(s).ok());
}

TEST_P(SicDims, MeasureAndPrepareIsDepolarizing) {
  const int d = GetParam();
  const int k = detail::log2_exact(d);
  std::vector<int> targets;
  for (int t = 1; t <= k; ++t) targets.push_back(t);
  const EBBlock b = sic_block(targets, sic_vectors(d));
  EXPECT_LT(b.completeness_error(), 1e-9);
  std::mt19937_64 rng(static_cast<unsigned>(d));
  const QOperator x(test::random_hermitian(d, rng));
  const ChannelSpec dep{NoiseKind::Global, k, 1.0 / (d + 1)};
  EXPECT_LT(eb_sum(b, x).distance(apply(dep, x)), 1e-9);
}

TEST_P(SicDims, TransferTableIsFlat) {
  const int d = GetParam();
  const auto& t = sic_transfer_table(d);
  ASSERT_EQ(t.size(), static_cast<std::size_t>(d * d));
  EXPECT_NEAR(t[0], 1.0, 1e-12);
  for (std::size_t s = 1; s < t.size(); ++s) EXPECT_NEAR(t[s], 1.0 / (d + 1), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(All, SicDims, ::testing::Values(2, 4, 8));

TEST(Sic, MeasureAndPrepareOnEmbeddedTargets) {
  // SIC on qubits {3, 1} of a 3-qubit operator acts as depolarizing there and as identity on qubit 2
  std::mt19937_64 rng(5);
  const QOperator x(test::random_hermitian(8, rng));
  const EBBlock b = sic_block({3, 1}, sic_vectors(4));
  const auto out = pauli_coefficients(eb_sum(b, x));
  const auto in = pauli_coefficients(x);
  for (std::size_t s = 0; s < in.size(); ++s) {
    const auto digits = pauli_digits(s, 3);
    const double m = (digits[0] || digits[2]) ? 0.2 : 1.0;
    EXPECT_LT(std::abs(out[s] - m * in[s]), 1e-9);
  }
}

TEST(Sic, DataFilesMatchEmbeddedCopies) {
  EXPECT_EQ(slurp(std::string(DISSOC_DATA_DIR) + "/sic/fiducial_d4.txt"), fiducial_data::kDim4);
  EXPECT_EQ(slurp(std::string(DISSOC_DATA_DIR) + "/sic/fiducial_d8.txt"), fiducial_data::kDim8);
  int dim = 0;
  const Vector f = load_fiducial_file(std::string(DISSOC_DATA_DIR) + "/sic/fiducial_d8.txt", dim);
  EXPECT_EQ(dim, 8);
  EXPECT_NEAR(f.norm(), 1.0, 1e-12);
}

TEST(Sic, RejectsUnsupportedDimensionsAndBadText) {
  EXPECT_THROW(sic_vectors(3), std::invalid_argument);
  EXPECT_THROW(sic_block({1}, sic_vectors(4)), std::invalid_argument);
  int dim = 0;
  EXPECT_THROW(parse_fiducial(std::string("dim=2\n1 0\n"), dim), std::runtime_error);
  EXPECT_THROW(parse_fiducial(std::string("d=2\n1 0\n0 0\n"), dim), std::runtime_error);
}
