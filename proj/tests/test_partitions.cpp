#include <dissoc/partitions.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace dissoc;

namespace {

std::vector<std::string> listing(int n, int k) {
  std::vector<std::string> out;
  for (const auto& p : enumerate_partitions(n, k).entries) out.push_back(p.str());
  return out;
}

// explicit alternating-sum formula
double stirling_by_sum(int n, int k) {
  double acc = 0, fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  for (int m = 0; m <= k; ++m) {
    double binom = 1;
    for (int i = 1; i <= m; ++i) binom = binom * (k - m + i) / i;
    acc += (m % 2 ? -1.0 : 1.0) * binom * std::pow(k - m, n);
  }
  return acc / fact;
}

}  // namespace

TEST(Partitions, ThreeBodyListings) {
  EXPECT_EQ(listing(3, 1), (std::vector<std::string>{"ABC"}));
  EXPECT_EQ(listing(3, 2), (std::vector<std::string>{"A|BC", "B|AC", "C|AB"}));
  EXPECT_EQ(listing(3, 3), (std::vector<std::string>{"A|B|C"}));
}

TEST(Partitions, FourBodyListings) {
  EXPECT_EQ(listing(4, 1), (std::vector<std::string>{"ABCD"}));
  EXPECT_EQ(listing(4, 2), (std::vector<std::string>{"A|BCD", "B|ACD", "C|ABD", "D|ABC", "AB|CD", "AC|BD", "AD|BC"}));
  EXPECT_EQ(listing(4, 3), (std::vector<std::string>{"A|B|CD", "A|C|BD", "A|D|BC", "B|C|AD", "B|D|AC", "C|D|AB"}));
  EXPECT_EQ(listing(4, 4), (std::vector<std::string>{"A|B|C|D"}));
}

TEST(Partitions, IndexedAccess) {
  const auto cat = enumerate_partitions(4, 3);
  EXPECT_EQ(cat.at(5).str(), "B|D|AC");
  EXPECT_EQ(cat.at(5).part(2), (std::vector<int>{4}));
  EXPECT_THROW(cat.at(7), std::out_of_range);
}

TEST(Partitions, StirlingCountsUpToEight) {
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) {
      EXPECT_EQ(static_cast<double>(stirling2(n, k)), stirling_by_sum(n, k)) << n << "," << k;
      EXPECT_EQ(enumerate_partitions(n, k).size(), stirling2(n, k)) << n << "," << k;
    }
  EXPECT_THROW(stirling2(3, 0), std::invalid_argument);
  EXPECT_THROW(stirling2(3, 4), std::invalid_argument);
}

TEST(Partitions, EntriesAreDistinctAndCover) {
  for (int n = 2; n <= 7; ++n)
    for (int k = 1; k <= n; ++k) {
      std::set<std::string> seen;
      for (const auto& p : enumerate_partitions(n, k).entries) {
        EXPECT_EQ(p.k(), k);
        int total = 0;
        for (const auto& part : p.parts()) total += static_cast<int>(part.size());
        EXPECT_EQ(total, n);
        EXPECT_TRUE(seen.insert(p.str()).second);
      }
    }
}

TEST(Partitions, Normalization) {
  const Partition p(4, {{3, 1}, {4}, {2}});
  EXPECT_EQ(p.str(), "B|D|AC");
  EXPECT_EQ(parse_partition("AC|D|B", 4), p);
  EXPECT_THROW(Partition(3, {{1, 2}, {2, 3}}), std::invalid_argument);
  EXPECT_THROW(Partition(3, {{1, 2}}), std::invalid_argument);
  EXPECT_THROW(parse_partition("A|E", 4), std::invalid_argument);
}

TEST(Partitions, SpecialFamilies) {
  EXPECT_EQ(symmetric_bipartitions(4).size(), 3u);
  EXPECT_EQ(symmetric_bipartitions(6).size(), 10u);
  EXPECT_EQ(pair_partitions(4).size(), 3u);
  EXPECT_EQ(pair_partitions(6).size(), 15u);
  EXPECT_THROW(pair_partitions(5), std::invalid_argument);
  EXPECT_THROW(symmetric_bipartitions(3), std::invalid_argument);
}
