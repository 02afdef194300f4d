#pragma once

// Set partitions of qubit labels {1..N}.
//
// A partition is normalized with its parts sorted by size, ties broken by the
// smallest label. Catalogs list partitions by their part-size profile first,
// then lexicographically by the normalized parts, and are indexed from 1.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dissoc {

class Partition {
 public:
  Partition() = default;

  Partition(int n, std::vector<std::vector<int>> parts) : n_(n), parts_(std::move(parts)) {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (auto& p : parts_) {
      if (p.empty()) throw std::invalid_argument("partition parts must be non-empty");
      std::sort(p.begin(), p.end());
      for (int l : p) {
        if (l < 1 || l > n) throw std::invalid_argument("label " + std::to_string(l) + " outside 1.." + std::to_string(n));
        ++count[static_cast<std::size_t>(l - 1)];
      }
    }
    for (int c : count)
      if (c != 1) throw std::invalid_argument("parts must be disjoint and cover every label");
    std::sort(parts_.begin(), parts_.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
    });
  }

  int n() const { return n_; }
  int k() const { return static_cast<int>(parts_.size()); }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  /// 1-based part access.
  const std::vector<int>& part(int m) const { return parts_.at(static_cast<std::size_t>(m - 1)); }

  std::vector<int> sizes() const {
    std::vector<int> s;
    for (const auto& p : parts_) s.push_back(static_cast<int>(p.size()));
    return s;
  }

  /// "B|D|AC" style rendering, qubit 1 -> 'A'.
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += '|';
      for (int l : parts_[i]) out += static_cast<char>('A' + l - 1);
    }
    return out;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.n_ == b.n_ && a.parts_ == b.parts_; }

  /// Catalog order: size profile, then parts lexicographically.
  friend bool operator<(const Partition& a, const Partition& b) {
    const auto sa = a.sizes(), sb = b.sizes();
    if (sa != sb) return sa < sb;
    return a.parts_ < b.parts_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> parts_;
};

/// Parses "A|BC"-style text.
inline Partition parse_partition(const std::string& text, int n) {
  std::vector<std::vector<int>> parts(1);
  for (char ch : text) {
    if (ch == '|') {
      parts.emplace_back();
    } else if (ch >= 'A' && ch <= 'Z') {
      parts.back().push_back(ch - 'A' + 1);
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + ch + "' in partition");
    }
  }
  return Partition(n, std::move(parts));
}

struct PartitionCatalog {
  int n = 0;
  int k = 0;
  std::vector<Partition> entries;

  std::size_t size() const { return entries.size(); }
  /// 1-based index j, matching the P_j^k convention.
  const Partition& at(int j) const { return entries.at(static_cast<std::size_t>(j - 1)); }
};

/// Stirling number of the second kind S(n, k), via the triangle recurrence.
inline std::uint64_t stirling2(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("stirling2 requires 1 <= k <= n");
  if (n > 25) throw std::invalid_argument("stirling2: n too large");
  std::vector<std::vector<std::uint64_t>> s(static_cast<std::size_t>(n) + 1,
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) s[i][j] = static_cast<std::uint64_t>(j) * s[i - 1][j] + s[i - 1][j - 1];
  return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

namespace detail {

// Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
inline void growth_strings(int n, int k, std::vector<int>& a, int i, int used, std::vector<Partition>& out) {
  if (i == n) {
    if (used != k) return;
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(k));
    for (int t = 0; t < n; ++t) parts[static_cast<std::size_t>(a[static_cast<std::size_t>(t)])].push_back(t + 1);
    out.emplace_back(n, std::move(parts));
    return;
  }
  if (used + (n - i) < k) return;
  for (int b = 0; b <= std::min(used, k - 1); ++b) {
    a[static_cast<std::size_t>(i)] = b;
    growth_strings(n, k, a, i + 1, std::max(used, b + 1), out);
  }
}

}  // namespace detail

inline PartitionCatalog enumerate_partitions(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("enumerate_partitions requires 1 <= k <= n");
  if (n > 12) throw std::invalid_argument("partitions of more than 12 labels are not supported");
  PartitionCatalog cat{n, k, {}};
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  detail::growth_strings(n, k, a, 0, 0, cat.entries);
  std::sort(cat.entries.begin(), cat.entries.end());
  return cat;
}

/// Bipartitions into two halves of size n/2.
inline PartitionCatalog symmetric_bipartitions(int n) {
  if (n < 2 || n % 2) throw std::invalid_argument("symmetric_bipartitions requires an even n >= 2");
  auto all = enumerate_partitions(n, 2);
  PartitionCatalog cat{n, 2, {}};
  for (auto& p : all.entries)
    if (p.part(1).size() == static_cast<std::size_t>(n / 2)) cat.entries.push_back(std::move(p));
  return cat;
}

/// Partitions into n/2 parts of exactly two labels.
inline PartitionCatalog pair_partitions(int n) {
  if (n < 2 || n % 2) throw std::invalid_argument("pair_partitions requires an even n >= 2");
  auto all = enumerate_partitions(n, n / 2);
  PartitionCatalog cat{n, n / 2, {}};
  for (auto& p : all.entries) {
    const auto s = p.sizes();
    if (std::all_of(s.begin(), s.end(), [](int x) { return x == 2; })) cat.entries.push_back(std::move(p));
  }
  return cat;
}

}  // namespace dissoc
