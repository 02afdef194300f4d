#pragma once

// Published threshold tables for the local (table 1) and global (table 2)
// depolarizing channels. Columns: ea, b, c, d, dge (largest certified q),
// npt1 and npt_half (q above which the output is NPT across a (1, N-1) or
// (N/2, N/2) cut). A missing value means the cell is undefined; `never` marks
// states whose output stays PPT for every q.

#include <optional>
#include <string>
#include <vector>

namespace dissoc {

struct ReferenceCell {
  int table = 1;  // 1: local noise, 2: global noise
  int n = 0;
  std::string state;
  std::string column;
  std::optional<double> value;
  bool never = false;
};

namespace detail {

struct ReferenceRow {
  int table, n;
  const char* state;
  double ea, b, c, d, dge, npt1, npt_half;  // < 0: undefined, 2: never NPT
};

inline constexpr double kUndef = -1.0;
inline constexpr double kNever = 2.0;

inline constexpr ReferenceRow kReferenceRows[] = {
    {1, 3, "ghz", 0.490, kUndef, kUndef, kUndef, 0.713, 0.557, kUndef},
    {1, 3, "w", 0.485, kUndef, kUndef, kUndef, 0.686, 0.576, kUndef},
    {1, 3, "upb", 0.698, kUndef, kUndef, kUndef, 0.852, kNever, kUndef},
    {1, 3, "all", 0.477, kUndef, kUndef, kUndef, 0.650, kUndef, kUndef},
    {1, 4, "ghz", 0.453, 0.548, 0.553, 0.548, 0.751, 0.578, 0.512},
    {1, 4, "w", 0.447, 0.473, 0.581, 0.473, 0.756, 0.585, 0.548},
    {1, 4, "cluster", 0.444, 0.478, 0.574, 0.478, 0.742, 0.532, 0.550},
    {1, 4, "all", 0.444, 0.472, 0.550, 0.472, 0.715, kUndef, kUndef},
    {1, 6, "ghz", 0.414, 0.433, 0.591, 0.530, 0.826, 0.638, 0.490},
    {2, 3, "ghz", 0.147, kUndef, kUndef, kUndef, 0.402, 0.200, kUndef},
    {2, 3, "w", 0.125, kUndef, kUndef, kUndef, 0.317, 0.210, kUndef},
    {2, 3, "upb", 0.400, kUndef, kUndef, kUndef, 0.690, kNever, kUndef},
    {2, 3, "all", 0.111, kUndef, kUndef, kUndef, 0.289, kUndef, kUndef},
    {2, 4, "ghz", 0.062, 0.202, 0.111, 0.202, 0.262, 0.112, 0.112},
    {2, 4, "w", 0.048, 0.123, 0.124, 0.123, 0.256, 0.127, 0.112},
    {2, 4, "cluster", 0.052, 0.123, 0.109, 0.123, 0.229, 0.112, 0.112},
    {2, 4, "all", 0.047, 0.121, 0.107, 0.121, 0.184, kUndef, kUndef},
    {2, 6, "ghz", 0.011, 0.034, 0.032, 0.046, 0.131, 0.031, 0.031},
};

}  // namespace detail

inline const std::vector<std::string>& reference_columns() {
  static const std::vector<std::string> cols{"ea", "b", "c", "d", "dge", "npt1", "npt_half"};
  return cols;
}

/// Every defined cell, in table order.
inline std::vector<ReferenceCell> reference_cells() {
  std::vector<ReferenceCell> out;
  for (const auto& r : detail::kReferenceRows) {
    const double vals[] = {r.ea, r.b, r.c, r.d, r.dge, r.npt1, r.npt_half};
    for (std::size_t i = 0; i < 7; ++i) {
      if (vals[i] < 0) continue;
      ReferenceCell c{r.table, r.n, r.state, reference_columns()[i], std::nullopt, false};
      if (vals[i] == detail::kNever)
        c.never = true;
      else
        c.value = vals[i];
      out.push_back(std::move(c));
    }
  }
  return out;
}

inline std::optional<ReferenceCell> reference_cell(int table, int n, const std::string& state, const std::string& column) {
  for (auto& c : reference_cells())
    if (c.table == table && c.n == n && c.state == state && c.column == column) return c;
  return std::nullopt;
}

}  // namespace dissoc
