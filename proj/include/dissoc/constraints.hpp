#pragma once

// Positivity constraints on the kept part of every block: for each tuple of
// SIC vectors on the measured parts, <psi_tuple| Xi_b[rho] |psi_tuple> >= 0.
// Each constraint is affine in f and stored as one Hermitian matrix per unknown.

#include <dissoc/decomposition.hpp>
#include <dissoc/parallel.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace dissoc {

inline constexpr double kSymmetryTol = 1e-12;

/// Label permutations leaving rho invariant, as maps pi[l-1] = image of l.
inline std::vector<std::vector<int>> invariance_group(const QOperator& rho, double tol = kSymmetryTol) {
  const int n = rho.n_qubits();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> group;
  do {
    if ((permute_qubits(rho, perm).matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= tol) group.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return group;
}

namespace detail {

struct BlockShape {
  std::vector<int> kept;
  std::vector<std::vector<int>> eb;  // sorted list of measured parts
  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

inline BlockShape shape_of(const Block& b) {
  BlockShape s{b.kept, {}};
  for (const auto& e : b.eb) s.eb.push_back(e.qubits);
  std::sort(s.eb.begin(), s.eb.end());
  return s;
}

/// Relabeled shape, or nothing when pi scrambles the leg order of a multi-qubit measured part.
inline std::optional<BlockShape> relabel(const Block& b, const std::vector<int>& pi) {
  BlockShape s;
  for (int l : b.kept) s.kept.push_back(pi[static_cast<std::size_t>(l - 1)]);
  std::sort(s.kept.begin(), s.kept.end());
  for (const auto& e : b.eb) {
    std::vector<int> img;
    for (int l : e.qubits) img.push_back(pi[static_cast<std::size_t>(l - 1)]);
    if (!std::is_sorted(img.begin(), img.end())) return std::nullopt;
    s.eb.push_back(std::move(img));
  }
  std::sort(s.eb.begin(), s.eb.end());
  return s;
}

}  // namespace detail

/// Indices of one block per symmetry orbit, in geometry order.
inline std::vector<std::size_t> representative_blocks(const std::vector<Block>& blocks,
                                                      const std::vector<std::vector<int>>& group) {
  std::vector<std::size_t> reps;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto target = detail::shape_of(blocks[b]);
    bool covered = false;
    for (std::size_t r : reps) {
      for (const auto& pi : group) {
        const auto img = detail::relabel(blocks[r], pi);
        if (img && *img == target) {
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered) reps.push_back(b);
  }
  return reps;
}

struct ConstraintItem {
  std::size_t block = 0;      // index into ConstraintSet::blocks
  std::vector<int> choice;    // SIC vector index per measured part
  std::vector<Matrix> basis;  // M(f) = sum_k f_k basis[k]

  Matrix at(const Eigen::VectorXd& f) const {
    Matrix m = Matrix::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (f(static_cast<Eigen::Index>(k)) != 0.0) m += f(static_cast<Eigen::Index>(k)) * basis[k];
    return m;
  }
};

struct ConstraintSet {
  DissociationClass cls = DissociationClass::EA;
  int n = 0;
  std::vector<Block> blocks;
  std::vector<std::size_t> used_blocks;
  std::size_t group_order = 1;
  std::vector<Profile> unknowns;
  std::vector<ConstraintItem> items;

  std::size_t size() const { return items.size(); }
};

namespace detail {

/// Measured legs first (in part order), kept legs last.
inline std::vector<int> measured_first_order(const Block& b) {
  std::vector<int> order;
  for (const auto& e : b.eb) order.insert(order.end(), e.qubits.begin(), e.qubits.end());
  order.insert(order.end(), b.kept.begin(), b.kept.end());
  return order;
}

/// Every SIC tuple of the block, as (choice, product vector).
inline std::vector<std::pair<std::vector<int>, Vector>> sic_tuples(const Block& b) {
  std::vector<std::pair<std::vector<int>, Vector>> out;
  std::vector<int> choice(b.eb.size(), 0);
  for (;;) {
    Vector v = Vector::Ones(1);
    for (std::size_t p = 0; p < b.eb.size(); ++p)
      v = tensor(v, sic_vectors(b.eb[p].sic_dim).vectors[static_cast<std::size_t>(choice[p])]);
    out.emplace_back(choice, std::move(v));
    std::size_t p = b.eb.size();
    while (p > 0) {
      --p;
      const int d = b.eb[p].sic_dim;
      if (++choice[p] < d * d) break;
      choice[p] = 0;
      if (p == 0) return out;
    }
    if (b.eb.empty()) return out;
  }
}

/// <psi| y |psi> where y has the measured legs first and psi spans them.
inline Matrix contract_leading(const Matrix& y, const Vector& psi) {
  const Eigen::Index dr = y.rows() / psi.size();
  Matrix out = Matrix::Zero(dr, dr);
  for (Eigen::Index a = 0; a < psi.size(); ++a) {
    if (psi(a) == cplx(0.0)) continue;
    Matrix row = Matrix::Zero(dr, dr);
    for (Eigen::Index b = 0; b < psi.size(); ++b)
      if (psi(b) != cplx(0.0)) row += psi(b) * y.block(a * dr, b * dr, dr, dr);
    out += std::conj(psi(a)) * row;
  }
  return 0.5 * (out + out.adjoint());
}

}  // namespace detail

/// Constraint set for a concrete input state. With dedup, only one block per
/// orbit of the state's label-permutation symmetry is kept.
inline ConstraintSet constraint_set(DissociationClass c, int n, const QOperator& rho, bool dedup = true, int threads = 1) {
  if (rho.n_qubits() != n) throw std::invalid_argument("constraint_set: state size does not match n");
  ConstraintSet cs;
  cs.cls = c;
  cs.n = n;
  cs.blocks = block_geometry(c, n);
  cs.unknowns = build_system(c, n, NoiseKind::Local).unknowns;
  if (dedup) {
    const auto group = invariance_group(rho);
    cs.group_order = group.size();
    cs.used_blocks = representative_blocks(cs.blocks, group);
  } else {
    cs.used_blocks.resize(cs.blocks.size());
    std::iota(cs.used_blocks.begin(), cs.used_blocks.end(), std::size_t{0});
  }
  const auto coeffs = pauli_coefficients(rho);
  const std::size_t u = cs.unknowns.size();

  std::vector<std::vector<ConstraintItem>> per_block(cs.used_blocks.size());
  parallel_for(cs.used_blocks.size(), threads, [&](std::size_t i) {
    const Block& b = cs.blocks[cs.used_blocks[i]];
    const std::uint32_t special = b.special_mask();
    const int ns = static_cast<int>(b.special.size());
    std::vector<std::vector<cplx>> split(u, std::vector<cplx>(coeffs.size(), cplx(0.0)));
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
      const Profile p = profile_of(support_mask(s, n), special, ns, n);
      const auto it = std::find(cs.unknowns.begin(), cs.unknowns.end(), p);
      if (it == cs.unknowns.end()) throw std::logic_error("Pauli string with a profile outside the unknown set");
      split[static_cast<std::size_t>(it - cs.unknowns.begin())][s] = cplx(coeffs[s].real(), 0.0);
    }
    const auto order = detail::measured_first_order(b);
    std::vector<Matrix> parts(u);
    for (std::size_t k = 0; k < u; ++k) parts[k] = permute_qubits(from_pauli_coefficients(split[k], n), order).matrix();
    for (auto& [choice, psi] : detail::sic_tuples(b)) {
      ConstraintItem item{cs.used_blocks[i], choice, {}};
      for (std::size_t k = 0; k < u; ++k) item.basis.push_back(detail::contract_leading(parts[k], psi));
      per_block[i].push_back(std::move(item));
    }
  });
  for (auto& v : per_block)
    for (auto& item : v) cs.items.push_back(std::move(item));
  return cs;
}

}  // namespace dissoc
