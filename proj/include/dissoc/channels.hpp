#pragma once

// Depolarizing channels Phi = q Id + (1 - q) Tr on N qubits, applied either
// qubit-wise (local) or on the whole register (global), plus measure-and-prepare
// blocks used to build entanglement-breaking parts of a decomposition.

#include <dissoc/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dissoc {

enum class NoiseKind { Local, Global };

inline std::string to_string(NoiseKind k) { return k == NoiseKind::Local ? "local" : "global"; }

inline NoiseKind parse_noise(const std::string& s) {
  if (s == "local") return NoiseKind::Local;
  if (s == "global") return NoiseKind::Global;
  throw std::invalid_argument("unknown noise '" + s + "' (expected local or global)");
}

struct ChannelSpec {
  NoiseKind kind = NoiseKind::Local;
  int n_qubits = 1;
  double q = 1.0;

  /// Lower end of the CPT range, -(d^2 - 1)^-1 with d = 2 (local) or 2^N (global).
  double cpt_lower_bound() const {
    const double d = kind == NoiseKind::Local ? 2.0 : std::ldexp(1.0, n_qubits);
    return -1.0 / (d * d - 1.0);
  }
};

/// Multiplier applied to a Pauli string of the given weight.
inline double pauli_transfer(const ChannelSpec& ch, int weight) {
  if (weight < 0 || weight > ch.n_qubits) throw std::invalid_argument("Pauli weight out of range");
  if (ch.kind == NoiseKind::Local) return std::pow(ch.q, weight);
  return weight == 0 ? 1.0 : ch.q;
}

/// Range test for complete positivity and trace preservation.
inline bool is_cpt(const ChannelSpec& ch) { return ch.q >= ch.cpt_lower_bound() && ch.q <= 1.0; }

/// Applies the channel through its Pauli-transfer description. Any q is accepted.
inline QOperator apply(const ChannelSpec& ch, const QOperator& x) {
  if (x.n_qubits() != ch.n_qubits) throw std::invalid_argument("channel/operator size mismatch");
  auto c = pauli_coefficients(x);
  std::vector<double> transfer(static_cast<std::size_t>(ch.n_qubits) + 1);
  for (int w = 0; w <= ch.n_qubits; ++w) transfer[static_cast<std::size_t>(w)] = pauli_transfer(ch, w);
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= transfer[static_cast<std::size_t>(pauli_weight(s))];
  QOperator out = from_pauli_coefficients(c, ch.n_qubits);
  if (std::abs(out.trace() - x.trace()) > 1e-10 * std::max(1.0, std::abs(x.trace())))
    throw std::logic_error("depolarizing channel failed to preserve the trace");
  return out;
}

/// Operator on n qubits acting as `a` on `targets` (in the given leg order) and as identity elsewhere.
inline QOperator embed(const QOperator& a, const std::vector<int>& targets, int n) {
  if (a.n_qubits() != static_cast<int>(targets.size())) throw std::invalid_argument("embed: target count mismatch");
  detail::check_labels(targets, n);
  std::vector<int> layout = targets;  // layout[p] = label at position p+1 of tensor(a, I)
  for (int l = 1; l <= n; ++l)
    if (std::find(targets.begin(), targets.end(), l) == targets.end()) layout.push_back(l);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (std::size_t p = 0; p < layout.size(); ++p) order[static_cast<std::size_t>(layout[p] - 1)] = static_cast<int>(p) + 1;
  return permute_qubits(tensor(a, QOperator::identity(n - a.n_qubits())), order);
}

/// Explicit Kraus-mixture route: local applies sum_k p_k sigma_k . sigma_k on each
/// qubit in turn; global applies sum_s p_s Pi_s . Pi_s over all Pauli strings.
inline QOperator apply_kraus(const ChannelSpec& ch, const QOperator& x) {
  const int n = ch.n_qubits;
  if (x.n_qubits() != n) throw std::invalid_argument("channel/operator size mismatch");
  if (ch.kind == NoiseKind::Local) {
    const double p[4] = {(1 + 3 * ch.q) / 4, (1 - ch.q) / 4, (1 - ch.q) / 4, (1 - ch.q) / 4};
    Matrix cur = x.matrix();
    for (int t = 1; t <= n; ++t) {
      Matrix next = Matrix::Zero(cur.rows(), cur.cols());
      for (int k = 0; k < 4; ++k) {
        const Matrix s = embed(QOperator(Matrix(pauli_matrix(k))), {t}, n).matrix();
        next += p[k] * s * cur * s;
      }
      cur = std::move(next);
    }
    return QOperator(std::move(cur));
  }
  const double d2 = std::ldexp(1.0, 2 * n);
  Matrix out = Matrix::Zero(x.dim(), x.dim());
  for (std::size_t s = 0; s < detail::pow4(n); ++s) {
    const double ps = (s == 0 ? ch.q : 0.0) + (1 - ch.q) / d2;
    const Matrix p = pauli_string(pauli_digits(s, n)).matrix();
    out += ps * p * x.matrix() * p;
  }
  return QOperator(std::move(out));
}

/// Choi operator (Phi x Id)(|Psi+><Psi+|) of an n-qubit linear map, qubit order
/// (1..N, 1'..N'): system legs first, clones last.
inline QOperator choi_of_map(const std::function<QOperator(const QOperator&)>& map, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix omega = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix eij = Matrix::Zero(d, d);
      eij(i, j) = 1.0;
      const Matrix out = map(QOperator(eij)).matrix();
      // out (x) |i><j| : system index a, clone index i -> row a*d + i
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) omega(a * d + i, b * d + j) += out(a, b);
    }
  return QOperator(omega / static_cast<double>(d));
}

inline QOperator choi(const ChannelSpec& ch) {
  return choi_of_map([&ch](const QOperator& x) { return apply(ch, x); }, ch.n_qubits);
}

/// Reorders a Choi operator from (1..N, 1'..N') to (1, 1', 2, 2', ...), the
/// layout in which a local channel's Choi operator is a plain tensor product.
inline QOperator interleave_choi(const QOperator& omega) {
  const int n2 = omega.n_qubits();
  if (n2 % 2) throw std::invalid_argument("Choi operator must act on an even number of qubits");
  const int n = n2 / 2;
  std::vector<int> order;
  for (int t = 1; t <= n; ++t) {
    order.push_back(t);
    order.push_back(n + t);
  }
  return permute_qubits(omega, order);
}

// ---------------------------------------------------------------------------
// Measure-and-prepare blocks

/// Rank-one measure-and-prepare operations X -> w_i |psi_i><psi_i| X |psi_i><psi_i|
/// on a group of target qubits.
struct EBBlock {
  std::vector<int> target_qubits;  // 1-based, leg order of the vectors
  std::vector<Vector> vectors;
  std::vector<double> weights;

  /// Largest entry of sum_i w_i |psi_i><psi_i| - I.
  double completeness_error() const {
    const Eigen::Index d = Eigen::Index{1} << target_qubits.size();
    Matrix s = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < vectors.size(); ++i) s += weights[i] * vectors[i] * vectors[i].adjoint();
    return (s - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  }
};

/// <psi|_T x |psi>_T, an operator on the remaining qubits in ascending label order.
inline QOperator contract(const QOperator& x, const std::vector<int>& targets, const Vector& psi) {
  const int n = x.n_qubits();
  detail::check_labels(targets, n);
  if (psi.size() != (Eigen::Index{1} << targets.size())) throw std::invalid_argument("contract: vector size mismatch");
  std::vector<int> order = targets;
  for (int l = 1; l <= n; ++l)
    if (std::find(targets.begin(), targets.end(), l) == targets.end()) order.push_back(l);
  const Matrix y = permute_qubits(x, order).matrix();
  const Eigen::Index dr = Eigen::Index{1} << (n - static_cast<int>(targets.size()));
  Matrix out = Matrix::Zero(dr, dr);
  for (Eigen::Index a = 0; a < psi.size(); ++a)
    for (Eigen::Index b = 0; b < psi.size(); ++b) {
      const cplx w = std::conj(psi(a)) * psi(b);
      if (w != cplx(0.0)) out += w * y.block(a * dr, b * dr, dr, dr);
    }
  return QOperator(std::move(out));
}

/// One measure-and-prepare branch: w_i |psi_i><psi_i|_T (x) <psi_i|x|psi_i>.
inline QOperator eb_apply(const EBBlock& block, std::size_t choice, const QOperator& x) {
  if (choice >= block.vectors.size()) throw std::invalid_argument("eb_apply: choice out of range");
  const int n = x.n_qubits();
  const Vector& psi = block.vectors[choice];
  const QOperator rest = contract(x, block.target_qubits, psi);
  std::vector<int> layout = block.target_qubits;
  for (int l = 1; l <= n; ++l)
    if (std::find(layout.begin(), layout.end(), l) == layout.end() &&
        std::find(block.target_qubits.begin(), block.target_qubits.end(), l) == block.target_qubits.end())
      layout.push_back(l);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (std::size_t p = 0; p < layout.size(); ++p) order[static_cast<std::size_t>(layout[p] - 1)] = static_cast<int>(p) + 1;
  return block.weights[choice] * permute_qubits(tensor(QOperator::projector(psi), rest), order);
}

/// Sum of every branch of the block.
inline QOperator eb_sum(const EBBlock& block, const QOperator& x) {
  QOperator acc(Matrix::Zero(x.dim(), x.dim()));
  for (std::size_t i = 0; i < block.vectors.size(); ++i) acc = acc + eb_apply(block, i, x);
  return acc;
}

}  // namespace dissoc
