#pragma once

// Dense complex operator algebra for small multiqubit systems.
//
// Qubits are labelled 1..N. Qubit 1 is the most significant bit of a
// computational-basis index, so |b_1 b_2 ... b_N> has index
// sum_t b_t 2^(N-t).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dissoc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-9;

namespace detail {

inline int log2_exact(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("operator dimension must be positive");
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d <<= 1;
    ++n;
  }
  if (d != dim) throw std::invalid_argument("operator dimension " + std::to_string(dim) + " is not a power of two");
  return n;
}

inline std::size_t pow4(int n) { return std::size_t{1} << (2 * n); }

}  // namespace detail

/// Square complex matrix acting on n_qubits qubits (dim == 2^n_qubits).
class QOperator {
 public:
  QOperator() : m_(Matrix::Identity(1, 1)), n_qubits_(0) {}

  explicit QOperator(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("operator matrix must be square");
    n_qubits_ = detail::log2_exact(m_.rows());
  }

  static QOperator identity(int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    return QOperator(Matrix::Identity(d, d));
  }

  static QOperator projector(const Vector& v) { return QOperator(v * v.adjoint()); }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

  cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }
  cplx trace() const { return m_.trace(); }

  bool is_hermitian(double tol = kHermitianTol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  QOperator adjoint() const { return QOperator(m_.adjoint()); }
  QOperator transpose() const { return QOperator(m_.transpose()); }

  /// Largest entrywise distance to another operator of the same size.
  double distance(const QOperator& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    return (m_ - other.m_).cwiseAbs().maxCoeff();
  }

  friend QOperator operator+(const QOperator& a, const QOperator& b) { return QOperator(a.m_ + b.m_); }
  friend QOperator operator-(const QOperator& a, const QOperator& b) { return QOperator(a.m_ - b.m_); }
  friend QOperator operator*(const QOperator& a, const QOperator& b) { return QOperator(a.m_ * b.m_); }
  friend QOperator operator*(cplx s, const QOperator& a) { return QOperator(s * a.m_); }
  friend QOperator operator*(double s, const QOperator& a) { return QOperator(s * a.m_); }

 private:
  Matrix m_;
  int n_qubits_;
};

/// Kronecker product; qubits of `a` come first.
inline QOperator tensor(const QOperator& a, const QOperator& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
  return QOperator(std::move(out));
}

inline Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

namespace detail {

inline void check_labels(const std::vector<int>& labels, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int l : labels) {
    if (l < 1 || l > n) throw std::invalid_argument("qubit label " + std::to_string(l) + " out of range 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(l - 1)]) throw std::invalid_argument("repeated qubit label " + std::to_string(l));
    seen[static_cast<std::size_t>(l - 1)] = true;
  }
}

// Bit position (from the least significant end) of qubit label l in an n-qubit index.
inline int bit_of(int label, int n) { return n - label; }

}  // namespace detail

/// Reorders tensor legs: output qubit i+1 is input qubit order[i] (1-based labels).
inline QOperator permute_qubits(const QOperator& x, const std::vector<int>& order) {
  const int n = x.n_qubits();
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("permutation size mismatch");
  detail::check_labels(order, n);
  const Eigen::Index d = x.dim();
  std::vector<Eigen::Index> map(static_cast<std::size_t>(d));
  for (Eigen::Index out = 0; out < d; ++out) {
    Eigen::Index in = 0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Index bit = (out >> detail::bit_of(i + 1, n)) & 1;
      in |= bit << detail::bit_of(order[static_cast<std::size_t>(i)], n);
    }
    map[static_cast<std::size_t>(out)] = in;
  }
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = x(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]);
  return QOperator(std::move(m));
}

inline Vector permute_qubits(const Vector& v, const std::vector<int>& order) {
  const int n = detail::log2_exact(v.size());
  detail::check_labels(order, n);
  Vector out(v.size());
  for (Eigen::Index o = 0; o < v.size(); ++o) {
    Eigen::Index in = 0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Index bit = (o >> detail::bit_of(i + 1, n)) & 1;
      in |= bit << detail::bit_of(order[static_cast<std::size_t>(i)], n);
    }
    out(o) = v(in);
  }
  return out;
}

/// Traces out every qubit not in `keep`. Kept qubits retain their relative order.
/// An empty `keep` yields the 1x1 operator holding tr(x).
inline QOperator partial_trace(const QOperator& x, std::vector<int> keep) {
  const int n = x.n_qubits();
  detail::check_labels(keep, n);
  std::sort(keep.begin(), keep.end());
  std::vector<int> traced;
  for (int l = 1; l <= n; ++l)
    if (!std::binary_search(keep.begin(), keep.end(), l)) traced.push_back(l);
  const int nk = static_cast<int>(keep.size());
  const int nt = static_cast<int>(traced.size());
  const Eigen::Index dk = Eigen::Index{1} << nk, dt = Eigen::Index{1} << nt;

  auto compose = [&](Eigen::Index kidx, Eigen::Index tidx) {
    Eigen::Index full = 0;
    for (int i = 0; i < nk; ++i)
      full |= ((kidx >> (nk - 1 - i)) & 1) << detail::bit_of(keep[static_cast<std::size_t>(i)], n);
    for (int i = 0; i < nt; ++i)
      full |= ((tidx >> (nt - 1 - i)) & 1) << detail::bit_of(traced[static_cast<std::size_t>(i)], n);
    return full;
  };
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      cplx s = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) s += x(compose(r, t), compose(c, t));
      out(r, c) = s;
    }
  return QOperator(std::move(out));
}

/// Transposes the tensor factors listed in `subset` (computational basis).
inline QOperator partial_transpose(const QOperator& x, const std::vector<int>& subset) {
  const int n = x.n_qubits();
  detail::check_labels(subset, n);
  Eigen::Index mask = 0;
  for (int l : subset) mask |= Eigen::Index{1} << detail::bit_of(l, n);
  const Eigen::Index d = x.dim();
  Matrix out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      const Eigen::Index swap = (r ^ c) & mask;
      out(r ^ swap, c ^ swap) = x(r, c);
    }
  return QOperator(std::move(out));
}

// ---------------------------------------------------------------------------
// Pauli basis

/// Single-qubit Pauli matrix: 0 = I, 1 = X, 2 = Y, 3 = Z.
inline Eigen::Matrix2cd pauli_matrix(int i) {
  const cplx I{0.0, 1.0};
  Eigen::Matrix2cd m;
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("Pauli index must be 0..3");
  }
  return m;
}

/// Pauli-string index: string (i_1..i_N) maps to sum_t i_t 4^(N-t).
inline std::vector<int> pauli_digits(std::size_t index, int n) {
  std::vector<int> d(static_cast<std::size_t>(n));
  for (int t = n - 1; t >= 0; --t) {
    d[static_cast<std::size_t>(t)] = static_cast<int>(index & 3);
    index >>= 2;
  }
  return d;
}

inline std::size_t pauli_index(const std::vector<int>& digits) {
  std::size_t idx = 0;
  for (int d : digits) idx = (idx << 2) | static_cast<std::size_t>(d);
  return idx;
}

inline int pauli_weight(std::size_t index) {
  int w = 0;
  for (; index; index >>= 2) w += (index & 3) != 0;
  return w;
}

inline QOperator pauli_string(const std::vector<int>& digits) {
  Matrix m = Matrix::Identity(1, 1);
  for (int d : digits) {
    Matrix next(m.rows() * 2, m.cols() * 2);
    const Eigen::Matrix2cd p = pauli_matrix(d);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = m(i, j) * p;
    m = std::move(next);
  }
  return QOperator(std::move(m));
}

/// Real Pauli expansion X = sum_s coeffs[s] Pi_s, with coeffs[s] = 2^-N tr(Pi_s X).
struct PauliTable {
  int n_qubits = 0;
  std::vector<double> coeffs;

  double operator[](std::size_t s) const { return coeffs[s]; }
  double at(const std::vector<int>& digits) const { return coeffs.at(pauli_index(digits)); }
};

namespace detail {

// Leg-local state of (row bit, col bit) is 2*r + c. Coefficients satisfy
// M = sum_i c_i sigma_i with c_i = tr(sigma_i M)/2.
inline void leg_to_pauli(const cplx* m, cplx* c) {
  const cplx I{0.0, 1.0};
  c[0] = 0.5 * (m[0] + m[3]);
  c[1] = 0.5 * (m[1] + m[2]);
  c[2] = 0.5 * I * (m[1] - m[2]);
  c[3] = 0.5 * (m[0] - m[3]);
}

inline void leg_from_pauli(const cplx* c, cplx* m) {
  const cplx I{0.0, 1.0};
  m[0] = c[0] + c[3];
  m[1] = c[1] - I * c[2];
  m[2] = c[1] + I * c[2];
  m[3] = c[0] - c[3];
}

// Gathers x into leg-interleaved layout: digit t (base 4, most significant first) = 2 r_t + c_t.
inline std::vector<cplx> interleave(const Matrix& x, int n) {
  const Eigen::Index d = x.rows();
  std::vector<cplx> out(pow4(n));
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      std::size_t idx = 0;
      for (int t = 0; t < n; ++t) {
        const int b = n - 1 - t;
        idx = (idx << 2) | static_cast<std::size_t>(2 * ((r >> b) & 1) + ((c >> b) & 1));
      }
      out[idx] = x(r, c);
    }
  return out;
}

inline Matrix deinterleave(const std::vector<cplx>& v, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix x(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      std::size_t idx = 0;
      for (int t = 0; t < n; ++t) {
        const int b = n - 1 - t;
        idx = (idx << 2) | static_cast<std::size_t>(2 * ((r >> b) & 1) + ((c >> b) & 1));
      }
      x(r, c) = v[idx];
    }
  return x;
}

template <typename LegOp>
void apply_along_legs(std::vector<cplx>& v, int n, LegOp op) {
  std::array<cplx, 4> in{}, out{};
  for (int t = 0; t < n; ++t) {
    const std::size_t stride = std::size_t{1} << (2 * (n - 1 - t));
    for (std::size_t base = 0; base < v.size(); ++base) {
      if ((base / stride) % 4 != 0) continue;
      for (std::size_t k = 0; k < 4; ++k) in[k] = v[base + k * stride];
      op(in.data(), out.data());
      for (std::size_t k = 0; k < 4; ++k) v[base + k * stride] = out[k];
    }
  }
}

}  // namespace detail

/// Complex Pauli coefficients of an arbitrary operator, factor-by-factor in O(N 4^N).
inline std::vector<cplx> pauli_coefficients(const QOperator& x) {
  const int n = x.n_qubits();
  std::vector<cplx> v = detail::interleave(x.matrix(), n);
  detail::apply_along_legs(v, n, detail::leg_to_pauli);
  return v;
}

inline QOperator from_pauli_coefficients(const std::vector<cplx>& coeffs, int n) {
  if (coeffs.size() != detail::pow4(n)) throw std::invalid_argument("Pauli table size mismatch");
  std::vector<cplx> v = coeffs;
  detail::apply_along_legs(v, n, detail::leg_from_pauli);
  return QOperator(detail::deinterleave(v, n));
}

inline PauliTable to_pauli(const QOperator& x) {
  if (!x.is_hermitian(1e-10)) throw std::invalid_argument("to_pauli requires a Hermitian operator");
  const auto c = pauli_coefficients(x);
  PauliTable t{x.n_qubits(), std::vector<double>(c.size())};
  std::transform(c.begin(), c.end(), t.coeffs.begin(), [](cplx z) { return z.real(); });
  return t;
}

/// Reference O(16^N) evaluation of 2^-N tr(Pi_s X) for every string.
inline PauliTable to_pauli_direct(const QOperator& x) {
  if (!x.is_hermitian(1e-10)) throw std::invalid_argument("to_pauli requires a Hermitian operator");
  const int n = x.n_qubits();
  PauliTable t{n, std::vector<double>(detail::pow4(n))};
  const double norm = 1.0 / static_cast<double>(x.dim());
  for (std::size_t s = 0; s < t.coeffs.size(); ++s)
    t.coeffs[s] = norm * (pauli_string(pauli_digits(s, n)).matrix() * x.matrix()).trace().real();
  return t;
}

inline QOperator from_pauli(const PauliTable& t) {
  std::vector<cplx> c(t.coeffs.begin(), t.coeffs.end());
  return from_pauli_coefficients(c, t.n_qubits);
}

// ---------------------------------------------------------------------------
// Spectra and positivity

inline Eigen::VectorXd eigenvalues(const QOperator& x) {
  const Matrix h = 0.5 * (x.matrix() + x.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Smallest eigenvalue of the Hermitian part of x.
inline double min_eigenvalue(const QOperator& x) { return eigenvalues(x)(0); }

inline double min_eigenvalue(const Matrix& h) {
  if (h.rows() == 1) return h(0, 0).real();
  if (h.rows() == 2) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double m = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    return m - r;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Coefficients C_0..C_d of the recurrence C_k = (1/k) sum_{l=1}^k (-1)^(l-1) C_{k-l} tr(X^l).
/// They are the elementary symmetric polynomials of the eigenvalues.
inline std::vector<double> characteristic_coefficients(const Matrix& x) {
  const Eigen::Index d = x.rows();
  std::vector<double> power_traces(static_cast<std::size_t>(d) + 1, 0.0);
  Matrix p = x;
  for (Eigen::Index l = 1; l <= d; ++l) {
    power_traces[static_cast<std::size_t>(l)] = p.trace().real();
    if (l < d) p = p * x;
  }
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c[0] = 1.0;
  for (Eigen::Index k = 1; k <= d; ++k) {
    double s = 0.0;
    for (Eigen::Index l = 1; l <= k; ++l)
      s += ((l % 2) ? 1.0 : -1.0) * c[static_cast<std::size_t>(k - l)] * power_traces[static_cast<std::size_t>(l)];
    c[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
  }
  return c;
}

enum class PsdVerdict { Psd, NotPsd, Undecided };

/// Characteristic-coefficient test on X + tol*I. Decides only when every C_k
/// clears a rounding margin; otherwise reports Undecided.
inline PsdVerdict psd_by_coefficients(const Matrix& x, double tol = kPsdTol) {
  const Eigen::Index d = x.rows();
  const Matrix shifted = x + tol * Matrix::Identity(d, d);
  const auto c = characteristic_coefficients(shifted);
  // spectral-radius bound from the largest even power trace
  double scale = shifted.norm();
  Matrix p = shifted * shifted;
  for (Eigen::Index l = 2; l <= d; l += 2, p = p * shifted * shifted)
    scale = std::min(scale, std::pow(std::max(p.trace().real(), 0.0), 1.0 / static_cast<double>(l)));
  scale = std::max(scale, 1e-300);
  double binom = 1.0, power = 1.0;
  bool all_clear = true;
  for (Eigen::Index k = 1; k <= d; ++k) {
    binom = binom * static_cast<double>(d - k + 1) / static_cast<double>(k);
    power *= scale;
    const double margin = 1e3 * static_cast<double>(d) * 2.2e-16 * binom * power;
    const double ck = c[static_cast<std::size_t>(k)];
    if (ck < -margin) return PsdVerdict::NotPsd;
    if (ck <= margin) all_clear = false;
  }
  return all_clear ? PsdVerdict::Psd : PsdVerdict::Undecided;
}

inline bool is_psd_eigen(const Matrix& x, double tol = kPsdTol) { return min_eigenvalue(Matrix(0.5 * (x + x.adjoint()))) >= -tol; }

/// PSD test: the coefficient recurrence is tried first; undecided cases fall
/// back to the eigenvalue path.
inline bool is_psd(const QOperator& x, double tol = kPsdTol) {
  if (!x.is_hermitian(1e-10)) throw std::invalid_argument("is_psd requires a Hermitian operator");
  switch (psd_by_coefficients(x.matrix(), tol)) {
    case PsdVerdict::Psd: return true;
    case PsdVerdict::NotPsd: return false;
    case PsdVerdict::Undecided: break;
  }
  return is_psd_eigen(x.matrix(), tol);
}

}  // namespace dissoc
