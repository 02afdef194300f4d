#pragma once

// Seesaw search for product vectors with negative expectation value. A
// nonnegative minimum is evidence (not proof) of block-positivity.
//
// block_positivity_heuristic works on any dense operator. PauliDiagonalSeesaw
// handles Omega = 4^-N sum_s w_s P_s (x) P_s^T on (system, clones) with the
// clones as one party, touching only Pauli-coefficient arrays.

#include <dissoc/linalg.hpp>
#include <dissoc/partitions.hpp>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace dissoc {

struct SeesawOptions {
  int restarts = 200;
  int max_sweeps = 200;
  double tol = 1e-13;
  std::uint64_t seed = 1;
};

struct BlockPositivityReport {
  double min_value = std::numeric_limits<double>::infinity();  // best (lowest) value found
  std::vector<Vector> minimizer;                               // one vector per party
  std::vector<double> restart_values;
  bool heuristic = true;
};

namespace detail {

inline Vector random_unit(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

inline Vector min_eigenvector(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  return es.eigenvectors().col(0);
}

}  // namespace detail

/// Seesaw minimization of <v_1 (x) ... (x) v_k| omega |v_1 (x) ... (x) v_k> over
/// unit vectors, one per part of `parties` (a partition of omega's qubit labels).
inline BlockPositivityReport block_positivity_heuristic(const QOperator& omega, const Partition& parties,
                                                        const SeesawOptions& opt = {}) {
  if (!omega.is_hermitian(1e-9)) throw std::invalid_argument("block_positivity_heuristic: omega must be Hermitian");
  if (parties.n() != omega.n_qubits()) throw std::invalid_argument("block_positivity_heuristic: partition size mismatch");
  std::vector<int> order;
  for (const auto& p : parties.parts()) order.insert(order.end(), p.begin(), p.end());
  const Matrix om = permute_qubits(omega, order).matrix();
  const int k = parties.k();
  std::vector<Eigen::Index> dims;
  for (const auto& p : parties.parts()) dims.push_back(Eigen::Index{1} << p.size());

  // V = v_1 (x) .. (x) I_p (x) .. (x) v_k, a D x d_p isometry.
  auto embed_except = [&](const std::vector<Vector>& v, int p) {
    Matrix m = Matrix::Ones(1, 1);
    for (int i = 0; i < k; ++i) {
      const Matrix f = i == p ? Matrix(Matrix::Identity(dims[static_cast<std::size_t>(i)], dims[static_cast<std::size_t>(i)]))
                              : Matrix(v[static_cast<std::size_t>(i)]);
      Matrix next(m.rows() * f.rows(), m.cols() * f.cols());
      for (Eigen::Index a = 0; a < m.rows(); ++a)
        for (Eigen::Index b = 0; b < m.cols(); ++b) next.block(a * f.rows(), b * f.cols(), f.rows(), f.cols()) = m(a, b) * f;
      m = std::move(next);
    }
    return m;
  };
  auto value = [&](const std::vector<Vector>& v) {
    Vector x = Vector::Ones(1);
    for (const auto& vi : v) x = tensor(x, vi);
    return (x.adjoint() * om * x)(0, 0).real();
  };

  BlockPositivityReport rep;
  std::mt19937_64 rng(opt.seed);
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    std::vector<Vector> v;
    for (int i = 0; i < k; ++i) v.push_back(detail::random_unit(dims[static_cast<std::size_t>(i)], rng));
    double cur = value(v);
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      for (int p = 0; p < k; ++p) {
        const Matrix V = embed_except(v, p);
        v[static_cast<std::size_t>(p)] = detail::min_eigenvector(V.adjoint() * om * V);
      }
      const double next = value(v);
      const bool done = cur - next < opt.tol;
      cur = next;
      if (done) break;
    }
    rep.restart_values.push_back(cur);
    if (cur < rep.min_value) {
      rep.min_value = cur;
      rep.minimizer = v;
    }
  }
  return rep;
}

/// Local minimum found by one seesaw restart on a Pauli-diagonal Choi operator.
struct PauliSeesawPoint {
  double value = 0;
  std::vector<Vector> parts;  // one vector per system party
  Vector clone;
  std::vector<double> weights;  // prod_p <v_p|sigma|v_p> * <clone|P_s^T|clone> / 4^N, per string
};

struct PauliSeesawReport {
  double min_value = std::numeric_limits<double>::infinity();
  std::vector<PauliSeesawPoint> points;  // one per restart, ascending by value
  bool heuristic = true;
};

class PauliDiagonalSeesaw {
 public:
  /// parts: partition of the system labels 1..n; the clones form one extra party.
  PauliDiagonalSeesaw(int n, std::vector<std::vector<int>> parts) : n_(n), parts_(std::move(parts)) {
    const std::size_t strings = detail::pow4(n);
    sub_.assign(parts_.size(), std::vector<std::uint32_t>(strings));
    for (std::size_t p = 0; p < parts_.size(); ++p)
      for (std::size_t s = 0; s < strings; ++s) {
        std::size_t sub = 0;
        for (int l : parts_[p]) sub = (sub << 2) | ((s >> (2 * (n - l))) & 3u);
        sub_[p][s] = static_cast<std::uint32_t>(sub);
      }
  }

  int n() const { return n_; }
  const std::vector<std::vector<int>>& parts() const { return parts_; }

  /// w: Pauli multipliers x_s of the diagonal map, one per string.
  PauliSeesawReport minimize(const std::vector<double>& w, const SeesawOptions& opt,
                             const std::vector<PauliSeesawPoint>& warm = {}) const {
    PauliSeesawReport rep;
    std::mt19937_64 rng(opt.seed);
    const int total = std::max(1, opt.restarts) + static_cast<int>(warm.size());
    for (int r = 0; r < total; ++r) {
      std::vector<Vector> v;
      if (r < static_cast<int>(warm.size())) {
        v = warm[static_cast<std::size_t>(r)].parts;
      } else if (r == static_cast<int>(warm.size())) {
        // computational basis start; optimal whenever every party is a single qubit
        for (const auto& p : parts_) {
          Vector e = Vector::Zero(Eigen::Index{1} << p.size());
          e(0) = 1.0;
          v.push_back(e);
        }
      } else {
        for (const auto& p : parts_) v.push_back(detail::random_unit(Eigen::Index{1} << p.size(), rng));
      }
      rep.points.push_back(descend(w, std::move(v), opt));
    }
    std::sort(rep.points.begin(), rep.points.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    rep.min_value = rep.points.front().value;
    return rep;
  }

  /// Value of the product state (parts, clone) on Omega built from w.
  double evaluate(const std::vector<double>& w, const std::vector<Vector>& parts, const Vector& clone) const {
    const auto ep = expectations(parts);
    const auto ec = clone_expectations(clone);
    double acc = 0;
    for (std::size_t s = 0; s < w.size(); ++s) acc += w[s] * product(ep, s) * ec[s];
    return acc / static_cast<double>(w.size());
  }

 private:
  std::vector<std::vector<double>> expectations(const std::vector<Vector>& v) const {
    std::vector<std::vector<double>> e;
    for (const auto& x : v) {
      const auto c = pauli_coefficients(QOperator::projector(x));
      std::vector<double> r(c.size());
      for (std::size_t u = 0; u < c.size(); ++u) r[u] = static_cast<double>(x.size()) * c[u].real();
      e.push_back(std::move(r));
    }
    return e;
  }

  // <chi|P_s^T|chi> = <conj chi|P_s|conj chi>
  std::vector<double> clone_expectations(const Vector& chi) const {
    const auto c = pauli_coefficients(QOperator::projector(chi.conjugate()));
    std::vector<double> r(c.size());
    for (std::size_t s = 0; s < c.size(); ++s) r[s] = static_cast<double>(chi.size()) * c[s].real();
    return r;
  }

  double product(const std::vector<std::vector<double>>& e, std::size_t s, std::size_t skip = SIZE_MAX) const {
    double v = 1.0;
    for (std::size_t p = 0; p < e.size(); ++p)
      if (p != skip) v *= e[p][sub_[p][s]];
    return v;
  }

  PauliSeesawPoint descend(const std::vector<double>& w, std::vector<Vector> v, const SeesawOptions& opt) const {
    const std::size_t strings = w.size();
    const double norm = 1.0 / static_cast<double>(strings);
    auto ep = expectations(v);
    Vector chi;
    std::vector<double> ec;
    double cur = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      {
        std::vector<cplx> c(strings);
        for (std::size_t s = 0; s < strings; ++s) c[s] = norm * w[s] * product(ep, s);
        const Matrix m = from_pauli_coefficients(c, n_).matrix().transpose();
        chi = detail::min_eigenvector(m);
        ec = clone_expectations(chi);
      }
      for (std::size_t p = 0; p < parts_.size(); ++p) {
        const int q = static_cast<int>(parts_[p].size());
        std::vector<cplx> c(detail::pow4(q), cplx(0.0));
        for (std::size_t s = 0; s < strings; ++s) c[sub_[p][s]] += norm * w[s] * product(ep, s, p) * ec[s];
        v[p] = detail::min_eigenvector(from_pauli_coefficients(c, q).matrix());
        ep[p] = expectations({v[p]})[0];
      }
      double next = 0;
      for (std::size_t s = 0; s < strings; ++s) next += norm * w[s] * product(ep, s) * ec[s];
      const bool done = cur - next < opt.tol;
      cur = next;
      if (done) break;
    }
    PauliSeesawPoint pt{cur, std::move(v), chi, std::vector<double>(strings)};
    for (std::size_t s = 0; s < strings; ++s) pt.weights[s] = norm * product(ep, s) * ec[s];
    return pt;
  }

  int n_;
  std::vector<std::vector<int>> parts_;
  std::vector<std::vector<std::uint32_t>> sub_;
};

}  // namespace dissoc
