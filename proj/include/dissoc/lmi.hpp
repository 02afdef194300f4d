#pragma once

// maximize t  subject to  A_j0 + sum_i y_i A_ji - t I >= 0  for every j,
//
// solved with a primal log-barrier path-following method. The objective
// (smallest eigenvalue of an affine matrix family) is concave in y, so a
// single run finds the global optimum; no restarts are needed.

#include <dissoc/linalg.hpp>
#include <dissoc/parallel.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace dissoc {

/// Hermitian matrix family M(y) = terms[0] + sum_i y_i terms[i + 1].
struct AffineHermitian {
  std::vector<Matrix> terms;

  Eigen::Index dim() const { return terms.front().rows(); }

  Matrix at(const Eigen::VectorXd& y) const {
    Matrix m = terms[0];
    for (Eigen::Index i = 0; i < y.size(); ++i)
      if (y(i) != 0.0) m += y(i) * terms[static_cast<std::size_t>(i) + 1];
    return m;
  }
};

struct LmiOptions {
  /// Stop as soon as t reaches this value (feasible for our purposes).
  double stop_above = std::numeric_limits<double>::infinity();
  /// Stop once the barrier upper bound on t falls below this value.
  double stop_below = -std::numeric_limits<double>::infinity();
  double box = 1e5;  // |y_i| <= box, in the reduced orthonormal coordinates
  double gap_tol = 1e-11;
  int max_newton = 60;
  int max_outer = 40;
  int threads = 1;
};

struct LmiResult {
  Eigen::VectorXd y;
  double t = -std::numeric_limits<double>::infinity();  // min eigenvalue achieved at y
  double upper_bound = std::numeric_limits<double>::infinity();
  int newton_steps = 0;
  bool hit_box = false;
};

namespace detail {

struct BarrierEval {
  double value = 0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  bool ok = true;
};

}  // namespace detail

inline double worst_min_eigenvalue(const std::vector<AffineHermitian>& lmis, const Eigen::VectorXd& y, int threads = 1) {
  std::vector<double> mins(lmis.size());
  parallel_for(lmis.size(), threads, [&](std::size_t j) { mins[j] = min_eigenvalue(lmis[j].at(y)); });
  double worst = std::numeric_limits<double>::infinity();
  for (double m : mins) worst = std::min(worst, m);
  return worst;
}

inline LmiResult maximize_min_eigenvalue(const std::vector<AffineHermitian>& lmis, int p, const LmiOptions& opt = {}) {
  LmiResult res;
  // Restrict to directions that move at least one matrix; other directions are irrelevant.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(p, p);
  for (const auto& l : lmis)
    for (int a = 0; a < p; ++a)
      for (int b = a; b < p; ++b) {
        const double g = (l.terms[static_cast<std::size_t>(a) + 1].array().conjugate() *
                          l.terms[static_cast<std::size_t>(b) + 1].array())
                             .sum()
                             .real();
        gram(a, b) += g;
        if (a != b) gram(b, a) += g;
      }
  Eigen::MatrixXd basis(p, 0);
  if (p > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < p; ++i)
      if (es.eigenvalues()(i) > 1e-22 * std::max(top, 1e-300) && top > 0) keep.push_back(i);
    basis.resize(p, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  }
  const int r = static_cast<int>(basis.cols());

  // Reduced problem data: B_j0 = A_j0, B_jc = sum_i basis(i,c) A_ji.
  std::vector<std::vector<Matrix>> red(lmis.size());
  for (std::size_t j = 0; j < lmis.size(); ++j) {
    red[j].push_back(lmis[j].terms[0]);
    for (int c = 0; c < r; ++c) {
      Matrix m = Matrix::Zero(lmis[j].dim(), lmis[j].dim());
      for (int i = 0; i < p; ++i)
        if (basis(i, c) != 0.0) m += basis(i, c) * lmis[j].terms[static_cast<std::size_t>(i) + 1];
      red[j].push_back(std::move(m));
    }
  }

  double m_total = 2.0 * r + 1.0;
  for (const auto& l : lmis) m_total += static_cast<double>(l.dim());

  Eigen::VectorXd w = Eigen::VectorXd::Zero(r);
  double t0 = std::numeric_limits<double>::infinity();
  for (const auto& l : lmis) t0 = std::min(t0, min_eigenvalue(l.terms[0]));
  if (lmis.empty()) t0 = 0.0;
  const double scale = std::max(1.0, std::abs(t0));
  double t = t0 - scale;
  const double cap = std::isfinite(opt.stop_above) ? opt.stop_above + scale : t0 + 10 * scale + 1.0;

  auto evaluate = [&](const Eigen::VectorXd& wv, double tv, double tau, bool want_derivs) {
    detail::BarrierEval ev;
    const int nv = r + 1;
    if (tv >= cap) {
      ev.ok = false;
      return ev;
    }
    for (int c = 0; c < r; ++c)
      if (std::abs(wv(c)) >= opt.box) {
        ev.ok = false;
        return ev;
      }
    std::vector<double> vals(red.size(), 0.0);
    std::vector<Eigen::VectorXd> grads(want_derivs ? red.size() : 0);
    std::vector<Eigen::MatrixXd> hesses(want_derivs ? red.size() : 0);
    std::vector<char> fine(red.size(), 1);
    parallel_for(red.size(), opt.threads, [&](std::size_t j) {
      const auto& b = red[j];
      const Eigen::Index d = b[0].rows();
      Matrix f = b[0];
      for (int c = 0; c < r; ++c) f += wv(c) * b[static_cast<std::size_t>(c) + 1];
      f.diagonal().array() -= tv;
      Eigen::LLT<Matrix> llt(f);
      if (llt.info() != Eigen::Success) {
        fine[j] = 0;
        return;
      }
      const Matrix& L = llt.matrixL();
      double logdet = 0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double diag = L(k, k).real();
        if (!(diag > 0)) {
          fine[j] = 0;
          return;
        }
        logdet += 2 * std::log(diag);
      }
      vals[j] = -logdet;
      if (!want_derivs) return;
      // W_c = F^{-1} A_c, with A_t = -I.
      std::vector<Matrix> W(static_cast<std::size_t>(nv));
      for (int c = 0; c < r; ++c) W[static_cast<std::size_t>(c)] = llt.solve(b[static_cast<std::size_t>(c) + 1]);
      W[static_cast<std::size_t>(r)] = -llt.solve(Matrix::Identity(d, d));
      Eigen::VectorXd g(nv);
      Eigen::MatrixXd h(nv, nv);
      for (int a = 0; a < nv; ++a) {
        g(a) = -W[static_cast<std::size_t>(a)].trace().real();
        for (int c = a; c < nv; ++c) {
          const double v =
              (W[static_cast<std::size_t>(a)].array() * W[static_cast<std::size_t>(c)].transpose().array()).sum().real();
          h(a, c) = v;
          h(c, a) = v;
        }
      }
      grads[j] = std::move(g);
      hesses[j] = std::move(h);
    });
    for (char c : fine)
      if (!c) {
        ev.ok = false;
        return ev;
      }
    ev.value = -tau * tv - std::log(cap - tv);
    for (double v : vals) ev.value += v;
    for (int c = 0; c < r; ++c) ev.value -= std::log(opt.box - wv(c)) + std::log(opt.box + wv(c));
    if (!want_derivs) return ev;
    ev.grad = Eigen::VectorXd::Zero(nv);
    ev.hess = Eigen::MatrixXd::Zero(nv, nv);
    for (std::size_t j = 0; j < red.size(); ++j) {
      ev.grad += grads[j];
      ev.hess += hesses[j];
    }
    ev.grad(r) += -tau + 1.0 / (cap - tv);
    ev.hess(r, r) += 1.0 / ((cap - tv) * (cap - tv));
    for (int c = 0; c < r; ++c) {
      const double u = opt.box - wv(c), l = opt.box + wv(c);
      ev.grad(c) += 1.0 / u - 1.0 / l;
      ev.hess(c, c) += 1.0 / (u * u) + 1.0 / (l * l);
    }
    return ev;
  };

  auto current_min = [&](const Eigen::VectorXd& wv) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : red) {
      Matrix f = b[0];
      for (int c = 0; c < r; ++c) f += wv(c) * b[static_cast<std::size_t>(c) + 1];
      m = std::min(m, min_eigenvalue(f));
    }
    return lmis.empty() ? cap : m;
  };

  auto finish = [&](double ub) {
    res.y = basis * w;
    res.t = current_min(w);
    res.upper_bound = ub;
    for (int c = 0; c < r; ++c)
      if (std::abs(w(c)) > 0.9 * opt.box) res.hit_box = true;
    return res;
  };

  double tau = m_total / scale;
  for (int outer = 0; outer < opt.max_outer; ++outer) {
    for (int it = 0; it < opt.max_newton; ++it) {
      const auto ev = evaluate(w, t, tau, true);
      if (!ev.ok) break;  // cannot happen from a strictly feasible iterate
      const Eigen::VectorXd step = ev.hess.ldlt().solve(-ev.grad);
      const double decrement = -ev.grad.dot(step);
      ++res.newton_steps;
      if (!(decrement > 1e-12) || !step.allFinite()) break;
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const Eigen::VectorXd wn = w + alpha * step.head(r);
        const double tn = t + alpha * step(r);
        const auto en = evaluate(wn, tn, tau, false);
        if (en.ok && en.value <= ev.value - 0.25 * alpha * decrement) {
          w = wn;
          t = tn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
      if (current_min(w) >= opt.stop_above) return finish(std::numeric_limits<double>::infinity());
      if (decrement < 1e-10) break;
    }
    const double tm = current_min(w);
    const double gap = m_total / tau;
    if (tm >= opt.stop_above) return finish(tm + gap);
    if (tm + gap < opt.stop_below) return finish(tm + gap);
    if (gap < opt.gap_tol * std::max(1.0, std::abs(tm))) return finish(tm + gap);
    tau *= 10.0;
  }
  return finish(current_min(w) + m_total / tau);
}

}  // namespace dissoc
