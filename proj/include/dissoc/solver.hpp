#pragma once

// Feasibility of a decomposition at fixed q, certificate verification, and the
// bisection for the largest certified q.
//
// State mode: the equalities are solved as f = f0 + Z y (Z an orthonormal null
// space basis) and the smallest constraint eigenvalue is maximized over y.
// All mode: block positivity of each block's Choi operator (parts plus clones),
// handled by a cutting-plane loop whose cuts come from seesaw minimizers.

#include <dissoc/blockpos.hpp>
#include <dissoc/constraints.hpp>
#include <dissoc/decomposition.hpp>
#include <dissoc/lmi.hpp>
#include <dissoc/states.hpp>
#include <dissoc/version.hpp>

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace dissoc {

inline constexpr double kTransferTol = 1e-8;
inline constexpr const char* kAllStates = "all";

struct SolverOptions {
  double resolution = 1e-3;
  bool dedup = true;
  int threads = 1;
  std::uint64_t seed = 1;
  int restarts = 200;       // final block-positivity screen in all mode
  int inner_restarts = 24;  // per cutting-plane round
  int max_rounds = 120;
};

struct VerificationReport {
  double system_residual = std::numeric_limits<double>::quiet_NaN();
  double transfer_residual = std::numeric_limits<double>::quiet_NaN();
  double worst_min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  std::size_t constraints_checked = 0;
  double block_positivity_value = std::numeric_limits<double>::quiet_NaN();  // all mode only
  bool heuristic = false;
  bool valid = false;
  std::string failure;
};

struct SolverMeta {
  std::string method;
  int newton_steps = 0;
  double min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  bool dedup = true;
  std::size_t blocks_total = 0;
  std::size_t blocks_used = 0;
  std::size_t constraints = 0;
  int rounds = 0;
  double seconds = 0;
};

struct FeasibilityCertificate {
  DissociationClass cls = DissociationClass::EA;
  int n = 0;
  NoiseKind noise = NoiseKind::Local;
  double q = 0;
  std::string state;  // NamedState label, or "all"
  FTable f;
  VerificationReport verification;
  SolverMeta solver;
  std::string version = kVersion;

  bool all_mode() const { return state == kAllStates; }
};

struct VerifyOptions {
  double transfer_tol = kTransferTol;
  double psd_tol = kPsdTol;
  int restarts = 200;
  std::uint64_t seed = 1;
};

namespace detail {

inline double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct EqualitySolution {
  Eigen::VectorXd f0;
  Eigen::MatrixXd null_basis;  // orthonormal columns
};

inline EqualitySolution solve_equalities(const LinearSystem& sys, double q) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.coeffs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-12 * sv(0)) ++rank;
  EqualitySolution e;
  e.f0 = svd.solve(sys.rhs(q));
  e.null_basis = svd.matrixV().rightCols(sys.coeffs.cols() - rank);
  if (sys.residual(e.f0, q) > 1e-10) throw std::logic_error("equality system is inconsistent");
  return e;
}

/// Profile index (into unknowns) for every Pauli string of the block.
inline std::vector<int> profile_indices(const Block& b, const std::vector<Profile>& unknowns, int n) {
  const std::uint32_t special = b.special_mask();
  const int ns = static_cast<int>(b.special.size());
  std::vector<int> out(detail::pow4(n));
  for (std::size_t s = 0; s < out.size(); ++s) {
    const auto it = std::find(unknowns.begin(), unknowns.end(), profile_of(support_mask(s, n), special, ns, n));
    if (it == unknowns.end()) throw std::logic_error("Pauli string with a profile outside the unknown set");
    out[s] = static_cast<int>(it - unknowns.begin());
  }
  return out;
}

inline std::vector<double> multipliers_from(const std::vector<int>& idx, const Eigen::VectorXd& f) {
  std::vector<double> w(idx.size());
  for (std::size_t s = 0; s < idx.size(); ++s) w[s] = f(idx[s]);
  return w;
}

}  // namespace detail

/// Independent re-check of a certificate. Never throws on bad data; reports instead.
inline VerificationReport verify_certificate(const FeasibilityCertificate& cert, const VerifyOptions& opt = {}) {
  VerificationReport rep;
  auto fail = [&](std::string why) {
    rep.valid = false;
    if (rep.failure.empty()) rep.failure = std::move(why);
    return rep;
  };
  try {
    check_class_size(cert.cls, cert.n);
    if (!(cert.q >= 0.0 && cert.q <= 1.0)) return fail("q outside [0, 1]");
    const int n = cert.n;
    const auto blocks = block_geometry(cert.cls, n);

    // (0) the closed-form equalities
    const auto sys = build_system(cert.cls, n, cert.noise);
    Eigen::VectorXd fv(static_cast<Eigen::Index>(sys.unknowns.size()));
    for (std::size_t k = 0; k < sys.unknowns.size(); ++k) fv(static_cast<Eigen::Index>(k)) = cert.f.at(sys.unknowns[k]);
    rep.system_residual = sys.residual(fv, cert.q);

    // (i) full Pauli transfer of the decomposition against the channel
    const auto transfer = decomposition_transfer(blocks, cert.f, n);
    const ChannelSpec ch{cert.noise, n, cert.q};
    double worst = 0;
    for (std::size_t s = 0; s < transfer.size(); ++s)
      worst = std::max(worst, std::abs(transfer[s] - pauli_transfer(ch, pauli_weight(s))));
    rep.transfer_residual = worst;
    if (!(worst < opt.transfer_tol)) return fail("decomposition does not reproduce the channel");

    if (cert.all_mode()) {
      // (iii) block-positivity screen of every block's Choi operator
      rep.heuristic = true;
      double lowest = std::numeric_limits<double>::infinity();
      for (const Block& b : blocks) {
        const PauliDiagonalSeesaw seesaw(n, b.partition.parts());
        SeesawOptions so;
        so.restarts = opt.restarts;
        so.seed = opt.seed;
        lowest = std::min(lowest, seesaw.minimize(xi_multipliers(b, cert.f, n), so).min_value);
      }
      rep.block_positivity_value = lowest;
      if (!(lowest >= -opt.psd_tol)) return fail("a product vector has negative expectation on the Choi operator");
    } else {
      // (ii) every constraint rebuilt from Xi[rho] for every block
      const NamedState st = make_state(cert.state, n);
      double lowest = std::numeric_limits<double>::infinity();
      for (const Block& b : blocks) {
        const Matrix y = permute_qubits(xi_operator(b, cert.f, st.rho), detail::measured_first_order(b)).matrix();
        for (const auto& tuple : detail::sic_tuples(b)) {
          lowest = std::min(lowest, min_eigenvalue(detail::contract_leading(y, tuple.second)));
          ++rep.constraints_checked;
        }
      }
      rep.worst_min_eigenvalue = lowest;
      if (!(lowest >= -opt.psd_tol)) return fail("a constraint matrix has a negative eigenvalue");
    }
    if (!(rep.system_residual < opt.transfer_tol)) return fail("f does not satisfy the linear system");
    rep.valid = true;
    return rep;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

struct FeasibilityOutcome {
  bool feasible = false;
  std::optional<FeasibilityCertificate> certificate;
  double best_value = -std::numeric_limits<double>::infinity();  // solver's worst constraint value at its best point
  std::string note;
};

/// State-mode feasibility at q for a prebuilt constraint set.
inline FeasibilityOutcome feasible(double q, const LinearSystem& sys, const ConstraintSet& cons, const std::string& state,
                                   NoiseKind noise, const SolverOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto eq = detail::solve_equalities(sys, q);
  const int p = static_cast<int>(eq.null_basis.cols());
  std::vector<AffineHermitian> lmis;
  lmis.reserve(cons.items.size());
  for (const auto& item : cons.items) {
    AffineHermitian a;
    a.terms.push_back(item.at(eq.f0));
    for (int i = 0; i < p; ++i) a.terms.push_back(item.at(eq.null_basis.col(i)));
    lmis.push_back(std::move(a));
  }
  LmiOptions lo;
  lo.stop_above = 0.0;
  lo.stop_below = -kPsdTol;
  lo.box = 1e5 * (1.0 + eq.f0.norm());
  lo.threads = opt.threads;
  const LmiResult r = maximize_min_eigenvalue(lmis, p, lo);

  FeasibilityOutcome out;
  out.best_value = r.t;
  if (!(r.t >= -kPsdTol)) {
    out.note = "no f found with nonnegative constraints";
    return out;
  }
  const Eigen::VectorXd f = eq.f0 + eq.null_basis * r.y;
  FeasibilityCertificate cert;
  cert.cls = sys.cls;
  cert.n = sys.n;
  cert.noise = noise;
  cert.q = q;
  cert.state = state;
  cert.f = make_ftable(sys.unknowns, f);
  cert.solver = {"log-barrier max-min-eigenvalue", r.newton_steps, r.t, opt.dedup, cons.blocks.size(),
                 cons.used_blocks.size(), cons.items.size(), 0, 0.0};
  VerifyOptions vo;
  vo.seed = opt.seed;
  cert.verification = verify_certificate(cert, vo);
  cert.solver.seconds = detail::elapsed(t0);
  if (!cert.verification.valid) {
    out.note = "candidate rejected by verification: " + cert.verification.failure;
    return out;
  }
  out.feasible = true;
  out.certificate = std::move(cert);
  return out;
}

/// All-mode feasibility at q: cutting planes over seesaw minimizers.
inline FeasibilityOutcome feasible_all(double q, const LinearSystem& sys, const SolverOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = sys.n;
  const auto eq = detail::solve_equalities(sys, q);
  const int p = static_cast<int>(eq.null_basis.cols());
  const auto blocks = block_geometry(sys.cls, n);
  const Block& rep_block = blocks.front();  // all blocks are relabelings of each other
  const auto idx = detail::profile_indices(rep_block, sys.unknowns, n);
  const PauliDiagonalSeesaw seesaw(n, rep_block.partition.parts());
  const auto u = static_cast<Eigen::Index>(sys.unknowns.size());

  std::vector<AffineHermitian> cuts;
  auto add_cut = [&](const PauliSeesawPoint& pt) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(u);
    for (std::size_t s = 0; s < idx.size(); ++s) a(idx[s]) += pt.weights[s];
    AffineHermitian c;
    c.terms.push_back(Matrix::Constant(1, 1, cplx(a.dot(eq.f0), 0.0)));
    const Eigen::VectorXd g = eq.null_basis.transpose() * a;
    for (int i = 0; i < p; ++i) c.terms.push_back(Matrix::Constant(1, 1, cplx(g(i), 0.0)));
    cuts.push_back(std::move(c));
  };

  FeasibilityOutcome out;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(p);
  std::vector<PauliSeesawPoint> warm;
  SeesawOptions inner;
  inner.restarts = opt.inner_restarts;
  inner.seed = opt.seed;
  int round = 0;
  for (; round < opt.max_rounds; ++round) {
    const Eigen::VectorXd f = eq.f0 + eq.null_basis * y;
    inner.seed = opt.seed + static_cast<std::uint64_t>(round);
    auto screen = seesaw.minimize(detail::multipliers_from(idx, f), inner, warm);
    out.best_value = screen.min_value;
    if (screen.min_value >= -kPsdTol) {
      SeesawOptions full;
      full.restarts = opt.restarts;
      full.seed = opt.seed;
      screen = seesaw.minimize(detail::multipliers_from(idx, f), full, warm);
      out.best_value = screen.min_value;
      if (screen.min_value >= -kPsdTol) {
        FeasibilityCertificate cert;
        cert.cls = sys.cls;
        cert.n = n;
        cert.noise = sys.noise;
        cert.q = q;
        cert.state = kAllStates;
        cert.f = make_ftable(sys.unknowns, f);
        cert.solver = {"cutting-plane over seesaw minimizers", 0, screen.min_value, false, blocks.size(), 1, cuts.size(),
                       round + 1, 0.0};
        VerifyOptions vo;
        vo.seed = opt.seed + 7919;
        vo.restarts = opt.restarts;
        cert.verification = verify_certificate(cert, vo);
        cert.solver.seconds = detail::elapsed(t0);
        if (cert.verification.valid) {
          out.feasible = true;
          out.certificate = std::move(cert);
          return out;
        }
      }
    }
    warm.clear();
    for (const auto& pt : screen.points) {
      if (pt.value >= -kPsdTol || warm.size() >= 6) break;
      add_cut(pt);
      warm.push_back(pt);
    }
    if (warm.empty()) {
      out.note = "seesaw screens disagree near the boundary";
      return out;
    }
    LmiOptions lo;
    lo.box = 1e3 * (1.0 + eq.f0.norm());
    lo.gap_tol = 1e-10;
    lo.threads = 1;
    const LmiResult r = maximize_min_eigenvalue(cuts, p, lo);
    if (r.upper_bound < -kPsdTol) {
      out.note = "cuts exclude every f";
      return out;
    }
    y = r.y;
  }
  out.note = "cutting-plane round limit reached";
  return out;
}

struct Probe {
  double q = 0;
  bool feasible = false;
  double value = 0;
  std::string note;
};

enum class ThresholdStatus { Ok, GaveUp };

struct ThresholdResult {
  DissociationClass cls = DissociationClass::EA;
  int n = 0;
  NoiseKind noise = NoiseKind::Local;
  std::string state;
  double q_star = std::numeric_limits<double>::quiet_NaN();
  ThresholdStatus status = ThresholdStatus::GaveUp;
  std::optional<FeasibilityCertificate> certificate;
  std::vector<Probe> probes;
  double seconds = 0;
  bool heuristic = false;
};

/// Largest q on the bisection grid with a verified certificate. Relies on
/// feasibility being monotone in q.
inline ThresholdResult max_threshold(DissociationClass c, int n, const std::string& state, NoiseKind noise,
                                     const SolverOptions& opt = {}) {
  check_class_size(c, n);
  const auto t0 = std::chrono::steady_clock::now();
  ThresholdResult res;
  res.cls = c;
  res.n = n;
  res.noise = noise;
  res.state = state;
  res.heuristic = state == kAllStates;
  const auto sys = build_system(c, n, noise);

  std::optional<ConstraintSet> cons;
  if (!res.heuristic) {
    const NamedState st = make_state(state, n);
    res.state = st.label();
    cons = constraint_set(c, n, st.rho, opt.dedup, opt.threads);
  }
  auto probe = [&](double q) {
    FeasibilityOutcome o = res.heuristic ? feasible_all(q, sys, opt) : feasible(q, sys, *cons, res.state, noise, opt);
    res.probes.push_back({q, o.feasible, o.best_value, o.note});
    if (o.feasible) res.certificate = std::move(o.certificate);
    return o.feasible;
  };

  if (!probe(0.0)) {
    res.seconds = detail::elapsed(t0);
    return res;
  }
  res.status = ThresholdStatus::Ok;
  double lo = 0.0, hi = 1.0;
  if (probe(1.0)) {
    lo = 1.0;
  } else {
    while (hi - lo > opt.resolution) {
      const double mid = 0.5 * (lo + hi);
      if (probe(mid))
        lo = mid;
      else
        hi = mid;
    }
  }
  // keep the certificate that matches the reported value
  if (!res.certificate || res.certificate->q != lo) {
    FeasibilityOutcome o = res.heuristic ? feasible_all(lo, sys, opt) : feasible(lo, sys, *cons, res.state, noise, opt);
    if (o.feasible) res.certificate = std::move(o.certificate);
  }
  res.q_star = lo;
  if (lo == 0.0) res.status = ThresholdStatus::GaveUp;  // nothing certified above q = 0
  res.seconds = detail::elapsed(t0);
  return res;
}

}  // namespace dissoc
