#pragma once

// Partial-transpose entanglement detection of depolarized states and a
// one-sided witness check.

#include <dissoc/blockpos.hpp>
#include <dissoc/channels.hpp>
#include <dissoc/partitions.hpp>
#include <dissoc/states.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dissoc {

inline constexpr double kNptResolution = 1e-4;

/// Sum of |negative eigenvalues| of the partial transpose on the first part.
inline double negativity(const QOperator& rho, const Partition& bipartition) {
  if (bipartition.k() != 2 || bipartition.n() != rho.n_qubits())
    throw std::invalid_argument("negativity needs a bipartition of the state's qubits");
  const auto ev = eigenvalues(partial_transpose(rho, bipartition.part(1)));
  double acc = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0) acc -= ev(i);
  return acc;
}

/// Smallest eigenvalue of the partial transpose of Phi_q[rho] over `subset`.
inline double pt_min_eigenvalue(const QOperator& rho, NoiseKind noise, double q, const std::vector<int>& subset) {
  return min_eigenvalue(partial_transpose(apply(ChannelSpec{noise, rho.n_qubits(), q}, rho), subset));
}

struct NptResult {
  std::string state;
  NoiseKind noise = NoiseKind::Local;
  std::pair<int, int> shape{0, 0};
  std::string bipartition;                // the cut attaining the threshold
  std::optional<double> q_threshold;      // empty: never NPT on [0, 1]
  std::vector<std::pair<double, double>> min_eig_curve;  // 50 samples of (q, lambda_min) on that cut
  double spread = 0;                      // max - min threshold over the cuts considered

  bool never_npt() const { return !q_threshold.has_value(); }
};

namespace detail {

inline std::optional<double> npt_bisect(const QOperator& rho, NoiseKind noise, const std::vector<int>& subset,
                                        double resolution) {
  if (pt_min_eigenvalue(rho, noise, 1.0, subset) >= 0.0) return std::nullopt;
  double lo = 0.0, hi = 1.0;  // lambda_min(lo) >= 0 > lambda_min(hi)
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (pt_min_eigenvalue(rho, noise, mid, subset) < 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<std::pair<double, double>> npt_curve(const QOperator& rho, NoiseKind noise,
                                                        const std::vector<int>& subset) {
  std::vector<std::pair<double, double>> c;
  for (int i = 0; i < 50; ++i) {
    const double q = i / 49.0;
    c.emplace_back(q, pt_min_eigenvalue(rho, noise, q, subset));
  }
  return c;
}

}  // namespace detail

/// Threshold on a single bipartition.
inline NptResult npt_threshold(const NamedState& state, NoiseKind noise, const Partition& bipartition,
                               double resolution = kNptResolution) {
  if (bipartition.k() != 2 || bipartition.n() != state.n_qubits)
    throw std::invalid_argument("npt_threshold needs a bipartition of the state's qubits");
  NptResult r;
  r.state = state.label();
  r.noise = noise;
  r.shape = {static_cast<int>(bipartition.part(1).size()), static_cast<int>(bipartition.part(2).size())};
  r.bipartition = bipartition.str();
  r.q_threshold = detail::npt_bisect(state.rho, noise, bipartition.part(1), resolution);
  r.min_eig_curve = detail::npt_curve(state.rho, noise, bipartition.part(1));
  return r;
}

/// Smallest threshold over every bipartition with parts of sizes (a, n - a):
/// the channel output is NPT-entangled as soon as any such cut is.
inline NptResult npt_threshold_shape(const NamedState& state, NoiseKind noise, int a,
                                     double resolution = kNptResolution) {
  const int n = state.n_qubits;
  if (a < 1 || 2 * a > n) throw std::invalid_argument("npt shape needs 1 <= a <= n/2");
  std::optional<NptResult> best;
  double lo = std::numeric_limits<double>::infinity(), hi = -std::numeric_limits<double>::infinity();
  bool any_never = false, any_npt = false;
  for (const auto& p : enumerate_partitions(n, 2).entries) {
    if (static_cast<int>(p.part(1).size()) != a) continue;
    auto r = npt_threshold(state, noise, p, resolution);
    if (r.q_threshold) {
      any_npt = true;
      lo = std::min(lo, *r.q_threshold);
      hi = std::max(hi, *r.q_threshold);
    } else {
      any_never = true;
    }
    const bool better = !best || (r.q_threshold && (!best->q_threshold || *r.q_threshold < *best->q_threshold));
    if (better) best = std::move(r);
  }
  best->spread = any_npt ? (any_never ? std::numeric_limits<double>::infinity() : hi - lo) : 0.0;
  return *best;
}

enum class WitnessVerdict { EntangledCertified, Inconclusive };

struct WitnessReport {
  WitnessVerdict verdict = WitnessVerdict::Inconclusive;
  double expectation = 0;    // tr(rho xi)
  double screen_value = 0;   // seesaw minimum of xi over product vectors
  bool heuristic = true;
};

/// A block-positive xi (screened by seesaw) with tr(rho xi) < 0 certifies that
/// rho is not separable across `partition`.
inline WitnessReport witness_check(const QOperator& rho_out, const QOperator& xi, const Partition& partition,
                                   const SeesawOptions& opt = {}) {
  if (rho_out.n_qubits() != xi.n_qubits()) throw std::invalid_argument("witness_check: size mismatch");
  WitnessReport r;
  r.expectation = (rho_out.matrix() * xi.matrix()).trace().real();
  r.screen_value = block_positivity_heuristic(xi, partition, opt).min_value;
  if (r.screen_value >= -kPsdTol && r.expectation < -1e-12) r.verdict = WitnessVerdict::EntangledCertified;
  return r;
}

}  // namespace dissoc
