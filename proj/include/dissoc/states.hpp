#pragma once

// Input states: GHZ, W, the four-qubit cluster state, the three-qubit UPB
// bound-entangled state, and seeded random density matrices.

#include <dissoc/linalg.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace dissoc {

enum class StateName { GHZ, W, Cluster4, UPB3, MaxMixed, Random };

struct NamedState {
  StateName name = StateName::MaxMixed;
  int n_qubits = 0;
  QOperator rho;
  std::uint64_t seed = 0;  // Random only

  /// CLI spelling: ghz, w, cluster, upb, mixed, random:<seed>.
  std::string label() const {
    switch (name) {
      case StateName::GHZ: return "ghz";
      case StateName::W: return "w";
      case StateName::Cluster4: return "cluster";
      case StateName::UPB3: return "upb";
      case StateName::MaxMixed: return "mixed";
      case StateName::Random: return "random:" + std::to_string(seed);
    }
    return "?";
  }
};

namespace detail {

inline NamedState pure_state(StateName name, const Vector& v) {
  return NamedState{name, log2_exact(v.size()), QOperator::projector(v.normalized()), 0};
}

}  // namespace detail

inline NamedState ghz(int n) {
  if (n < 2) throw std::invalid_argument("ghz requires n >= 2");
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return detail::pure_state(StateName::GHZ, v);
}

inline NamedState w(int n) {
  if (n < 2) throw std::invalid_argument("w requires n >= 2");
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  for (int t = 0; t < n; ++t) v(Eigen::Index{1} << t) = 1.0 / std::sqrt(static_cast<double>(n));
  return detail::pure_state(StateName::W, v);
}

/// (|0000> + |0011> + |1100> - |1111>)/2
inline NamedState cluster4() {
  Vector v = Vector::Zero(16);
  v(0b0000) = 0.5;
  v(0b0011) = 0.5;
  v(0b1100) = 0.5;
  v(0b1111) = -0.5;
  return detail::pure_state(StateName::Cluster4, v);
}

/// (I_8 - P)/4 with P the projector onto the "shifts" unextendible product basis
/// {|0,1,+>, |1,+,0>, |+,0,1>, |-,-,->}.
inline NamedState upb3() {
  Vector k0(2), k1(2), kp(2), km(2);
  k0 << 1, 0;
  k1 << 0, 1;
  kp << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  km << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  const Vector basis[4] = {tensor(tensor(k0, k1), kp), tensor(tensor(k1, kp), k0), tensor(tensor(kp, k0), k1),
                           tensor(tensor(km, km), km)};
  Matrix p = Matrix::Zero(8, 8);
  for (const auto& b : basis) p += b * b.adjoint();
  return NamedState{StateName::UPB3, 3, QOperator(0.25 * (Matrix::Identity(8, 8) - p)), 0};
}

inline NamedState max_mixed(int n) {
  const double d = std::ldexp(1.0, n);
  return NamedState{StateName::MaxMixed, n, (1.0 / d) * QOperator::identity(n), 0};
}

/// Marginal of a Gaussian random pure state on n + n qubits.
inline NamedState random_density(int n, std::uint64_t seed) {
  if (n < 1 || n > 6) throw std::invalid_argument("random_density supports 1 <= n <= 6");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix g(d, d);  // rows: system, cols: environment
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return NamedState{StateName::Random, n, QOperator(0.5 * (rho + rho.adjoint())), seed};
}

/// Parses ghz | w | cluster | upb | mixed | random:<seed>.
inline NamedState make_state(const std::string& name, int n) {
  if (name == "ghz") return ghz(n);
  if (name == "w") return w(n);
  if (name == "cluster" || name == "cl") {
    if (n != 4) throw std::invalid_argument("the cluster state is defined for n = 4 only");
    return cluster4();
  }
  if (name == "upb") {
    if (n != 3) throw std::invalid_argument("the UPB state is defined for n = 3 only");
    return upb3();
  }
  if (name == "mixed") return max_mixed(n);
  if (name.rfind("random:", 0) == 0) {
    const std::string tail = name.substr(7);
    std::size_t used = 0;
    const auto seed = std::stoull(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("bad random seed in '" + name + "'");
    return random_density(n, seed);
  }
  throw std::invalid_argument("unknown state '" + name + "' (expected ghz, w, cluster, upb, mixed, random:<seed>)");
}

}  // namespace dissoc
