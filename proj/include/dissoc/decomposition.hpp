#pragma once

// Dissociation classes, their elementary-block geometries, and the linear
// system tying the profile function f to the target depolarizing channel.
//
// Every block keeps one part of a partition untouched and sends each other
// part through a SIC measure-and-prepare operation, after a diagonal map
// Xi[P_s] = x_s P_s. The multiplier x_s = f(s0, t0) depends on the number of
// identity factors of s inside the block's "special" label set (s0) and
// outside it (t0).
//
//   class  blocks                                   special set
//   a      P^N, keep {m}, the rest as d=2 singles   {m}
//   b      pairings, keep one pair, others d=4      kept pair
//   c      keep an N/2 set, the rest as d=2 singles complement of kept
//   d      halves, one half as a d=2^(N/2) whole    measured half
//   e      {m} | rest, measure m with d=2           {m}

#include <dissoc/channels.hpp>
#include <dissoc/linalg.hpp>
#include <dissoc/partitions.hpp>
#include <dissoc/sic.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dissoc {

enum class DissociationClass { EA, PairClusters, HalfPlusSingles, HalfClusters, OneDetached };

inline constexpr DissociationClass kAllClasses[] = {DissociationClass::EA, DissociationClass::PairClusters,
                                                    DissociationClass::HalfPlusSingles, DissociationClass::HalfClusters,
                                                    DissociationClass::OneDetached};

inline char class_letter(DissociationClass c) { return static_cast<char>('a' + static_cast<int>(c)); }

/// CLI spelling: ea, b, c, d, dge.
inline std::string class_name(DissociationClass c) {
  switch (c) {
    case DissociationClass::EA: return "ea";
    case DissociationClass::OneDetached: return "dge";
    default: return std::string(1, class_letter(c));
  }
}

inline DissociationClass parse_class(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "a" || s == "ea") return DissociationClass::EA;
  if (s == "b") return DissociationClass::PairClusters;
  if (s == "c") return DissociationClass::HalfPlusSingles;
  if (s == "d") return DissociationClass::HalfClusters;
  if (s == "e" || s == "dge") return DissociationClass::OneDetached;
  throw std::invalid_argument("unknown class '" + s + "' (expected ea|a, b, c, d, dge|e)");
}

inline bool needs_even_n(DissociationClass c) {
  return c == DissociationClass::PairClusters || c == DissociationClass::HalfPlusSingles ||
         c == DissociationClass::HalfClusters;
}

/// Throws std::invalid_argument with an explanation when the class is undefined for n.
inline void check_class_size(DissociationClass c, int n) {
  if (n < 3) throw std::invalid_argument("dissociation classes need n >= 3 (got " + std::to_string(n) + ")");
  if (n > 8) throw std::invalid_argument("n > 8 is not supported");
  if (needs_even_n(c) && n % 2)
    throw std::invalid_argument("class " + class_name(c) + " splits the qubits in halves and needs an even n (got " +
                                std::to_string(n) + ")");
}

/// (k, r): outputs are k-separable and r-entangled.
inline std::pair<int, int> class_targets(DissociationClass c, int n) {
  switch (c) {
    case DissociationClass::EA: return {n, 1};
    case DissociationClass::PairClusters: return {n / 2, 2};
    case DissociationClass::HalfPlusSingles: return {n / 2 + 1, n / 2};
    case DissociationClass::HalfClusters: return {2, n / 2};
    case DissociationClass::OneDetached: return {2, n - 1};
  }
  return {0, 0};
}

/// (identity count inside the special set, identity count outside it)
struct Profile {
  int s = 0;
  int t = 0;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

struct EbPart {
  std::vector<int> qubits;  // ascending; the first label is the most significant SIC leg
  int sic_dim = 2;
  friend bool operator==(const EbPart&, const EbPart&) = default;
};

struct Block {
  Partition partition;
  int partition_index = 0;  // j in P_j^k
  int kept_part = 0;        // m, 1-based part of `partition`
  std::vector<int> kept;
  std::vector<EbPart> eb;
  std::vector<int> special;

  std::uint32_t special_mask() const {
    std::uint32_t m = 0;
    for (int l : special) m |= 1u << (l - 1);
    return m;
  }

  std::string str() const {
    return "P^" + std::to_string(partition.k()) + "_" + std::to_string(partition_index) + " " + partition.str() +
           " keep " + std::to_string(kept_part);
  }
};

/// Bit l-1 set when qubit l carries a non-identity factor in string `index`.
inline std::uint32_t support_mask(std::size_t index, int n) {
  std::uint32_t m = 0;
  for (int l = n; l >= 1; --l, index >>= 2)
    if (index & 3u) m |= 1u << (l - 1);
  return m;
}

inline Profile profile_of(std::uint32_t support, std::uint32_t special, int n_special, int n) {
  const int in = std::popcount(support & special);
  const int out = std::popcount(support & ~special);
  return {n_special - in, (n - n_special) - out};
}

inline std::vector<Block> block_geometry(DissociationClass c, int n) {
  check_class_size(c, n);
  std::vector<Block> out;
  auto singles = [](const Partition& p, int skip) {
    std::vector<EbPart> eb;
    for (int m = 1; m <= p.k(); ++m)
      if (m != skip) eb.push_back({p.part(m), 2});
    return eb;
  };
  switch (c) {
    case DissociationClass::EA: {
      const auto cat = enumerate_partitions(n, n);
      for (int m = 1; m <= n; ++m)
        out.push_back({cat.at(1), 1, m, cat.at(1).part(m), singles(cat.at(1), m), cat.at(1).part(m)});
      break;
    }
    case DissociationClass::PairClusters: {
      const auto cat = pair_partitions(n);
      for (int j = 1; j <= static_cast<int>(cat.size()); ++j) {
        const Partition& p = cat.at(j);
        for (int m = 1; m <= p.k(); ++m) {
          std::vector<EbPart> eb;
          for (int o = 1; o <= p.k(); ++o)
            if (o != m) eb.push_back({p.part(o), 4});
          out.push_back({p, j, m, p.part(m), eb, p.part(m)});
        }
      }
      break;
    }
    case DissociationClass::HalfPlusSingles: {
      const auto all = enumerate_partitions(n, n / 2 + 1);
      int j = 0;
      for (const auto& p : all.entries) {
        const auto sz = p.sizes();
        if (sz.back() != n / 2 || std::count(sz.begin(), sz.end(), 1) != n / 2) continue;
        ++j;
        const int m = p.k();  // the half comes last after normalization
        std::vector<int> special;
        for (const auto& e : singles(p, m)) special.push_back(e.qubits[0]);
        std::sort(special.begin(), special.end());
        out.push_back({p, j, m, p.part(m), singles(p, m), special});
      }
      break;
    }
    case DissociationClass::HalfClusters: {
      const auto cat = symmetric_bipartitions(n);
      for (int j = 1; j <= static_cast<int>(cat.size()); ++j) {
        const Partition& p = cat.at(j);
        for (int m = 1; m <= 2; ++m) {
          const int o = 3 - m;
          out.push_back({p, j, m, p.part(m), {{p.part(o), 1 << (n / 2)}}, p.part(o)});
        }
      }
      break;
    }
    case DissociationClass::OneDetached: {
      const auto cat = enumerate_partitions(n, 2);
      for (int j = 1; j <= n; ++j) {
        const Partition& p = cat.at(j);
        out.push_back({p, j, 2, p.part(2), {{p.part(1), 2}}, p.part(1)});
      }
      break;
    }
  }
  return out;
}

/// Profiles allowed by the class, before dropping zero-coefficient ones.
inline std::vector<Profile> profile_domain(DissociationClass c, int n) {
  int smax = 1, tmax = n - 1;
  if (c == DissociationClass::PairClusters) smax = 2, tmax = n - 2;
  if (c == DissociationClass::HalfPlusSingles || c == DissociationClass::HalfClusters) smax = n / 2, tmax = n / 2;
  std::vector<Profile> out;
  for (int s = 0; s <= smax; ++s)
    for (int t = 0; t <= tmax; ++t) out.push_back({s, t});
  return out;
}

namespace detail {

inline double binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double double_factorial_odd(int m) {  // m!! for odd m, (-1)!! = 1
  double r = 1.0;
  for (int k = m; k > 1; k -= 2) r *= k;
  return r;
}

}  // namespace detail

/// E[damp^h] where h counts the pairs touched when r marked points sit among m
/// points joined by a uniformly random perfect matching.
inline double matching_damping(int r, int m, double damp) {
  if (m % 2) throw std::invalid_argument("matching_damping needs an even point count");
  if (r < 0 || r > m) return 0.0;
  double acc = 0.0;
  for (int h = 0; h <= r; ++h) {
    const int both = r - h;     // pairs with two marked points
    const int single = 2 * h - r;  // pairs with exactly one
    if (both < 0 || single < 0 || single > m - r) continue;
    double ways = detail::binom(r, single) * detail::double_factorial_odd(r - single - 1);
    for (int i = 0; i < single; ++i) ways *= (m - r - i);
    ways *= detail::double_factorial_odd(m - r - single - 1);
    acc += ways * std::pow(damp, h);
  }
  return acc / detail::double_factorial_odd(m - 1);
}

/// Coefficient of f(p) in the equation for Pauli weight n - p.s - p.t.
inline double system_coefficient(DissociationClass c, int n, Profile p) {
  const int w = n - p.s - p.t;
  if (w < 0 || w > n) return 0.0;
  using detail::binom;
  switch (c) {
    case DissociationClass::EA:
      if (p.s == 0) return w >= 1 ? w / (std::pow(3.0, w - 1) * n) : 0.0;
      if (p.s == 1) return (n - w) / (std::pow(3.0, w) * n);
      return 0.0;
    case DissociationClass::OneDetached:
      if (p.s == 0) return w / (3.0 * n);
      if (p.s == 1) return static_cast<double>(n - w) / n;
      return 0.0;
    case DissociationClass::PairClusters: {
      if (p.s < 0 || p.s > 2) return 0.0;
      const double ways = binom(w, 2 - p.s) * binom(n - w, p.s);
      if (ways == 0.0) return 0.0;
      return ways / binom(n, 2) * matching_damping(w - (2 - p.s), n - 2, 1.0 / 5.0);
    }
    case DissociationClass::HalfPlusSingles:
    case DissociationClass::HalfClusters: {
      const int h = n / 2;
      if (p.s < 0 || p.s > h) return 0.0;
      const double ways = binom(w, h - p.s) * binom(n - w, p.s);
      if (ways == 0.0) return 0.0;
      const double damp = c == DissociationClass::HalfPlusSingles ? std::pow(3.0, h - p.s)
                                                                  : (p.s == h ? 1.0 : std::ldexp(1.0, h) + 1.0);
      return ways / binom(n, h) / damp;
    }
  }
  return 0.0;
}

inline double target_transfer(NoiseKind noise, int weight, double q) {
  if (noise == NoiseKind::Local) return std::pow(q, weight);
  return weight == 0 ? 1.0 : q;
}

struct LinearSystem {
  DissociationClass cls = DissociationClass::EA;
  int n = 0;
  NoiseKind noise = NoiseKind::Local;
  std::vector<Profile> unknowns;
  Eigen::MatrixXd coeffs;  // row w: Pauli weight, column: unknown

  Eigen::VectorXd rhs(double q) const {
    Eigen::VectorXd r(n + 1);
    for (int w = 0; w <= n; ++w) r(w) = target_transfer(noise, w, q);
    return r;
  }

  double residual(const Eigen::VectorXd& f, double q) const { return (coeffs * f - rhs(q)).cwiseAbs().maxCoeff(); }

  int index_of(Profile p) const {
    const auto it = std::find(unknowns.begin(), unknowns.end(), p);
    return it == unknowns.end() ? -1 : static_cast<int>(it - unknowns.begin());
  }
};

inline LinearSystem build_system(DissociationClass c, int n, NoiseKind noise) {
  check_class_size(c, n);
  LinearSystem sys{c, n, noise, {}, {}};
  for (Profile p : profile_domain(c, n))
    if (system_coefficient(c, n, p) != 0.0) sys.unknowns.push_back(p);
  sys.coeffs = Eigen::MatrixXd::Zero(n + 1, static_cast<Eigen::Index>(sys.unknowns.size()));
  for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
    const Profile p = sys.unknowns[k];
    sys.coeffs(n - p.s - p.t, static_cast<Eigen::Index>(k)) = system_coefficient(c, n, p);
  }
  return sys;
}

/// Values of f on a list of profiles.
struct FTable {
  std::vector<Profile> profiles;
  std::vector<double> values;

  double at(Profile p) const {
    for (std::size_t i = 0; i < profiles.size(); ++i)
      if (profiles[i] == p) return values[i];
    throw std::out_of_range("f is not defined at (" + std::to_string(p.s) + "," + std::to_string(p.t) + ")");
  }

  Eigen::VectorXd vector() const { return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())); }
};

inline FTable make_ftable(const std::vector<Profile>& profiles, const Eigen::VectorXd& f) {
  return {profiles, std::vector<double>(f.data(), f.data() + f.size())};
}

/// x_s for every Pauli string s under the block's geometry.
inline std::vector<double> xi_multipliers(const Block& b, const FTable& f, int n) {
  const std::uint32_t special = b.special_mask();
  const int ns = static_cast<int>(b.special.size());
  std::map<Profile, double> cache;
  std::vector<double> x(detail::pow4(n));
  for (std::size_t s = 0; s < x.size(); ++s) {
    const Profile p = profile_of(support_mask(s, n), special, ns, n);
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, f.at(p)).first;
    x[s] = it->second;
  }
  return x;
}

/// Xi[X] for the block, computed in the Pauli basis.
inline QOperator xi_operator(const Block& b, const FTable& f, const QOperator& x) {
  const int n = x.n_qubits();
  auto c = pauli_coefficients(x);
  const auto mult = xi_multipliers(b, f, n);
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= mult[s];
  return from_pauli_coefficients(c, n);
}

/// Substring of Pauli string `index` (n qubits) on `qubits`, first label most significant.
inline std::size_t pauli_substring(std::size_t index, int n, const std::vector<int>& qubits) {
  std::size_t sub = 0;
  for (int l : qubits) sub = (sub << 2) | ((index >> (2 * (n - l))) & 3u);
  return sub;
}

/// Pauli-transfer factor of the SIC measure-and-prepare sum on a d-dimensional
/// part, computed from the vectors: (1/d^2) sum_i <psi_i|sigma|psi_i>^2.
inline const std::vector<double>& sic_transfer_table(int dim) {
  auto build = [](int d) {
    const SicSet& sic = sic_vectors(d);
    const int nq = detail::log2_exact(d);
    std::vector<double> t(detail::pow4(nq), 0.0);
    for (const Vector& v : sic.vectors) {
      const auto c = pauli_coefficients(QOperator::projector(v));
      for (std::size_t u = 0; u < t.size(); ++u) {
        const double e = d * c[u].real();
        t[u] += e * e;
      }
    }
    for (double& x : t) x /= static_cast<double>(d) * d;
    return t;
  };
  if (dim == 2) {
    static const auto t = build(2);
    return t;
  }
  if (dim == 4) {
    static const auto t = build(4);
    return t;
  }
  if (dim == 8) {
    static const auto t = build(8);
    return t;
  }
  throw std::invalid_argument("no SIC transfer table for d = " + std::to_string(dim));
}

/// Pauli transfer of the averaged decomposition (1/#blocks) sum_b SIC_b o Xi_b,
/// one value per string, evaluated block by block from the SIC vectors.
inline std::vector<double> decomposition_transfer(const std::vector<Block>& blocks, const FTable& f, int n) {
  std::vector<double> out(detail::pow4(n), 0.0);
  for (const Block& b : blocks) {
    const auto x = xi_multipliers(b, f, n);
    for (std::size_t s = 0; s < out.size(); ++s) {
      double v = x[s];
      for (const EbPart& e : b.eb) v *= sic_transfer_table(e.sic_dim)[pauli_substring(s, n, e.qubits)];
      out[s] += v;
    }
  }
  for (double& v : out) v /= static_cast<double>(blocks.size());
  return out;
}

}  // namespace dissoc
