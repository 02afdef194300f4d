#pragma once

// SIC-POVM vector sets in dimensions 2, 4 and 8.
//
//   d = 2: tetrahedral set, Pauli orbit of the state with Bloch vector (1,1,1)/sqrt(3).
//   d = 4: Weyl-Heisenberg orbit {tau^(jk) X^j Z^k |f>}, tau = -exp(i pi/4), of a stored fiducial.
//   d = 8: three-qubit Pauli orbit {Pi_s |f>} of a stored Hoggar fiducial.
//
// Fiducial text format: a line `dim=<d>` followed by d lines `<re> <im>`.
// The embedded copies below are byte-identical to data/sic/fiducial_d{4,8}.txt.

#include <dissoc/channels.hpp>
#include <dissoc/linalg.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dissoc {

inline constexpr double kSicTol = 1e-9;

namespace fiducial_data {

inline constexpr const char* kDim4 = R"(dim=4
4.008483913243408375110463095241290801422e-1 0.0
-1.544039148801748375641416937042020691926e-1 -1.289816979352452188680530131123580140516e-1
-5.578338408973448380194914773001996912353e-1 5.017457233224642528039415577453484968739e-1
-3.113893644531788380725868614802726802856e-1 3.727640253872190339358885446329904828223e-1
)";

inline constexpr const char* kDim8 = R"(dim=8
-2.886751345948128822545743902509787278238e-1 5.773502691896257645091487805019574556476e-1
2.886751345948128822545743902509787278238e-1 0.0
2.886751345948128822545743902509787278238e-1 0.0
2.886751345948128822545743902509787278238e-1 0.0
2.886751345948128822545743902509787278238e-1 0.0
2.886751345948128822545743902509787278238e-1 0.0
2.886751345948128822545743902509787278238e-1 0.0
2.886751345948128822545743902509787278238e-1 0.0
)";

}  // namespace fiducial_data

struct SicSet {
  int dim = 0;
  std::vector<Vector> vectors;
};

struct SicReport {
  double max_overlap_deviation = 0.0;     // max_{i != j} | |<psi_i|psi_j>|^2 - 1/(d+1) |
  double max_resolution_deviation = 0.0;  // max entry of (1/d) sum_i P_i - I
  double max_norm_deviation = 0.0;
  bool count_ok = false;

  bool ok(double tol = kSicTol) const {
    return count_ok && max_overlap_deviation <= tol && max_resolution_deviation <= tol && max_norm_deviation <= tol;
  }
};

inline SicReport verify_sic(const SicSet& s) {
  SicReport r;
  const auto d = static_cast<double>(s.dim);
  r.count_ok = s.dim > 0 && s.vectors.size() == static_cast<std::size_t>(s.dim) * static_cast<std::size_t>(s.dim);
  Matrix frame = Matrix::Zero(s.dim, s.dim);
  for (std::size_t i = 0; i < s.vectors.size(); ++i) {
    const Vector& a = s.vectors[i];
    r.max_norm_deviation = std::max(r.max_norm_deviation, std::abs(a.squaredNorm() - 1.0));
    frame += a * a.adjoint();
    for (std::size_t j = i + 1; j < s.vectors.size(); ++j)
      r.max_overlap_deviation =
          std::max(r.max_overlap_deviation, std::abs(std::norm(a.dot(s.vectors[j])) - 1.0 / (d + 1.0)));
  }
  frame /= d;
  r.max_resolution_deviation = (frame - Matrix::Identity(s.dim, s.dim)).cwiseAbs().maxCoeff();
  return r;
}

inline Vector parse_fiducial(std::istream& in, int& dim) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("dim=", 0) != 0)
    throw std::runtime_error("fiducial data: missing 'dim=<d>' header");
  dim = std::stoi(header.substr(4));
  if (dim < 1) throw std::runtime_error("fiducial data: bad dimension");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    double re = 0, im = 0;
    if (!(in >> re >> im)) throw std::runtime_error("fiducial data: expected " + std::to_string(2 * dim) + " numbers");
    v(i) = cplx(re, im);
  }
  return v;
}

inline Vector parse_fiducial(const std::string& text, int& dim) {
  std::istringstream in(text);
  return parse_fiducial(in, dim);
}

inline Vector load_fiducial_file(const std::string& path, int& dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fiducial file " + path);
  return parse_fiducial(in, dim);
}

/// Weyl-Heisenberg orbit tau^(jk) X^j Z^k |f>, ordered by j*d + k.
inline std::vector<Vector> weyl_heisenberg_orbit(const Vector& f) {
  const auto d = static_cast<int>(f.size());
  const double pi = std::acos(-1.0);
  const cplx omega = std::polar(1.0, 2 * pi / d);
  const cplx tau = -std::polar(1.0, pi / d);
  std::vector<Vector> out;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      Vector v(d);
      for (int c = 0; c < d; ++c) v((c + j) % d) = std::pow(tau, j * k) * std::pow(omega, k * c) * f(c);
      out.push_back(v);
    }
  return out;
}

/// Multiqubit Pauli orbit Pi_s |f>, ordered by Pauli-string index.
inline std::vector<Vector> pauli_orbit(const Vector& f) {
  const int n = detail::log2_exact(f.size());
  std::vector<Vector> out;
  for (std::size_t s = 0; s < detail::pow4(n); ++s) out.push_back(pauli_string(pauli_digits(s, n)).matrix() * f);
  return out;
}

namespace detail {

inline SicSet build_sic(int dim) {
  SicSet s{dim, {}};
  if (dim == 2) {
    const double theta = std::acos(1.0 / std::sqrt(3.0));
    const double pi = std::acos(-1.0);
    Vector f(2);
    f << std::cos(theta / 2), std::polar(std::sin(theta / 2), pi / 4);
    s.vectors = pauli_orbit(f);
  } else if (dim == 4 || dim == 8) {
    int parsed = 0;
    const Vector f = parse_fiducial(std::string(dim == 4 ? fiducial_data::kDim4 : fiducial_data::kDim8), parsed);
    if (parsed != dim) throw std::runtime_error("embedded fiducial has the wrong dimension");
    s.vectors = dim == 4 ? weyl_heisenberg_orbit(f) : pauli_orbit(f);
  } else {
    throw std::invalid_argument("SIC sets are provided for d = 2, 4, 8 only");
  }
  const SicReport r = verify_sic(s);
  if (!r.ok())
    throw std::runtime_error("SIC d=" + std::to_string(dim) + " failed verification: overlap deviation " +
                             std::to_string(r.max_overlap_deviation) + ", resolution deviation " +
                             std::to_string(r.max_resolution_deviation));
  return s;
}

}  // namespace detail

/// Verified SIC set for dim in {2, 4, 8}; built once per process.
inline const SicSet& sic_vectors(int dim) {
  if (dim == 2) {
    static const SicSet s = detail::build_sic(2);
    return s;
  }
  if (dim == 4) {
    static const SicSet s = detail::build_sic(4);
    return s;
  }
  if (dim == 8) {
    static const SicSet s = detail::build_sic(8);
    return s;
  }
  throw std::invalid_argument("SIC sets are provided for d = 2, 4, 8 only");
}

/// Measure-and-prepare block X -> (1/d) |psi_i><psi_i| X |psi_i><psi_i| over the SIC
/// on `targets`; its branch sum is depolarizing with q = 1/(d+1).
inline EBBlock sic_block(const std::vector<int>& targets, const SicSet& sic) {
  if ((1 << targets.size()) != sic.dim) throw std::invalid_argument("sic_block: target count does not match SIC dimension");
  return EBBlock{targets, sic.vectors, std::vector<double>(sic.vectors.size(), 1.0 / sic.dim)};
}

}  // namespace dissoc
