#pragma once

// JSON form of a feasibility certificate:
//
// {
//   "format": "dissoc-certificate", "version": "...",
//   "class": "ea", "n": 3, "noise": "local", "q": 0.49, "state": "ghz",
//   "f": [{"s": 0, "t": 2, "value": ...}, ...],
//   "verification": {"system_residual": ..., "transfer_residual": ..., "worst_min_eigenvalue": ...,
//                    "constraints_checked": ..., "block_positivity_value": ..., "heuristic": false,
//                    "valid": true, "failure": ""},
//   "solver": {"method": ..., "newton_steps": ..., "min_eigenvalue": ..., "dedup": ..., "blocks_total": ...,
//              "blocks_used": ..., "constraints": ..., "rounds": ..., "seconds": ...}
// }
//
// Non-finite numbers are written as null.

#include <dissoc/solver.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace dissoc {

namespace detail {

inline nlohmann::json num(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

inline double num_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

inline nlohmann::json to_json(const FeasibilityCertificate& c) {
  nlohmann::json f = nlohmann::json::array();
  for (std::size_t i = 0; i < c.f.profiles.size(); ++i)
    f.push_back({{"s", c.f.profiles[i].s}, {"t", c.f.profiles[i].t}, {"value", c.f.values[i]}});
  const auto& v = c.verification;
  const auto& s = c.solver;
  return {{"format", "dissoc-certificate"},
          {"version", c.version},
          {"class", class_name(c.cls)},
          {"n", c.n},
          {"noise", to_string(c.noise)},
          {"q", c.q},
          {"state", c.state},
          {"f", f},
          {"verification",
           {{"system_residual", detail::num(v.system_residual)},
            {"transfer_residual", detail::num(v.transfer_residual)},
            {"worst_min_eigenvalue", detail::num(v.worst_min_eigenvalue)},
            {"constraints_checked", v.constraints_checked},
            {"block_positivity_value", detail::num(v.block_positivity_value)},
            {"heuristic", v.heuristic},
            {"valid", v.valid},
            {"failure", v.failure}}},
          {"solver",
           {{"method", s.method},
            {"newton_steps", s.newton_steps},
            {"min_eigenvalue", detail::num(s.min_eigenvalue)},
            {"dedup", s.dedup},
            {"blocks_total", s.blocks_total},
            {"blocks_used", s.blocks_used},
            {"constraints", s.constraints},
            {"rounds", s.rounds},
            {"seconds", s.seconds}}}};
}

/// Throws std::runtime_error on structural problems (missing keys, wrong types).
inline FeasibilityCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "dissoc-certificate") throw std::runtime_error("not a certificate");
    FeasibilityCertificate c;
    c.version = j.at("version").get<std::string>();
    c.cls = parse_class(j.at("class").get<std::string>());
    c.n = j.at("n").get<int>();
    c.noise = parse_noise(j.at("noise").get<std::string>());
    c.q = j.at("q").get<double>();
    c.state = j.at("state").get<std::string>();
    for (const auto& e : j.at("f")) {
      c.f.profiles.push_back({e.at("s").get<int>(), e.at("t").get<int>()});
      c.f.values.push_back(e.at("value").get<double>());
    }
    if (j.contains("verification")) {
      const auto& v = j.at("verification");
      c.verification.system_residual = detail::num_from(v.at("system_residual"));
      c.verification.transfer_residual = detail::num_from(v.at("transfer_residual"));
      c.verification.worst_min_eigenvalue = detail::num_from(v.at("worst_min_eigenvalue"));
      c.verification.constraints_checked = v.at("constraints_checked").get<std::size_t>();
      c.verification.block_positivity_value = detail::num_from(v.at("block_positivity_value"));
      c.verification.heuristic = v.at("heuristic").get<bool>();
      c.verification.valid = v.at("valid").get<bool>();
      c.verification.failure = v.at("failure").get<std::string>();
    }
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      c.solver.method = s.at("method").get<std::string>();
      c.solver.newton_steps = s.at("newton_steps").get<int>();
      c.solver.min_eigenvalue = detail::num_from(s.at("min_eigenvalue"));
      c.solver.dedup = s.at("dedup").get<bool>();
      c.solver.blocks_total = s.at("blocks_total").get<std::size_t>();
      c.solver.blocks_used = s.at("blocks_used").get<std::size_t>();
      c.solver.constraints = s.at("constraints").get<std::size_t>();
      c.solver.rounds = s.at("rounds").get<int>();
      c.solver.seconds = s.at("seconds").get<double>();
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("malformed certificate: ") + e.what());
  }
}

inline void save_certificate(const FeasibilityCertificate& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(c).dump(2) << '\n';
}

inline FeasibilityCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed certificate: ") + e.what());
  }
  return certificate_from_json(j);
}

}  // namespace dissoc
