#pragma once

// Implementations of the dissoc subcommands. Each returns a process exit code.

#include <dissoc/dissoc.hpp>
#include <dissoc/reference_values.hpp>
#include <dissoc/run_config.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace dissoc::cli {

enum ExitCode { kOk = 0, kUsage = 2, kVerificationFailed = 3, kGaveUp = 4 };

/// Rows of strings with a fixed header, written as CSV or a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        nlohmann::json o = nlohmann::json::object();
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
        arr.push_back(o);
      }
      out << arr.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
      out << '\n';
    }
  }
};

inline std::string fmt(double x, int digits = 4) {
  if (!std::isfinite(x)) return "";
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

inline std::string sci(double x) {
  if (!std::isfinite(x)) return "";
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << x;
  return s.str();
}

inline void emit(const Table& t, const RunConfig& cfg) {
  if (cfg.out.empty()) {
    t.write(std::cout, cfg.format);
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  t.write(f, cfg.format);
}

inline SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions o;
  o.resolution = cfg.resolution;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  o.dedup = cfg.dedup;
  return o;
}

inline std::string state_file_tag(const std::string& state) {
  std::string s = state;
  for (char& c : s)
    if (c == ':') c = '-';
  return s;
}

inline std::string certificate_path(const RunConfig& cfg, const ThresholdResult& r) {
  return (std::filesystem::path(cfg.certs) / (class_name(r.cls) + "_n" + std::to_string(r.n) + "_" +
                                              state_file_tag(r.state) + "_" + to_string(r.noise) + ".json"))
      .string();
}

/// Runs one threshold search, writes its certificate and re-verifies the file.
struct ThresholdRow {
  ThresholdResult result;
  std::string cert_path;
  std::string status;  // verified | verified-heuristic | rejected | gave-up
};

inline ThresholdRow run_threshold(const RunConfig& cfg, DissociationClass c, int n, const std::string& state, NoiseKind noise) {
  ThresholdRow row{max_threshold(c, n, state, noise, solver_options(cfg)), "", ""};
  if (row.result.status == ThresholdStatus::GaveUp || !row.result.certificate) {
    row.status = "gave-up";
    return row;
  }
  std::filesystem::create_directories(cfg.certs);
  row.cert_path = certificate_path(cfg, row.result);
  save_certificate(*row.result.certificate, row.cert_path);
  VerifyOptions vo;
  vo.seed = cfg.seed + 1;
  const auto rep = verify_certificate(load_certificate(row.cert_path), vo);
  row.status = !rep.valid ? "rejected" : rep.heuristic ? "verified-heuristic" : "verified";
  return row;
}

inline int cmd_thresholds(const RunConfig& cfg) {
  for (auto c : cfg.classes) check_class_size(c, cfg.n);
  if (cfg.state != kAllStates) make_state(cfg.state, cfg.n);  // usage errors before any work
  Table t{{"n", "state", "noise", "class", "q_star", "status", "certificate", "transfer_residual", "worst_min_eigenvalue",
           "block_positivity_value"},
          {}};
  int code = kOk;
  for (auto c : cfg.classes) {
    const auto row = run_threshold(cfg, c, cfg.n, cfg.state, cfg.noise);
    const auto& r = row.result;
    const VerificationReport v = r.certificate ? r.certificate->verification : VerificationReport{};
    t.rows.push_back({std::to_string(cfg.n), r.state, to_string(cfg.noise), class_name(c), fmt(r.q_star), row.status,
                      row.cert_path, sci(v.transfer_residual), sci(v.worst_min_eigenvalue), sci(v.block_positivity_value)});
    if (row.status == "gave-up") code = std::max(code, static_cast<int>(kGaveUp));
    if (row.status == "rejected" && code == kOk) code = kVerificationFailed;
  }
  emit(t, cfg);
  return code;
}

inline std::string npt_column_name(int a, int n) { return a == 1 ? "npt1" : (2 * a == n ? "npt_half" : "npt" + std::to_string(a)); }

inline int cmd_npt(const RunConfig& cfg) {
  const NamedState st = make_state(cfg.state, cfg.n);
  std::vector<int> shapes;
  if (cfg.shape == "1" || cfg.shape == "both") shapes.push_back(1);
  if ((cfg.shape == "half" || cfg.shape == "both") && cfg.n % 2 == 0 && cfg.n / 2 != 1) shapes.push_back(cfg.n / 2);
  if (cfg.shape != "1" && cfg.shape != "half" && cfg.shape != "both")
    throw std::invalid_argument("--shape must be 1, half or both");
  if (shapes.empty()) throw std::invalid_argument("the (N/2, N/2) shape needs an even n");
  Table t{{"n", "state", "noise", "shape", "cut", "q_threshold", "never_npt", "spread"}, {}};
  for (int a : shapes) {
    const auto r = npt_threshold_shape(st, cfg.noise, a);
    t.rows.push_back({std::to_string(cfg.n), st.label(), to_string(cfg.noise),
                      "(" + std::to_string(a) + "," + std::to_string(cfg.n - a) + ")", r.bipartition,
                      r.q_threshold ? fmt(*r.q_threshold) : "", r.never_npt() ? "true" : "false", fmt(r.spread)});
  }
  emit(t, cfg);
  return kOk;
}

inline int cmd_scaling(const RunConfig& cfg) {
  const int last = cfg.n_max > 0 ? cfg.n_max : cfg.n;
  if (last < cfg.n) throw std::invalid_argument("--n-max must not be smaller than --n");
  for (auto c : cfg.classes)
    if (needs_even_n(c)) throw std::invalid_argument("scaling supports the classes ea and dge only");
  check_class_size(cfg.classes.front(), cfg.n);
  check_class_size(cfg.classes.front(), last);
  Table t{{"n", "class", "state", "noise", "q_star", "status", "certificate"}, {}};
  int code = kOk;
  for (int n = cfg.n; n <= last; ++n)
    for (auto c : cfg.classes) {
      if (cfg.state == "cluster" && n != 4) continue;
      if (cfg.state == "upb" && n != 3) continue;
      const auto row = run_threshold(cfg, c, n, cfg.state, cfg.noise);
      t.rows.push_back({std::to_string(n), class_name(c), row.result.state, to_string(cfg.noise), fmt(row.result.q_star),
                        row.status, row.cert_path});
      if (row.status == "gave-up") code = std::max(code, static_cast<int>(kGaveUp));
      if (row.status == "rejected" && code == kOk) code = kVerificationFailed;
    }
  emit(t, cfg);
  return code;
}

inline int cmd_table(const RunConfig& cfg) {
  int which = 0;
  if (cfg.table == "I" || cfg.table == "1" || cfg.table == "local") which = 1;
  if (cfg.table == "II" || cfg.table == "2" || cfg.table == "global") which = 2;
  if (!which) throw std::invalid_argument("--table must be I or II");
  if (cfg.scope != "quick" && cfg.scope != "full") throw std::invalid_argument("--scope must be quick or full");
  const NoiseKind noise = which == 1 ? NoiseKind::Local : NoiseKind::Global;
  Table t{{"table", "n", "state", "column", "value", "reference", "deviation", "status", "certificate"}, {}};
  int code = kOk;
  for (const auto& cell : reference_cells()) {
    if (cell.table != which || (cell.n == 6 && cfg.scope != "full")) continue;
    std::string value, status, path;
    double dev = std::numeric_limits<double>::quiet_NaN();
    if (cell.column.rfind("npt", 0) == 0) {
      const auto r = npt_threshold_shape(make_state(cell.state, cell.n), noise, cell.column == "npt1" ? 1 : cell.n / 2);
      if (r.q_threshold) {
        value = fmt(*r.q_threshold);
        if (cell.value) dev = *r.q_threshold - *cell.value;
        status = "npt";
      } else {
        value = "never";
        status = "never-npt";
      }
    } else {
      const auto row = run_threshold(cfg, parse_class(cell.column), cell.n, cell.state, noise);
      value = fmt(row.result.q_star);
      status = row.status;
      path = row.cert_path;
      if (cell.value && std::isfinite(row.result.q_star)) dev = row.result.q_star - *cell.value;
      if (row.status == "gave-up") code = std::max(code, static_cast<int>(kGaveUp));
      if (row.status == "rejected" && code == kOk) code = kVerificationFailed;
    }
    t.rows.push_back({which == 1 ? "I" : "II", std::to_string(cell.n), cell.state, cell.column, value,
                      cell.never ? "never" : fmt(*cell.value, 3), fmt(dev), status, path});
  }
  emit(t, cfg);
  return code;
}

inline int cmd_verify(const RunConfig& cfg) {
  FeasibilityCertificate cert;
  try {
    cert = load_certificate(cfg.path);
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return kVerificationFailed;
  }
  VerifyOptions vo;
  vo.seed = cfg.seed;
  const auto rep = verify_certificate(cert, vo);
  std::cout << "class " << class_name(cert.cls) << ", n " << cert.n << ", noise " << to_string(cert.noise) << ", q "
            << cert.q << ", state " << cert.state << '\n'
            << "system residual        " << sci(rep.system_residual) << '\n'
            << "transfer residual      " << sci(rep.transfer_residual) << '\n';
  if (rep.heuristic)
    std::cout << "block-positivity value " << sci(rep.block_positivity_value) << " (heuristic)\n";
  else
    std::cout << "worst min eigenvalue   " << sci(rep.worst_min_eigenvalue) << " over " << rep.constraints_checked
              << " constraints\n";
  std::cout << (rep.valid ? "valid" : "INVALID: " + rep.failure) << '\n';
  return rep.valid ? kOk : kVerificationFailed;
}

inline int run(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw std::invalid_argument("--format must be csv or json");
  if (!(cfg.resolution > 0 && cfg.resolution < 1)) throw std::invalid_argument("--resolution must lie in (0, 1)");
  if (cfg.command == "thresholds") return cmd_thresholds(cfg);
  if (cfg.command == "table") return cmd_table(cfg);
  if (cfg.command == "scaling") return cmd_scaling(cfg);
  if (cfg.command == "npt") return cmd_npt(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

}  // namespace dissoc::cli
