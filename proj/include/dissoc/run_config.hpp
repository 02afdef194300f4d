#pragma once

// Command-line run configuration and its JSON form.

#include <dissoc/channels.hpp>
#include <dissoc/decomposition.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace dissoc {

struct RunConfig {
  std::string command;  // thresholds | table | scaling | npt | verify
  int n = 3;
  int n_max = 0;  // scaling: last n (0 means n only)
  std::string state = "ghz";
  NoiseKind noise = NoiseKind::Local;
  std::vector<DissociationClass> classes{DissociationClass::EA};
  double resolution = 1e-3;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string format = "csv";  // csv | json
  std::string out;             // empty: stdout
  std::string certs = "certificates";
  std::string table = "I";     // I (local) | II (global)
  std::string scope = "quick";  // quick | full
  std::string shape = "both";   // npt: 1 | half | both
  std::string path;             // verify
  bool dedup = true;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline std::vector<DissociationClass> parse_class_list(const std::string& text) {
  std::vector<DissociationClass> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_class(item));
  if (out.empty()) throw std::invalid_argument("empty class list");
  return out;
}

inline std::string class_list_string(const std::vector<DissociationClass>& cs) {
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + class_name(cs[i]);
  return s;
}

inline nlohmann::json to_json(const RunConfig& c) {
  return {{"command", c.command},   {"n", c.n},           {"n_max", c.n_max},
          {"state", c.state},       {"noise", to_string(c.noise)},
          {"classes", class_list_string(c.classes)},
          {"resolution", c.resolution}, {"seed", c.seed}, {"threads", c.threads},
          {"format", c.format},     {"out", c.out},       {"certs", c.certs},
          {"table", c.table},       {"scope", c.scope},   {"shape", c.shape},
          {"path", c.path},         {"dedup", c.dedup}};
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.n = j.at("n").get<int>();
  c.n_max = j.at("n_max").get<int>();
  c.state = j.at("state").get<std::string>();
  c.noise = parse_noise(j.at("noise").get<std::string>());
  c.classes = parse_class_list(j.at("classes").get<std::string>());
  c.resolution = j.at("resolution").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.threads = j.at("threads").get<int>();
  c.format = j.at("format").get<std::string>();
  c.out = j.at("out").get<std::string>();
  c.certs = j.at("certs").get<std::string>();
  c.table = j.at("table").get<std::string>();
  c.scope = j.at("scope").get<std::string>();
  c.shape = j.at("shape").get<std::string>();
  c.path = j.at("path").get<std::string>();
  c.dedup = j.at("dedup").get<bool>();
  return c;
}

}  // namespace dissoc
