#include "commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace dissoc;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("dissoc_cli_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c;
  c.command = "scaling";
  c.n = 4;
  c.n_max = 6;
  c.state = "random:9";
  c.noise = NoiseKind::Global;
  c.classes = {DissociationClass::EA, DissociationClass::OneDetached};
  c.resolution = 5e-3;
  c.seed = 77;
  c.threads = 3;
  c.format = "json";
  c.out = "x.json";
  c.dedup = false;
  EXPECT_EQ(run_config_from_json(to_json(c)), c);
  EXPECT_EQ(class_list_string(c.classes), "ea,dge");
  EXPECT_THROW(parse_class_list(","), std::invalid_argument);
}

TEST(Table, CsvAndJson) {
  const cli::Table t{{"a", "b"}, {{"1", "x"}, {"2", "y"}}};
  std::ostringstream csv, js;
  t.write(csv, "csv");
  t.write(js, "json");
  EXPECT_EQ(csv.str(), "a,b\n1,x\n2,y\n");
  const auto j = nlohmann::json::parse(js.str());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["b"], "y");
}

TEST(Commands, ThresholdsWriteVerifiableCertificates) {
  const auto dir = scratch("thresholds");
  RunConfig c;
  c.command = "thresholds";
  c.n = 3;
  c.state = "ghz";
  c.classes = {DissociationClass::EA, DissociationClass::OneDetached};
  c.certs = (dir / "certs").string();
  c.out = (dir / "out.csv").string();
  ASSERT_EQ(cli::run(c), cli::kOk);
  const std::string out = slurp(c.out);
  EXPECT_NE(out.find(",ea,0.490"), std::string::npos) << out;
  EXPECT_NE(out.find("verified"), std::string::npos);

  RunConfig v;
  v.command = "verify";
  v.path = (dir / "certs" / "ea_n3_ghz_local.json").string();
  EXPECT_EQ(cli::run(v), cli::kOk);

  auto j = nlohmann::json::parse(slurp(v.path));
  j["q"] = 0.7;
  v.path = (dir / "tampered.json").string();
  std::ofstream(v.path) << j.dump();
  EXPECT_EQ(cli::run(v), cli::kVerificationFailed);

  v.path = (dir / "broken.json").string();
  std::ofstream(v.path) << "{\"q\": ";
  EXPECT_EQ(cli::run(v), cli::kVerificationFailed);
}

TEST(Commands, UsageErrorsThrowBeforeWork) {
  RunConfig c;
  c.command = "thresholds";
  c.n = 3;
  c.classes = {DissociationClass::PairClusters};
  EXPECT_THROW(cli::run(c), std::invalid_argument);
  c.classes = {DissociationClass::EA};
  c.state = "cluster";
  EXPECT_THROW(cli::run(c), std::invalid_argument);
  c.state = "ghz";
  c.resolution = 0;
  EXPECT_THROW(cli::run(c), std::invalid_argument);
  c.resolution = 1e-3;
  c.command = "table";
  c.table = "III";
  EXPECT_THROW(cli::run(c), std::invalid_argument);
  c.command = "scaling";
  c.classes = {DissociationClass::HalfClusters};
  EXPECT_THROW(cli::run(c), std::invalid_argument);
  c.command = "frobnicate";
  EXPECT_THROW(cli::run(c), std::invalid_argument);
}

TEST(Commands, NptJson) {
  const auto dir = scratch("npt");
  RunConfig c;
  c.command = "npt";
  c.n = 4;
  c.state = "ghz";
  c.noise = NoiseKind::Global;
  c.format = "json";
  c.out = (dir / "npt.json").string();
  ASSERT_EQ(cli::run(c), cli::kOk);
  const auto j = nlohmann::json::parse(slurp(c.out));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_NEAR(std::stod(j[0]["q_threshold"].get<std::string>()), 1.0 / 9.0, 1e-4);
  EXPECT_EQ(j[1]["shape"], "(2,2)");
}
