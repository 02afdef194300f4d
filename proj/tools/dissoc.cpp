#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace dissoc;
  CLI::App app{"Entanglement dissociation thresholds of depolarizing channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  std::string noise = "local", classes = "ea";

  auto common = [&](CLI::App* sub, bool with_classes) {
    sub->add_option("--n", cfg.n, "number of qubits")->check(CLI::Range(2, 8));
    sub->add_option("--state", cfg.state, "ghz | w | cluster | upb | mixed | random:<seed> | all");
    sub->add_option("--noise", noise, "local | global")->check(CLI::IsMember({"local", "global"}));
    if (with_classes) sub->add_option("--classes", classes, "comma-separated: ea|a, b, c, d, dge|e");
    sub->add_option("--resolution", cfg.resolution, "bisection resolution on q");
    sub->add_option("--seed", cfg.seed, "seed for randomized screens");
    sub->add_option("--threads", cfg.threads, "worker cap (0: all cores)");
    sub->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--certs", cfg.certs, "certificate directory");
    sub->add_flag("!--no-dedup", cfg.dedup, "keep symmetry-equivalent blocks");
  };

  auto* th = app.add_subcommand("thresholds", "largest certified q per class");
  common(th, true);

  auto* tb = app.add_subcommand("table", "reproduce a threshold table with reference values");
  common(tb, false);
  tb->add_option("--table", cfg.table, "I (local) | II (global)");
  tb->add_option("--scope", cfg.scope, "quick (n = 3, 4) | full (adds n = 6 GHZ)");

  auto* sc = app.add_subcommand("scaling", "thresholds over a range of n");
  common(sc, true);
  sc->add_option("--n-max", cfg.n_max, "last n of the range")->check(CLI::Range(3, 8));

  auto* np = app.add_subcommand("npt", "partial-transpose thresholds");
  common(np, false);
  np->add_option("--shape", cfg.shape, "1 | half | both");

  auto* vf = app.add_subcommand("verify", "re-verify a certificate file");
  vf->add_option("path", cfg.path, "certificate JSON")->required();
  vf->add_option("--seed", cfg.seed, "seed for the block-positivity screen");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.noise = parse_noise(noise);
    cfg.classes = parse_class_list(classes);
    return cli::run(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
