// photon-resonance <subcommand> --config <file> [--out <dir>] [--threads N]

#include "photon/config.hpp"
#include "photon/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

using namespace photon::cli;

int main(int argc, char** argv) {
  CLI::App app{"Resonances, bound states and dynamics of photons in a medium of two-level atoms"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  int threads = 0;
  const std::vector<std::string> names{"greens-table", "resonances", "trace-epsilon",
                                       "bound-states", "asymptotics-compare", "dynamics"};
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "config file (key = value)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides `output`)");
    sub->add_option("--threads", threads, "worker threads (overrides `threads`)")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  const Experiment experiment = *parse_experiment(name);

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    if (cfg.experiment && *cfg.experiment != experiment) {
      throw ConfigError(config_path + ":" + std::to_string(cfg.set_keys.at("experiment")) +
                        ": experiment '" + experiment_name(*cfg.experiment) + "' does not match subcommand '" + name + "'");
    }
    cfg.experiment = experiment;
    if (!out_dir.empty()) cfg.output = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (const char* env = std::getenv("PHOTON_RESONANCE_THREADS")) {
      const int n = std::atoi(env);
      if (n < 1) throw ConfigError(std::string("PHOTON_RESONANCE_THREADS: must be a positive integer, got '") + env + "'");
      cfg.threads = n;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  }

  const auto report = run(cfg, std::cerr);
  for (const auto& f : report.files) std::cout << f << '\n';
  if (report.exit_code != exit_ok) std::cerr << "error: " << report.message << '\n';
  return report.exit_code;
}
