#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "wittenlab/parallel.hpp"

int main(int argc, char** argv) {
  using namespace wittenlab::cli;

  CLI::App app{"Spectral shift functions and Witten index regularizations"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir;
  unsigned threads = wittenlab::default_thread_count();
  std::uint64_t seed = 0;

  app.add_option("--config", config_file, "YAML run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides output.directory)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized suites (overrides `seed`)");

  for (const auto& name : command_names()) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_file);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }

  RunOptions opts;
  if (!out_dir.empty()) opts.out = out_dir;
  opts.threads = threads;
  if (seed_opt->count() > 0) opts.seed = seed;
  return run_command(app.get_subcommands().front()->get_name(), cfg, opts, std::cerr);
}
