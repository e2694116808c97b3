#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pauligap/cli/commands.hpp"
#include "pauligap/parallel.hpp"

int main(int argc, char** argv) {
  using namespace pauligap::cli;
  CLI::App app{"pauligap: band gaps of periodically perturbed Dirac-type operators"};
  app.set_version_flag("--version", PAULIGAP_VERSION);

  std::string command, config_path, out_dir;
  int threads = 0;
  std::uint64_t seed = 0;
  app.add_option("command", command, "bands | gap | sweep | feshbach | kernel | verify")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
  auto* thr_opt = app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized spot checks");
  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    if (*out_opt) cfg.out_dir = out_dir;
    if (*seed_opt) cfg.seed = seed;
    if (*thr_opt) pauligap::set_thread_count(threads);
    Json inv = {{"command", command}, {"config", config_path}};
    if (*out_opt) inv["out"] = out_dir;
    if (*thr_opt) inv["threads"] = threads;
    if (*seed_opt) inv["seed"] = seed;
    return run_command(command, cfg, inv, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
