#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fluxcat/experiment.hpp"
#include "fluxcat/selftest.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Orthogonality-catastrophe experiments for 1D fermions in a magnetic potential"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  std::string config_path;
  int jobs = 0;
  std::string out_dir;
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--jobs", jobs, "Worker threads (default: available parallelism)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Directory for relative output paths");

  auto* selftest = app.add_subcommand("selftest", "Run the property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fluxcat::kExitError;
  }

  if (*selftest) {
    const auto results = fluxcat::run_selftest(std::cout);
    const auto failed = std::count_if(results.begin(), results.end(),
                                      [](const auto& c) { return !c.passed; });
    std::cout << (results.size() - failed) << "/" << results.size() << " properties hold\n";
    return failed == 0 ? fluxcat::kExitOk : fluxcat::kExitPropertyFailure;
  }

  fluxcat::ExperimentConfig cfg;
  try {
    cfg = fluxcat::load_config(config_path);
  } catch (const fluxcat::ConfigError& e) {
    std::cerr << "flux-catastrophe: invalid config " << config_path << "\n";
    for (const auto& issue : e.issues()) std::cerr << "  " << issue << "\n";
    return fluxcat::kExitError;
  }

  fluxcat::set_worker_count(jobs);
  fluxcat::RunOptions opts;
  if (!out_dir.empty()) opts.out_dir = std::filesystem::path(out_dir);
  const auto outcome = fluxcat::run(cfg, opts);
  for (const auto& f : outcome.files) std::cerr << "wrote " << f.string() << "\n";
  return outcome.exit_code;
}
