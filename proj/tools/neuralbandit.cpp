#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "neuralbandit/commands.hpp"

namespace cli = neuralbandit::cli;

int main(int argc, char** argv) {
  CLI::App app{"NeuralBandit contextual bandit experiments"};
  app.require_subcommand(1);

  std::string config_path;
  cli::RunOverrides overrides;
  std::string out_dir;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config and write CSV + manifest");
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--horizon", overrides.horizon, "Rounds per run");
  run->add_option("--runs", overrides.runs, "Number of averaged runs");
  run->add_option("--seed", overrides.seed, "Top-level seed");
  run->add_option("--gamma", overrides.gamma, "Action exploration rate");
  run->add_option("--gamma-model", overrides.gamma_model, "Committee exploration rate");
  run->add_option("--drift-period", overrides.drift_period, "Rounds between class swaps (0 = none)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--parallel", overrides.parallel, "Worker threads (default: number of runs)");

  cli::FetchOptions fetch;
  std::string fetch_dir;
  CLI::App* fetch_cmd = app.add_subcommand("fetch-data", "Download the covertype dataset");
  fetch_cmd->add_option("--dir", fetch_dir, "Target directory (default: $NEURALBANDIT_DATA_DIR or ./data)");
  fetch_cmd->add_option("--url", fetch.url, "Source URL");

  cli::GridOptions grid;
  CLI::App* grid_cmd = app.add_subcommand("grid", "List the committee model grid");
  grid_cmd->add_option("--hidden-sizes", grid.hidden_sizes, "Hidden layer sizes")->delimiter(',');
  grid_cmd->add_option("--lambdas", grid.lambdas, "Learning steps")->delimiter(',');
  grid_cmd->add_option("--gamma", grid.gamma, "Exploration rate");
  grid_cmd->add_option("--seed", grid.seed, "Base seed");

  cli::SelftestCommandOptions selftest;
  std::string fault;
  CLI::App* self_cmd = app.add_subcommand("selftest", "Run the fast invariant suite");
  self_cmd->add_option("--seed", selftest.seed, "Seed for the checks");
  self_cmd->add_option("--inject-fault", fault, "Negative control: gradient-sign")
      ->check(CLI::IsMember({"gradient-sign"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitConfigError;
  }

  if (*run) {
    if (!out_dir.empty()) overrides.out = out_dir;
    return cli::cmd_run(config_path, overrides, std::cout, std::cerr);
  }
  if (*fetch_cmd) {
    fetch.dir = fetch_dir;
    return cli::cmd_fetch_data(fetch, std::cout, std::cerr);
  }
  if (*grid_cmd) return cli::cmd_grid(grid, std::cout, std::cerr);
  selftest.corrupt_gradient_sign = fault == "gradient-sign";
  return cli::cmd_selftest(selftest, std::cout);
}
