#pragma once

#include <filesystem>
#include <string>

#include "neuralbandit/evaluation.hpp"

namespace neuralbandit::cli {

// Parses the key/value experiment format:
//
//   # comment
//   name = desk
//   stream = synthetic-covertype      # covertype | synthetic-covertype | xor
//   horizon = 50000
//   oracle = perfect                  # or fixed_accuracy:0.93, expected_accuracy:0.93
//
//   [policy nb2]
//   kind = neuralbandit2
//   hidden_sizes = 5, 25
//   lambdas = 0.1, 1
//
// Throws eval::ConfigError with the line number and key on any problem.
eval::ExperimentConfig parse_config(const std::string& text);

// Reads and parses a file; relative data paths are resolved against the
// config file's directory first, then against $NEURALBANDIT_DATA_DIR.
eval::ExperimentConfig load_config(const std::filesystem::path& path);

// Resolution rule used by load_config, exposed for the CLI overrides.
std::filesystem::path resolve_data_path(const std::filesystem::path& data,
                                        const std::filesystem::path& config_dir);

std::filesystem::path default_data_dir();

}  // namespace neuralbandit::cli
