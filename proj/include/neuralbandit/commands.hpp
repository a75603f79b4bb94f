#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace neuralbandit::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitMissingData = 2;
inline constexpr int kExitRuntimeFailure = 3;

struct RunOverrides {
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<double> gamma;
  std::optional<double> gamma_model;
  std::optional<std::size_t> drift_period;
  std::optional<std::filesystem::path> out;
  std::optional<std::size_t> parallel;
};

int cmd_run(const std::filesystem::path& config_path, const RunOverrides& overrides, std::ostream& out,
            std::ostream& err);

struct GridOptions {
  std::vector<std::size_t> hidden_sizes = {1, 5, 25, 50, 100};
  std::vector<double> lambdas = {0.01, 0.1, 1.0};
  double gamma = 0.005;
  std::uint64_t seed = 42;
};

int cmd_grid(const GridOptions& options, std::ostream& out, std::ostream& err);

struct SelftestCommandOptions {
  bool corrupt_gradient_sign = false;
  std::uint64_t seed = 2014;
};

int cmd_selftest(const SelftestCommandOptions& options, std::ostream& out);

struct FetchOptions {
  std::filesystem::path dir;
  std::string url = "https://archive.ics.uci.edu/ml/machine-learning-databases/covtype/covtype.data.gz";
};

// Downloads and decompresses the dataset with curl and gzip.
int cmd_fetch_data(const FetchOptions& options, std::ostream& out, std::ostream& err);

}  // namespace neuralbandit::cli
