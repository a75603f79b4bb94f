#include "neuralbandit/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <exception>

#include "neuralbandit/committee.hpp"
#include "neuralbandit/config.hpp"
#include "neuralbandit/dataset.hpp"
#include "neuralbandit/evaluation.hpp"
#include "neuralbandit/selftest.hpp"

namespace neuralbandit::cli {

namespace {

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

}  // namespace

int cmd_run(const std::filesystem::path& config_path, const RunOverrides& overrides, std::ostream& out,
            std::ostream& err) {
  eval::ExperimentConfig config;
  try {
    config = load_config(config_path);
    if (overrides.horizon) config.horizon = *overrides.horizon;
    if (overrides.runs) config.runs = *overrides.runs;
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.gamma) config.gamma = *overrides.gamma;
    if (overrides.gamma_model) config.gamma_model = *overrides.gamma_model;
    if (overrides.drift_period) config.stream.drift_period = *overrides.drift_period;
    if (overrides.out) config.output_dir = *overrides.out;
    if (overrides.parallel) config.parallel = *overrides.parallel;
    config.validate();
  } catch (const eval::ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    const eval::Environment env = eval::Environment::prepare(config.stream);
    const eval::ExperimentResult result = eval::run_averaged(config, env);
    for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
    const eval::ExportedFiles files = eval::export_results(result, config.output_dir);
    for (const eval::AggregateCurve& c : result.curves) {
      char line[256];
      std::snprintf(line, sizeof line, "%-16s final regret %.1f  trailing rate %.4f\n", c.policy_id.c_str(),
                    c.mean_regret.back(), c.final_mean_rate());
      out << line;
    }
    out << "wrote " << files.csv.string() << " and " << files.manifest.string() << '\n';
    return kExitOk;
  } catch (const data::DataMissingError& e) {
    err << e.what() << "\nrun `neuralbandit fetch-data` or set NEURALBANDIT_DATA_DIR to the directory "
           "holding covtype.data\n";
    return kExitMissingData;
  } catch (const eval::ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return kExitRuntimeFailure;
  }
}

int cmd_grid(const GridOptions& options, std::ostream& out, std::ostream& err) {
  ModelGrid grid;
  try {
    grid = make_model_grid(options.hidden_sizes, options.lambdas, options.gamma, options.seed, 1, 1);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  out << "index,hidden_units,lambda,gamma,seed\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const PolicyConfig& spec = grid.specs[i];
    char line[160];
    std::snprintf(line, sizeof line, "%zu,%zu,%.10g,%.10g,%llu\n", i, spec.hidden_units, spec.lambda,
                  spec.gamma, static_cast<unsigned long long>(spec.seed));
    out << line;
  }
  return kExitOk;
}

int cmd_selftest(const SelftestCommandOptions& options, std::ostream& out) {
  SelftestOptions opt;
  opt.corrupt_gradient_sign = options.corrupt_gradient_sign;
  opt.seed = options.seed;
  bool all = true;
  for (const CheckResult& check : run_selftest(opt)) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    all = all && check.passed;
  }
  return all ? kExitOk : kExitRuntimeFailure;
}

int cmd_fetch_data(const FetchOptions& options, std::ostream& out, std::ostream& err) {
  const std::filesystem::path dir = options.dir.empty() ? default_data_dir() : options.dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "cannot create " << dir.string() << ": " << ec.message() << '\n';
    return kExitRuntimeFailure;
  }
  const std::filesystem::path gz = dir / "covtype.data.gz";
  const std::filesystem::path csv = dir / "covtype.data";
  out << "downloading " << options.url << '\n';
  const std::string download = "curl -fL --retry 3 -o " + shell_quote(gz.string()) + " " + shell_quote(options.url);
  if (std::system(download.c_str()) != 0) {
    err << "download failed\n";
    return kExitRuntimeFailure;
  }
  const std::string unpack = "gzip -dc " + shell_quote(gz.string()) + " > " + shell_quote(csv.string());
  if (std::system(unpack.c_str()) != 0) {
    err << "decompression failed\n";
    return kExitRuntimeFailure;
  }
  try {
    const data::RawDataset raw = data::load_covertype_csv(csv);
    out << "wrote " << csv.string() << " (" << raw.size() << " rows)\n";
  } catch (const std::exception& e) {
    err << "downloaded file is not a valid covertype CSV: " << e.what() << '\n';
    return kExitRuntimeFailure;
  }
  return kExitOk;
}

}  // namespace neuralbandit::cli
