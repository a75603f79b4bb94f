#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "neuralbandit/policy.hpp"
#include "neuralbandit/stream.hpp"

namespace neuralbandit::eval {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reward of the reference the regret is measured against.
//   perfect:            1 every round (exactly one arm pays 1)
//   fixed_accuracy(p):  Bernoulli(p) per round, independent of the policy
//   expected_accuracy(p): p every round (the mean of the Bernoulli mode)
enum class OracleKind { kPerfect, kFixedAccuracy, kExpectedAccuracy };

struct OracleSpec {
  OracleKind kind = OracleKind::kPerfect;
  double accuracy = 1.0;

  void validate() const;
  std::string describe() const;
};

enum class StreamKind { kCovertype, kSyntheticCovertype, kXor };

struct StreamSpec {
  StreamKind kind = StreamKind::kXor;
  std::filesystem::path data_path;  // kCovertype
  std::size_t rows = 0;             // subsample size (kCovertype) or row count (synthetic)
  std::uint64_t data_seed = 0;      // shuffle seed, or generator seed for synthetic data
  std::size_t noise_bits = 0;       // kXor
  std::size_t drift_period = 0;     // 0 disables drift
};

enum class PolicyKind { kNeuralBandit1, kNeuralBandit2, kNeuralBandit3, kBanditron, kRandom };

struct PolicySpec {
  std::string id;
  PolicyKind kind = PolicyKind::kNeuralBandit1;
  std::size_t hidden_units = 25;              // kNeuralBandit1
  double lambda = 0.1;                        // kNeuralBandit1
  std::vector<std::size_t> hidden_sizes;      // committees
  std::vector<double> lambdas;                // committees
  std::optional<double> gamma;                // overrides the experiment gamma
};

struct ExperimentConfig {
  std::string name = "experiment";
  StreamSpec stream;
  std::vector<PolicySpec> policies;
  std::size_t runs = 1;
  std::size_t horizon = 10000;
  std::size_t window = 0;        // 0: trailing_window() picks a default
  OracleSpec oracle;
  double gamma = 0.005;
  double gamma_model = 0.1;
  std::uint64_t seed = 42;
  std::size_t parallel = 0;      // 0: one worker per run
  std::size_t export_every = 1;  // CSV row stride in rounds; the last round is always written
  std::filesystem::path output_dir = "results";
  std::string source_text;       // config file contents, copied into the manifest

  // 100,000 rounds for horizons of at least 1,000,000, otherwise 10% of the
  // horizon; an explicit window wins.
  std::size_t trailing_window() const;

  // Throws ConfigError naming the offending field.
  void validate() const;
  std::vector<std::string> warnings() const;
};

std::string policy_kind_name(PolicyKind kind);
std::string stream_kind_name(StreamKind kind);

// Stream material shared by every run of an experiment: the encoded dataset is
// built once, each run opens its own cursor.
class Environment {
 public:
  // Throws data::DataMissingError when the dataset file is absent.
  static Environment prepare(const StreamSpec& spec);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t arm_count() const { return arm_count_; }
  std::size_t dataset_size() const { return dataset_ ? dataset_->size() : 0; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Stream for the run seeded with `run_seed`; `start_offset` receives the
  // replay offset (0 for generated streams).
  std::unique_ptr<data::EventSource> open(std::uint64_t run_seed, std::size_t& start_offset) const;

 private:
  StreamSpec spec_;
  std::shared_ptr<const data::EncodedDataset> dataset_;
  std::size_t input_dim_ = 0;
  std::size_t arm_count_ = 0;
  std::vector<std::string> warnings_;
};

// Seed streams derived from a run seed.
inline constexpr std::uint64_t kPlayStream = 1;
inline constexpr std::uint64_t kOracleStream = 2;
inline constexpr std::uint64_t kOffsetStream = 3;
inline constexpr std::uint64_t kStreamStream = 4;

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const ExperimentConfig& config,
                                    std::size_t input_dim, std::size_t arm_count, std::uint64_t seed);

// Seeds of every committee member built by make_policy for `seed`.
std::vector<std::uint64_t> member_seeds(const PolicySpec& spec, std::uint64_t seed);

struct RunRecord {
  std::string policy_id;
  std::uint64_t seed = 0;
  std::size_t start_offset = 0;
  std::vector<std::uint32_t> played;
  std::vector<double> reward;
  std::vector<double> oracle_reward;
  std::vector<double> regret;  // cumulated

  std::size_t horizon() const { return played.size(); }
  double obtained_total() const;
};

// Plays `horizon` rounds: decide, reveal the played arm's reward, learn.
// Throws ConfigError when the policy and stream disagree on dimensions.
RunRecord simulate(Policy& policy, data::EventSource& source, std::size_t horizon,
                   const OracleSpec& oracle, Rng& play_rng, Rng& oracle_rng);

RunRecord run_once(const ExperimentConfig& config, const Environment& env, const PolicySpec& policy,
                   std::uint64_t seed);

// Fraction of the last `window` rounds whose played arm paid 1. Throws
// std::invalid_argument when window is 0 or exceeds the horizon.
double classification_rate(const RunRecord& record, std::size_t window);

// Trailing-window rate after every round (shorter windows at the start).
std::vector<double> rolling_classification_rate(const RunRecord& record, std::size_t window);

struct RunSummary {
  std::uint64_t seed = 0;
  std::size_t start_offset = 0;
  double final_regret = 0.0;
  double final_rate = 0.0;
};

struct AggregateCurve {
  std::string policy_id;
  std::vector<double> mean_regret;
  std::vector<double> std_regret;
  std::vector<double> mean_rate;
  std::vector<RunSummary> runs;

  double final_mean_rate() const { return mean_rate.empty() ? 0.0 : mean_rate.back(); }
};

// Folds run records (in the given order) into per-round means and sample
// standard deviations. All records must share a horizon.
AggregateCurve aggregate(const std::vector<RunRecord>& records, std::size_t window);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<AggregateCurve> curves;  // one per policy, config order
  std::vector<std::string> warnings;
};

// Every policy, runs seeded config.seed + i. Runs execute on up to `parallel`
// threads; results do not depend on the thread count.
ExperimentResult run_averaged(const ExperimentConfig& config, const Environment& env);
ExperimentResult run_averaged(const ExperimentConfig& config);

struct ExportedFiles {
  std::filesystem::path csv;
  std::filesystem::path manifest;
};

// Writes <output_dir>/<name>.csv and <output_dir>/<name>.manifest.json.
// Throws std::runtime_error when the directory cannot be written.
ExportedFiles export_results(const ExperimentResult& result, const std::filesystem::path& output_dir);

std::string format_csv(const ExperimentResult& result);

struct CsvRow {
  std::size_t round = 0;
  std::string policy;
  double mean_regret = 0.0;
  double std_regret = 0.0;
  double mean_rate = 0.0;
};
std::vector<CsvRow> parse_csv(const std::string& text);

}  // namespace neuralbandit::eval
