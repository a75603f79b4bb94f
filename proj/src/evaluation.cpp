#include "neuralbandit/evaluation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "neuralbandit/baselines.hpp"
#include "neuralbandit/committee.hpp"
#include "neuralbandit/neural_bandit.hpp"

namespace neuralbandit::eval {

namespace {

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field + ": " + message);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_committee(PolicyKind kind) {
  return kind == PolicyKind::kNeuralBandit2 || kind == PolicyKind::kNeuralBandit3;
}

nlohmann::json stream_json(const StreamSpec& s) {
  return {{"kind", stream_kind_name(s.kind)},
          {"data_path", s.data_path.string()},
          {"rows", s.rows},
          {"data_seed", s.data_seed},
          {"noise_bits", s.noise_bits},
          {"drift_period", s.drift_period}};
}

nlohmann::json policy_json(const PolicySpec& p) {
  nlohmann::json j = {{"id", p.id}, {"kind", policy_kind_name(p.kind)}};
  if (p.kind == PolicyKind::kNeuralBandit1) {
    j["hidden_units"] = p.hidden_units;
    j["lambda"] = p.lambda;
  }
  if (is_committee(p.kind)) {
    j["hidden_sizes"] = p.hidden_sizes;
    j["lambdas"] = p.lambdas;
  }
  if (p.gamma) j["gamma"] = *p.gamma;
  return j;
}

}  // namespace

void OracleSpec::validate() const {
  require(accuracy >= 0.0 && accuracy <= 1.0, "oracle", "accuracy must lie in [0, 1]");
}

std::string OracleSpec::describe() const {
  switch (kind) {
    case OracleKind::kPerfect: return "perfect";
    case OracleKind::kFixedAccuracy: return "fixed_accuracy(" + format_number(accuracy) + ")";
    case OracleKind::kExpectedAccuracy: return "expected_accuracy(" + format_number(accuracy) + ")";
  }
  return "unknown";
}

std::string policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kNeuralBandit1: return "neuralbandit1";
    case PolicyKind::kNeuralBandit2: return "neuralbandit2";
    case PolicyKind::kNeuralBandit3: return "neuralbandit3";
    case PolicyKind::kBanditron: return "banditron";
    case PolicyKind::kRandom: return "random";
  }
  return "unknown";
}

std::string stream_kind_name(StreamKind kind) {
  switch (kind) {
    case StreamKind::kCovertype: return "covertype";
    case StreamKind::kSyntheticCovertype: return "synthetic-covertype";
    case StreamKind::kXor: return "xor";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  require(!name.empty(), "name", "must not be empty");
  require(runs >= 1, "runs", "must be at least 1");
  require(horizon >= 1, "horizon", "must be at least 1");
  require(trailing_window() <= horizon, "window", "must not exceed horizon");
  require(gamma >= 0.0 && gamma <= 0.5, "gamma", "must lie in [0, 0.5]");
  require(gamma_model >= 0.0 && gamma_model <= 0.5, "gamma_model", "must lie in [0, 0.5]");
  require(export_every >= 1, "export_every", "must be at least 1");
  require(!policies.empty(), "policy", "at least one policy section is required");
  oracle.validate();
  if (stream.kind == StreamKind::kCovertype) {
    require(!stream.data_path.empty(), "data", "covertype streams need a data path");
  }
  if (stream.kind == StreamKind::kSyntheticCovertype) {
    require(stream.rows >= 1, "rows", "synthetic covertype needs a positive row count");
  }
  std::vector<std::string> ids;
  for (const PolicySpec& p : policies) {
    const std::string field = "policy." + p.id;
    require(!p.id.empty(), "policy", "every policy needs an id");
    for (const std::string& seen : ids) require(seen != p.id, field, "duplicate policy id");
    ids.push_back(p.id);
    const double g = p.gamma.value_or(gamma);
    require(g >= 0.0 && g <= 0.5, field + ".gamma", "must lie in [0, 0.5]");
    if (p.kind == PolicyKind::kNeuralBandit1) {
      require(p.hidden_units >= 1, field + ".hidden", "must be positive");
      require(p.lambda > 0.0 && p.lambda <= 1.0, field + ".lambda", "must lie in (0, 1]");
    }
    if (is_committee(p.kind)) {
      require(!p.hidden_sizes.empty(), field + ".hidden_sizes", "must not be empty");
      require(!p.lambdas.empty(), field + ".lambdas", "must not be empty");
      for (std::size_t h : p.hidden_sizes) require(h >= 1, field + ".hidden_sizes", "must be positive");
      for (double l : p.lambdas) require(l > 0.0 && l <= 1.0, field + ".lambdas", "must lie in (0, 1]");
    }
  }
}

std::size_t ExperimentConfig::trailing_window() const {
  if (window != 0) return window;
  if (horizon >= 1000000) return 100000;
  return std::max<std::size_t>(1, horizon / 10);
}

std::vector<std::string> ExperimentConfig::warnings() const {
  std::vector<std::string> out;
  for (const PolicySpec& p : policies) {
    if (p.kind == PolicyKind::kRandom) continue;
    if (p.gamma.value_or(gamma) == 0.0) {
      out.push_back("policy '" + p.id + "' runs with gamma = 0: arms that are never greedy never learn");
    }
  }
  return out;
}

Environment Environment::prepare(const StreamSpec& spec) {
  Environment env;
  env.spec_ = spec;
  if (spec.kind == StreamKind::kXor) {
    env.input_dim_ = 3 + spec.noise_bits;
    env.arm_count_ = 2;
    return env;
  }
  data::RawDataset raw;
  if (spec.kind == StreamKind::kCovertype) {
    raw = data::load_covertype_csv(spec.data_path);
    data::shuffle_rows(raw, spec.data_seed);
  } else {
    raw = data::synthetic_covertype(spec.rows, spec.data_seed);
  }
  const data::BinarizationScheme scheme = data::fit_binarization(raw);
  env.warnings_ = scheme.warnings;
  if (spec.kind == StreamKind::kCovertype) raw = data::take_rows(raw, spec.rows);
  auto encoded = std::make_shared<data::EncodedDataset>(data::encode_dataset(raw, scheme));
  env.input_dim_ = encoded->width;
  env.arm_count_ = encoded->class_count;
  env.dataset_ = std::move(encoded);
  return env;
}

std::unique_ptr<data::EventSource> Environment::open(std::uint64_t run_seed,
                                                     std::size_t& start_offset) const {
  std::optional<data::DriftSchedule> drift;
  if (spec_.drift_period > 0) drift = data::DriftSchedule{spec_.drift_period, 1};
  if (spec_.kind == StreamKind::kXor) {
    start_offset = 0;
    return std::make_unique<data::XorStream>(mix_seed(run_seed, kStreamStream), spec_.noise_bits, drift);
  }
  Rng offset_rng(mix_seed(run_seed, kOffsetStream));
  start_offset = static_cast<std::size_t>(offset_rng.below(dataset_->size()));
  return std::make_unique<data::ReplayStream>(dataset_, start_offset, drift);
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const ExperimentConfig& config,
                                    std::size_t input_dim, std::size_t arm_count, std::uint64_t seed) {
  const double gamma = spec.gamma.value_or(config.gamma);
  switch (spec.kind) {
    case PolicyKind::kNeuralBandit1: {
      PolicyConfig pc;
      pc.gamma = gamma;
      pc.lambda = spec.lambda;
      pc.hidden_units = spec.hidden_units;
      pc.seed = seed;
      pc.arm_count = arm_count;
      pc.input_dim = input_dim;
      return std::make_unique<NeuralBandit1>(pc);
    }
    case PolicyKind::kNeuralBandit2:
      return std::make_unique<NeuralBandit2>(
          make_model_grid(spec.hidden_sizes, spec.lambdas, gamma, seed, arm_count, input_dim),
          config.gamma_model, seed);
    case PolicyKind::kNeuralBandit3:
      return std::make_unique<NeuralBandit3>(
          make_model_grid(spec.hidden_sizes, spec.lambdas, gamma, seed, arm_count, input_dim), gamma,
          config.gamma_model, seed);
    case PolicyKind::kBanditron:
      return std::make_unique<Banditron>(arm_count, input_dim, gamma);
    case PolicyKind::kRandom:
      return std::make_unique<UniformRandom>(arm_count, input_dim);
  }
  throw ConfigError("unknown policy kind");
}

std::vector<std::uint64_t> member_seeds(const PolicySpec& spec, std::uint64_t seed) {
  if (!is_committee(spec.kind)) return {seed};
  std::vector<std::uint64_t> seeds;
  const std::size_t m = spec.hidden_sizes.size() * spec.lambdas.size();
  for (std::size_t i = 0; i < m; ++i) seeds.push_back(seed + i);
  return seeds;
}

double RunRecord::obtained_total() const {
  double total = 0.0;
  for (double r : reward) total += r;
  return total;
}

RunRecord simulate(Policy& policy, data::EventSource& source, std::size_t horizon,
                   const OracleSpec& oracle, Rng& play_rng, Rng& oracle_rng) {
  if (policy.input_dim() != source.input_dim() || policy.arm_count() != source.arm_count()) {
    throw ConfigError("policy '" + policy.name() + "' expects " + std::to_string(policy.input_dim()) +
                      " inputs and " + std::to_string(policy.arm_count()) + " arms, stream has " +
                      std::to_string(source.input_dim()) + " and " +
                      std::to_string(source.arm_count()));
  }
  RunRecord rec;
  rec.policy_id = policy.name();
  rec.played.reserve(horizon);
  rec.reward.reserve(horizon);
  rec.oracle_reward.reserve(horizon);
  rec.regret.reserve(horizon);

  double cumulated = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    const data::StreamEvent& event = source.next();
    const Decision d = policy.decide(event.context(), play_rng);
    const double reward = event.reward(d.played_arm);
    policy.learn(event.context(), d, reward);

    double reference = 1.0;
    if (oracle.kind == OracleKind::kFixedAccuracy) {
      reference = oracle_rng.bernoulli(oracle.accuracy) ? 1.0 : 0.0;
    } else if (oracle.kind == OracleKind::kExpectedAccuracy) {
      reference = oracle.accuracy;
    }
    cumulated += reference - reward;
    rec.played.push_back(static_cast<std::uint32_t>(d.played_arm));
    rec.reward.push_back(reward);
    rec.oracle_reward.push_back(reference);
    rec.regret.push_back(cumulated);
  }
  return rec;
}

RunRecord run_once(const ExperimentConfig& config, const Environment& env, const PolicySpec& policy,
                   std::uint64_t seed) {
  std::size_t offset = 0;
  std::unique_ptr<data::EventSource> source = env.open(seed, offset);
  std::unique_ptr<Policy> p = make_policy(policy, config, env.input_dim(), env.arm_count(), seed);
  Rng play_rng(mix_seed(seed, kPlayStream));
  Rng oracle_rng(mix_seed(seed, kOracleStream));
  RunRecord rec = simulate(*p, *source, config.horizon, config.oracle, play_rng, oracle_rng);
  rec.policy_id = policy.id;
  rec.seed = seed;
  rec.start_offset = offset;
  return rec;
}

double classification_rate(const RunRecord& record, std::size_t window) {
  if (window == 0) throw std::invalid_argument("classification window must be positive");
  if (window > record.horizon()) {
    throw std::invalid_argument("classification window exceeds the horizon");
  }
  double correct = 0.0;
  for (std::size_t t = record.horizon() - window; t < record.horizon(); ++t) {
    if (record.reward[t] == 1.0) correct += 1.0;
  }
  return correct / static_cast<double>(window);
}

std::vector<double> rolling_classification_rate(const RunRecord& record, std::size_t window) {
  if (window == 0) throw std::invalid_argument("classification window must be positive");
  std::vector<double> rate(record.horizon());
  std::size_t correct = 0;
  for (std::size_t t = 0; t < record.horizon(); ++t) {
    if (record.reward[t] == 1.0) ++correct;
    if (t >= window && record.reward[t - window] == 1.0) --correct;
    const std::size_t span = std::min(t + 1, window);
    rate[t] = static_cast<double>(correct) / static_cast<double>(span);
  }
  return rate;
}

AggregateCurve aggregate(const std::vector<RunRecord>& records, std::size_t window) {
  if (records.empty()) throw std::invalid_argument("nothing to aggregate");
  const std::size_t horizon = records.front().horizon();
  AggregateCurve curve;
  curve.policy_id = records.front().policy_id;
  curve.mean_regret.assign(horizon, 0.0);
  curve.mean_rate.assign(horizon, 0.0);
  std::vector<double> m2(horizon, 0.0);

  // Welford update in record order.
  double n = 0.0;
  for (const RunRecord& rec : records) {
    if (rec.horizon() != horizon) throw std::invalid_argument("runs have different horizons");
    n += 1.0;
    const std::vector<double> rate = rolling_classification_rate(rec, window);
    for (std::size_t t = 0; t < horizon; ++t) {
      const double delta = rec.regret[t] - curve.mean_regret[t];
      curve.mean_regret[t] += delta / n;
      m2[t] += delta * (rec.regret[t] - curve.mean_regret[t]);
      curve.mean_rate[t] += (rate[t] - curve.mean_rate[t]) / n;
    }
    const std::size_t w = std::min(window, horizon);
    curve.runs.push_back({rec.seed, rec.start_offset, rec.regret.back(), classification_rate(rec, w)});
  }
  curve.std_regret.assign(horizon, 0.0);
  if (records.size() > 1) {
    for (std::size_t t = 0; t < horizon; ++t) curve.std_regret[t] = std::sqrt(m2[t] / (n - 1.0));
  }
  return curve;
}

ExperimentResult run_averaged(const ExperimentConfig& config, const Environment& env) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  result.warnings = env.warnings();
  for (std::string& w : config.warnings()) result.warnings.push_back(std::move(w));

  const std::size_t workers = std::max<std::size_t>(1, config.parallel == 0 ? config.runs : config.parallel);
  for (const PolicySpec& spec : config.policies) {
    std::vector<RunRecord> records(config.runs);
    std::vector<std::exception_ptr> errors(config.runs);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < config.runs; i = next++) {
        try {
          records[i] = run_once(config, env, spec, config.seed + i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const std::size_t threads = std::min(workers, config.runs);
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    result.curves.push_back(aggregate(records, config.trailing_window()));
  }
  return result;
}

ExperimentResult run_averaged(const ExperimentConfig& config) {
  config.validate();
  return run_averaged(config, Environment::prepare(config.stream));
}

std::string format_csv(const ExperimentResult& result) {
  std::string out = "round,policy,mean_regret,std_regret,mean_classification_rate\n";
  const std::size_t stride = std::max<std::size_t>(1, result.config.export_every);
  for (const AggregateCurve& c : result.curves) {
    const std::size_t horizon = c.mean_regret.size();
    for (std::size_t t = 0; t < horizon; ++t) {
      const std::size_t round = t + 1;
      if (round % stride != 0 && round != horizon) continue;
      out += std::to_string(round);
      out += ',';
      out += c.policy_id;
      out += ',';
      out += format_number(c.mean_regret[t]);
      out += ',';
      out += format_number(c.std_regret[t]);
      out += ',';
      out += format_number(c.mean_rate[t]);
      out += '\n';
    }
  }
  return out;
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (line != "round,policy,mean_regret,std_regret,mean_classification_rate") {
    throw std::runtime_error("unexpected CSV header");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string round, policy, mean, sd, rate;
    if (!std::getline(fields, round, ',') || !std::getline(fields, policy, ',') ||
        !std::getline(fields, mean, ',') || !std::getline(fields, sd, ',') ||
        !std::getline(fields, rate)) {
      throw std::runtime_error("malformed CSV line: " + line);
    }
    rows.push_back({std::stoul(round), policy, std::stod(mean), std::stod(sd), std::stod(rate)});
  }
  return rows;
}

ExportedFiles export_results(const ExperimentResult& result, const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + output_dir.string() + ": " + ec.message());

  const ExperimentConfig& cfg = result.config;
  ExportedFiles files{output_dir / (cfg.name + ".csv"), output_dir / (cfg.name + ".manifest.json")};

  nlohmann::json manifest;
  manifest["name"] = cfg.name;
  nlohmann::json config = {{"stream", stream_json(cfg.stream)},
                           {"runs", cfg.runs},
                           {"horizon", cfg.horizon},
                           {"window", cfg.trailing_window()},
                           {"oracle", cfg.oracle.describe()},
                           {"gamma", cfg.gamma},
                           {"gamma_model", cfg.gamma_model},
                           {"seed", cfg.seed},
                           {"export_every", cfg.export_every},
                           {"source", cfg.source_text}};
  config["policies"] = nlohmann::json::array();
  for (const PolicySpec& p : cfg.policies) config["policies"].push_back(policy_json(p));
  manifest["config"] = config;

  manifest["runs"] = nlohmann::json::array();
  for (std::size_t pi = 0; pi < result.curves.size(); ++pi) {
    const AggregateCurve& c = result.curves[pi];
    for (const RunSummary& run : c.runs) {
      manifest["runs"].push_back({{"policy", c.policy_id},
                                  {"seed", run.seed},
                                  {"play_seed", mix_seed(run.seed, kPlayStream)},
                                  {"oracle_seed", mix_seed(run.seed, kOracleStream)},
                                  {"offset_seed", mix_seed(run.seed, kOffsetStream)},
                                  {"stream_seed", mix_seed(run.seed, kStreamStream)},
                                  {"member_seeds", member_seeds(cfg.policies.at(pi), run.seed)},
                                  {"start_offset", run.start_offset},
                                  {"final_regret", run.final_regret},
                                  {"final_classification_rate", run.final_rate}});
    }
  }
  manifest["warnings"] = result.warnings;

  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
  };
  write(files.csv, format_csv(result));
  write(files.manifest, manifest.dump(2) + "\n");
  return files;
}

}  // namespace neuralbandit::eval
