#include "neuralbandit/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace neuralbandit::cli {

namespace {

using eval::ConfigError;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

class LineError {
 public:
  LineError(std::size_t line, std::string key) : line_(line), key_(std::move(key)) {}
  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError("line " + std::to_string(line_) + ": " + key_ + ": " + message);
  }

 private:
  std::size_t line_;
  std::string key_;
};

std::uint64_t parse_uint(const std::string& v, const LineError& err) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) err.fail("expected a non-negative integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& v, const LineError& err) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) err.fail("expected a number, got '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> items;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

eval::OracleSpec parse_oracle(const std::string& v, const LineError& err) {
  eval::OracleSpec o;
  if (v == "perfect") return o;
  const auto colon = v.find(':');
  const std::string kind = v.substr(0, colon);
  if (colon == std::string::npos) err.fail("expected perfect, fixed_accuracy:P or expected_accuracy:P");
  o.accuracy = parse_real(trim(v.substr(colon + 1)), err);
  if (kind == "fixed_accuracy") {
    o.kind = eval::OracleKind::kFixedAccuracy;
  } else if (kind == "expected_accuracy") {
    o.kind = eval::OracleKind::kExpectedAccuracy;
  } else {
    err.fail("unknown oracle '" + kind + "'");
  }
  if (!(o.accuracy >= 0.0 && o.accuracy <= 1.0)) err.fail("accuracy must lie in [0, 1]");
  return o;
}

eval::PolicyKind parse_policy_kind(const std::string& v, const LineError& err) {
  if (v == "neuralbandit1") return eval::PolicyKind::kNeuralBandit1;
  if (v == "neuralbandit2") return eval::PolicyKind::kNeuralBandit2;
  if (v == "neuralbandit3") return eval::PolicyKind::kNeuralBandit3;
  if (v == "banditron") return eval::PolicyKind::kBanditron;
  if (v == "random") return eval::PolicyKind::kRandom;
  err.fail("unknown policy kind '" + v + "'");
}

eval::StreamKind parse_stream_kind(const std::string& v, const LineError& err) {
  if (v == "covertype") return eval::StreamKind::kCovertype;
  if (v == "synthetic-covertype") return eval::StreamKind::kSyntheticCovertype;
  if (v == "xor") return eval::StreamKind::kXor;
  err.fail("unknown stream '" + v + "'");
}

void set_top_level(eval::ExperimentConfig& c, const std::string& key, const std::string& v,
                   const LineError& err) {
  if (key == "name") c.name = v;
  else if (key == "stream") c.stream.kind = parse_stream_kind(v, err);
  else if (key == "data") c.stream.data_path = v;
  else if (key == "rows") c.stream.rows = parse_uint(v, err);
  else if (key == "data_seed") c.stream.data_seed = parse_uint(v, err);
  else if (key == "noise_bits") c.stream.noise_bits = parse_uint(v, err);
  else if (key == "drift_period") c.stream.drift_period = parse_uint(v, err);
  else if (key == "horizon") c.horizon = parse_uint(v, err);
  else if (key == "runs") c.runs = parse_uint(v, err);
  else if (key == "window") c.window = parse_uint(v, err);
  else if (key == "oracle") c.oracle = parse_oracle(v, err);
  else if (key == "gamma") c.gamma = parse_real(v, err);
  else if (key == "gamma_model") c.gamma_model = parse_real(v, err);
  else if (key == "seed") c.seed = parse_uint(v, err);
  else if (key == "parallel") c.parallel = parse_uint(v, err);
  else if (key == "export_every") c.export_every = parse_uint(v, err);
  else if (key == "output") c.output_dir = v;
  else err.fail("unknown key");
}

void set_policy(eval::PolicySpec& p, const std::string& key, const std::string& v, const LineError& err) {
  if (key == "kind") {
    p.kind = parse_policy_kind(v, err);
  } else if (key == "hidden") {
    p.hidden_units = parse_uint(v, err);
  } else if (key == "lambda") {
    p.lambda = parse_real(v, err);
  } else if (key == "gamma") {
    p.gamma = parse_real(v, err);
  } else if (key == "hidden_sizes") {
    p.hidden_sizes.clear();
    for (const std::string& item : split_list(v)) p.hidden_sizes.push_back(parse_uint(item, err));
  } else if (key == "lambdas") {
    p.lambdas.clear();
    for (const std::string& item : split_list(v)) p.lambdas.push_back(parse_real(item, err));
  } else {
    err.fail("unknown policy key");
  }
}

}  // namespace

eval::ExperimentConfig parse_config(const std::string& text) {
  eval::ExperimentConfig config;
  config.policies.clear();
  config.source_text = text;
  eval::PolicySpec* section = nullptr;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      LineError err(line_no, "section");
      if (line.back() != ']') err.fail("unterminated section header");
      const std::string header = trim(std::string_view(line).substr(1, line.size() - 2));
      if (header.rfind("policy ", 0) != 0) err.fail("expected [policy <id>]");
      config.policies.push_back({});
      section = &config.policies.back();
      section->id = trim(std::string_view(header).substr(7));
      if (section->id.empty()) err.fail("policy id is empty");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) LineError(line_no, line).fail("expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const LineError err(line_no, section ? "policy." + section->id + "." + key : key);
    if (value.empty()) err.fail("missing value");
    if (section) {
      set_policy(*section, key, value, err);
    } else {
      set_top_level(config, key, value, err);
    }
  }
  config.validate();
  return config;
}

std::filesystem::path default_data_dir() {
  if (const char* dir = std::getenv("NEURALBANDIT_DATA_DIR"); dir && *dir) return dir;
  return "data";
}

std::filesystem::path resolve_data_path(const std::filesystem::path& data,
                                        const std::filesystem::path& config_dir) {
  if (data.empty() || data.is_absolute()) return data;
  const std::filesystem::path local = config_dir / data;
  if (std::filesystem::exists(local)) return local;
  return default_data_dir() / data;
}

eval::ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  eval::ExperimentConfig config = parse_config(buf.str());
  config.stream.data_path = resolve_data_path(config.stream.data_path, path.parent_path());
  return config;
}

}  // namespace neuralbandit::cli
