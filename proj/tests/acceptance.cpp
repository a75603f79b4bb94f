// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "neuralbandit/baselines.hpp"
#include "neuralbandit/binarization.hpp"
#include "neuralbandit/committee.hpp"
#include "neuralbandit/config.hpp"
#include "neuralbandit/evaluation.hpp"
#include "neuralbandit/mlp.hpp"
#include "neuralbandit/neural_bandit.hpp"
#include "support/oracles.hpp"

using namespace neuralbandit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

void info(const std::string& line) {
  std::printf("     info: %s\n", line.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// 1. backward() against central finite differences.
Outcome gradient_check() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(42);
  double worst_rel = 0.0, worst_abs = 0.0;
  std::size_t bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.below(5);
    const std::size_t c = 1 + rng.below(3);
    mlp::NetworkWeights w = mlp::init_weights({d, c}, rng.below(1u << 30));
    std::vector<double> x(d);
    for (double& v : x) v = static_cast<double>(rng.below(2));
    const double target = rng.uniform();
    const mlp::GradientVector g = mlp::backward(w, mlp::forward(w, x), x, target);
    const std::vector<double> fd = oracle::numeric_gradient(w.values, x, c, target, 1e-5);
    for (std::size_t n = 0; n < fd.size(); ++n) {
      if (!oracle::agrees(g.values[n], fd[n], 1e-6, 1e-9)) ++bad;
      const double diff = std::abs(g.values[n] - fd[n]);
      const double scale = std::max(std::abs(g.values[n]), std::abs(fd[n]));
      worst_abs = std::max(worst_abs, diff);
      if (scale > 1e-6) worst_rel = std::max(worst_rel, diff / scale);
    }
  }
  const double secs = seconds_since(start);
  return {bad == 0 && secs < 5.0,
          fmt("%zu mismatching components; worst relative error %.2e (|g| > 1e-6), worst absolute %.2e", bad,
              worst_rel, worst_abs)};
}

// 2. Importance-weighted updates average to the full-information update.
Outcome unbiasedness_check() {
  const auto start = std::chrono::steady_clock::now();
  PolicyConfig pc;
  pc.gamma = 0.3;
  pc.lambda = 0.5;
  pc.hidden_units = 3;
  pc.arm_count = 3;
  pc.input_dim = 5;
  pc.seed = 42;
  const NeuralBandit1 state(pc);
  const std::vector<double> x = {1.0, 0.0, 1.0, 1.0, 1.0};
  const std::vector<double> rewards = {0.0, 1.0, 0.0};

  // Full-information update from the scalar oracle: -lambda * dLoss/dw.
  std::vector<std::vector<double>> full(3);
  for (std::size_t k = 0; k < 3; ++k) {
    full[k] = oracle::numeric_gradient(state.networks()[k].values, x, pc.hidden_units, rewards[k]);
    for (double& v : full[k]) v *= -pc.lambda;
  }

  constexpr int kSamples = 100000;
  Rng rng(42);
  std::vector<std::vector<double>> sum(3);
  for (std::size_t k = 0; k < 3; ++k) sum[k].assign(full[k].size(), 0.0);
  std::vector<int> plays(3, 0);
  std::vector<double> probs;
  for (int s = 0; s < kSamples; ++s) {
    NeuralBandit1 copy = state;
    const Decision d = copy.decide(x, rng);
    copy.learn(x, d, rewards[d.played_arm]);
    probs = d.probs;
    ++plays[d.played_arm];
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& after = copy.networks()[k].values;
      const auto& before = state.networks()[k].values;
      for (std::size_t n = 0; n < after.size(); ++n) sum[k][n] += after[n] - before[n];
    }
  }
  double worst = 0.0;
  std::size_t bad = 0, compared = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t n = 0; n < full[k].size(); ++n) {
      const double mean = sum[k][n] / kSamples;
      ++compared;
      if (std::abs(full[k][n]) < 1e-8) {
        if (std::abs(mean - full[k][n]) > 1e-8) ++bad;
        continue;
      }
      const double rel = std::abs(mean - full[k][n]) / std::abs(full[k][n]);
      worst = std::max(worst, rel);
      if (rel > 0.01) ++bad;
    }
  }
  std::string per_arm;
  for (std::size_t k = 0; k < 3; ++k) {
    const double z = (plays[k] - kSamples * probs[k]) / std::sqrt(kSamples * probs[k] * (1 - probs[k]));
    per_arm += fmt("%s arm %zu: P=%.3f played %d (z=%+.2f)", k ? ";" : "", k, probs[k], plays[k], z);
  }
  const double se = std::sqrt((1 - pc.gamma / 3) / (pc.gamma / 3 * kSamples));
  info(fmt("every sampled component of arm k averages (plays_k / (N P_k)) * step_k, so its relative error "
           "is the play-count deviation; for P = 0.1 one standard error is %.2f%%, close to the 1%% tolerance",
           100 * se));
  const double secs = seconds_since(start);
  return {bad == 0 && secs < 30.0,
          fmt("%zu of %zu components outside 1%%, worst %.3f%%;", bad, compared, 100 * worst) + per_arm};
}

// 3. EXP3 distribution and update algebra.
Outcome exp3_check() {
  Rng rng(42);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + rng.below(30);
    const double gm = 0.5 * rng.uniform();
    std::vector<double> w(m);
    for (double& v : w) v = std::exp(40.0 * (rng.uniform() - 0.5));
    Exp3 e(m, gm);
    e.set_weights(w);
    const std::vector<double> p = e.probabilities();
    if (std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) > 1e-12) ++bad;
    for (double q : p) {
      if (q < gm / m * (1 - 1e-15)) ++bad;
    }
  }
  Exp3 hand(2, 0.1);
  const std::vector<double> p = hand.probabilities();
  Exp3 zero = hand;
  zero.update(1, 0.0, p);
  hand.update(0, 1.0, p);
  const double err = std::abs(hand.weights()[0] - std::exp(0.1));
  const bool noop = zero.weights() == std::vector<double>{1.0, 1.0};
  return {bad == 0 && err <= 1e-12 && hand.weights()[1] == 1.0 && noop,
          fmt("%zu violations in 1000 random vectors; |w'0 - e^0.1| = %.1e; zero reward no-op: %s", bad, err,
              noop ? "yes" : "no")};
}

// 4. One-model committees replay NeuralBandit1 bit for bit.
Outcome degenerate_committee_check() {
  const auto compare = [](data::EventSource& s1, data::EventSource& s2, data::EventSource& s3,
                          std::size_t arms, std::size_t dim) {
    const std::uint64_t seed = 42;
    PolicyConfig pc;
    pc.gamma = 0.05;
    pc.lambda = 0.1;
    pc.hidden_units = 5;
    pc.seed = seed;
    pc.arm_count = arms;
    pc.input_dim = dim;
    const ModelGrid grid = make_model_grid({5}, {0.1}, pc.gamma, seed, arms, dim);
    NeuralBandit1 nb1(pc);
    NeuralBandit2 nb2(grid, 0.1, seed);
    NeuralBandit3 nb3(grid, pc.gamma, 0.1, seed);
    Rng r1(7), r2(7), r3(7);
    for (int t = 0; t < 10000; ++t) {
      const data::StreamEvent& e1 = s1.next();
      const data::StreamEvent& e2 = s2.next();
      const data::StreamEvent& e3 = s3.next();
      const Decision d1 = nb1.decide(e1.context(), r1);
      const Decision d2 = nb2.decide(e2.context(), r2);
      const Decision d3 = nb3.decide(e3.context(), r3);
      if (d1.played_arm != d2.played_arm || d1.played_arm != d3.played_arm || d1.scores != d2.scores ||
          d1.scores != d3.scores) {
        return t;
      }
      nb1.learn(e1.context(), d1, e1.reward(d1.played_arm));
      nb2.learn(e2.context(), d2, e2.reward(d2.played_arm));
      nb3.learn(e3.context(), d3, e3.reward(d3.played_arm));
    }
    return 10000;
  };
  data::XorStream x1(42), x2(42), x3(42);
  const int xor_rounds = compare(x1, x2, x3, 2, 3);

  eval::StreamSpec spec;
  spec.kind = eval::StreamKind::kSyntheticCovertype;
  spec.rows = 5000;
  spec.data_seed = 42;
  const eval::Environment env = eval::Environment::prepare(spec);
  std::size_t offset = 0;
  auto c1 = env.open(42, offset), c2 = env.open(42, offset), c3 = env.open(42, offset);
  const int cov_rounds = compare(*c1, *c2, *c3, env.arm_count(), env.input_dim());
  return {xor_rounds == 10000 && cov_rounds == 10000,
          fmt("identical rounds: xor %d/10000, 7-arm covertype layout %d/10000", xor_rounds, cov_rounds)};
}

eval::ExperimentConfig xor_config(std::size_t drift_period) {
  eval::ExperimentConfig c;
  c.name = drift_period ? "xor-drift" : "xor";
  c.stream.kind = eval::StreamKind::kXor;
  c.stream.drift_period = drift_period;
  c.horizon = 100000;
  c.gamma = 0.05;
  c.seed = 42;
  eval::PolicySpec nb;
  nb.id = "neuralbandit1";
  nb.hidden_units = 5;
  nb.lambda = 0.1;
  eval::PolicySpec linear;
  linear.id = "banditron";
  linear.kind = eval::PolicyKind::kBanditron;
  c.policies = {nb, linear};
  return c;
}

// 5. XOR separates the network from the linear baseline.
Outcome xor_check() {
  const auto start = std::chrono::steady_clock::now();
  const eval::ExperimentConfig cfg = xor_config(0);
  const eval::Environment env = eval::Environment::prepare(cfg.stream);
  const double nb = eval::classification_rate(eval::run_once(cfg, env, cfg.policies[0], cfg.seed), 10000);
  const double lin = eval::classification_rate(eval::run_once(cfg, env, cfg.policies[1], cfg.seed), 10000);
  const double secs = seconds_since(start);
  return {nb >= 0.95 && lin <= 0.80 && secs < 120.0,
          fmt("trailing-10000 rate: neuralbandit1 %.4f (need >= 0.95), banditron %.4f (need <= 0.80)", nb, lin)};
}

// 6. Drift at round 50,000 on the XOR stream.
Outcome drift_check() {
  const eval::ExperimentConfig cfg = xor_config(50000);
  const eval::Environment env = eval::Environment::prepare(cfg.stream);
  const auto recovery = [&](std::uint64_t seed, double& lowest, double& last_1000, std::size_t& back_at) {
    const eval::RunRecord rec = eval::run_once(cfg, env, cfg.policies[0], seed);
    const std::vector<double> rate = eval::rolling_classification_rate(rec, 5000);
    // Rounds are 1-based below: rate[t - 1] is the trailing rate after round t.
    lowest = *std::min_element(rate.begin() + 50000, rate.begin() + 51000);
    last_1000 = std::accumulate(rec.reward.begin() + 50000, rec.reward.begin() + 51000, 0.0) / 1000.0;
    back_at = 0;
    for (std::size_t t = 51000; t < 100000; ++t) {
      if (rate[t - 1] >= 0.90) {
        back_at = t;
        break;
      }
    }
    return rate[49999];
  };
  double lowest = 0, first_1000 = 0;
  std::size_t back_at = 0;
  const double before = recovery(cfg.seed, lowest, first_1000, back_at);
  const bool drops = lowest < 0.5;
  const bool recovers = back_at != 0;

  // Context for the ledger, not part of the verdict.
  info(fmt("seed 42: trailing-5000 rate %.4f at the drift; accuracy over the 1000 rounds after it %.4f; "
           "a trailing-5000 rate at round 51000 still holds 4000 pre-drift rounds, so it is at least "
           "%.4f for this run",
           before, first_1000, 0.8 * before));
  int recovered = 0, dipped = 0;
  for (std::uint64_t s = 42; s < 62; ++s) {
    double lo = 0, f1000 = 0;
    std::size_t at = 0;
    recovery(s, lo, f1000, at);
    recovered += at != 0;
    dipped += f1000 < 0.5;
  }
  info(fmt("seeds 42..61: %d/20 recover to >= 0.90 before round 100000; %d/20 have accuracy < 0.5 over "
           "the first 1000 post-drift rounds",
           recovered, dipped));

  return {drops && recovers,
          fmt("lowest trailing-5000 rate in rounds 50001..51000 = %.4f (need < 0.5); back to >= 0.90 at %s",
              lowest, recovers ? fmt("round %zu", back_at).c_str() : "no round before 100000")};
}

// 7. Desk-scale covertype ordering.
Outcome desk_covertype_check() {
  eval::ExperimentConfig c;
  c.name = "desk-covertype";
  const std::filesystem::path real = cli::default_data_dir() / "covtype.data";
  std::string source;
  if (std::filesystem::exists(real)) {
    c.stream.kind = eval::StreamKind::kCovertype;
    c.stream.data_path = real;
    c.stream.data_seed = 7;
    source = "covertype " + real.string();
  } else {
    c.stream.kind = eval::StreamKind::kSyntheticCovertype;
    c.stream.data_seed = 7;
    source = "synthetic covertype-layout surrogate (real data not found at " + real.string() + ")";
  }
  c.stream.rows = 50000;
  c.horizon = 200000;
  c.runs = 3;
  c.window = 20000;
  c.gamma = 0.005;
  c.gamma_model = 0.1;
  c.seed = 42;
  eval::PolicySpec committee;
  committee.id = "neuralbandit2";
  committee.kind = eval::PolicyKind::kNeuralBandit2;
  committee.hidden_sizes = {5, 25};
  committee.lambdas = {0.1, 1.0};
  eval::PolicySpec linear;
  linear.id = "banditron";
  linear.kind = eval::PolicyKind::kBanditron;
  c.policies = {committee, linear};
  const auto start = std::chrono::steady_clock::now();
  const eval::ExperimentResult res = eval::run_averaged(c);
  const double secs = seconds_since(start);
  const double nb2 = res.curves[0].final_mean_rate();
  const double lin = res.curves[1].final_mean_rate();
  std::string runs;
  for (const eval::AggregateCurve& curve : res.curves) {
    for (const eval::RunSummary& r : curve.runs) runs += fmt(" %s/%llu=%.4f", curve.policy_id.c_str(),
                                                             static_cast<unsigned long long>(r.seed), r.final_rate);
  }
  info("data: " + source);
  info("per-run trailing-20000 rates:" + runs);
  return {nb2 > lin && secs < 1800.0,
          fmt("final trailing-20000 rate: neuralbandit2 %.4f vs banditron %.4f", nb2, lin)};
}

// 8. 94 features and equal-frequency bins.
Outcome encoding_check() {
  const std::filesystem::path real = cli::default_data_dir() / "covtype.data";
  data::RawDataset raw;
  std::string source;
  if (std::filesystem::exists(real)) {
    raw = data::load_covertype_csv(real);
    source = "covertype";
  } else {
    raw = data::synthetic_covertype(581012, 7);
    source = "581012-row surrogate";
  }
  const data::BinarizationScheme scheme = data::fit_binarization(raw);
  const std::size_t n = raw.size();
  std::size_t checked = 0, off = 0;
  for (std::size_t c = 0; c < raw.width(); ++c) {
    if (raw.columns[c].kind != data::ColumnKind::kContinuous || scheme.bins[c].degenerate) continue;
    ++checked;
    std::array<std::size_t, 5> counts{};
    for (std::size_t r = 0; r < n; ++r) ++counts[scheme.bins[c].bin_of(raw.values[r * raw.width() + c])];
    for (std::size_t k : counts) {
      if (k + 1 < n / 5 || k > (n + 4) / 5 + 1) ++off;
    }
  }
  // The bundled fixture as well.
  const data::RawDataset fixture = data::load_covertype_csv(std::filesystem::path(NB_SOURCE_DIR) / "data" /
                                                            "covtype_fixture.csv");
  const std::size_t fixture_width = data::fit_binarization(fixture).output_width();
  return {scheme.output_width() == 94 && fixture_width == 94 && checked > 0 && off == 0,
          fmt("%s: width %zu, fixture width %zu; %zu non-degenerate features, %zu bins outside n/5 +- 1",
              source.c_str(), scheme.output_width(), fixture_width, checked, off)};
}

// 9. Regret accounting.
Outcome conservation_check() {
  std::size_t records = 0, violations = 0;
  const std::vector<eval::OracleSpec> oracles = {{},
                                                 {eval::OracleKind::kFixedAccuracy, 0.93},
                                                 {eval::OracleKind::kExpectedAccuracy, 0.93}};
  std::vector<eval::StreamSpec> streams(4);
  streams[0].kind = eval::StreamKind::kXor;
  streams[1].kind = eval::StreamKind::kXor;
  streams[1].drift_period = 2000;
  streams[1].noise_bits = 3;
  streams[2].kind = eval::StreamKind::kSyntheticCovertype;
  streams[2].rows = 3000;
  streams[2].data_seed = 1;
  streams[3] = streams[2];
  streams[3].drift_period = 2500;
  for (const eval::StreamSpec& stream : streams) {
    const eval::Environment env = eval::Environment::prepare(stream);
    for (const eval::OracleSpec& oracle : oracles) {
      eval::ExperimentConfig cfg;
      cfg.stream = stream;
      cfg.horizon = 6000;
      cfg.gamma = 0.05;
      cfg.oracle = oracle;
      std::vector<eval::PolicySpec> specs(5);
      specs[0].id = "nb1";
      specs[0].hidden_units = 4;
      specs[1].id = "nb2";
      specs[1].kind = eval::PolicyKind::kNeuralBandit2;
      specs[1].hidden_sizes = {2, 4};
      specs[1].lambdas = {0.1, 1};
      specs[2] = specs[1];
      specs[2].id = "nb3";
      specs[2].kind = eval::PolicyKind::kNeuralBandit3;
      specs[3].id = "banditron";
      specs[3].kind = eval::PolicyKind::kBanditron;
      specs[4].id = "random";
      specs[4].kind = eval::PolicyKind::kRandom;
      for (const eval::PolicySpec& spec : specs) {
        const eval::RunRecord rec = eval::run_once(cfg, env, spec, 42);
        ++records;
        double obtained = 0, reference = 0;
        for (std::size_t t = 0; t < rec.horizon(); ++t) {
          obtained += rec.reward[t];
          reference += rec.oracle_reward[t];
          if (std::abs(rec.regret[t] + obtained - reference) > 1e-9) {
            ++violations;
            break;
          }
        }
      }
    }
  }

  eval::ExperimentConfig rnd;
  rnd.stream = streams[2];
  rnd.horizon = 100000;
  rnd.runs = 10;
  rnd.seed = 42;
  eval::PolicySpec random;
  random.id = "random";
  random.kind = eval::PolicyKind::kRandom;
  rnd.policies = {random};
  const eval::ExperimentResult res = eval::run_averaged(rnd);
  const double analytic = 6.0 / 7.0 * 100000.0;
  const double got = res.curves[0].mean_regret.back();
  const double rel = std::abs(got - analytic) / analytic;
  return {violations == 0 && rel <= 0.01,
          fmt("%zu/%zu records violate regret + obtained = oracle; random K=7 mean regret at 1e5 = %.1f vs %.1f "
              "(%.3f%%)",
              violations, records, got, analytic, 100 * rel)};
}

// 10. Byte-identical exports regardless of thread count.
Outcome reproducibility_check() {
  eval::ExperimentConfig cfg;
  cfg.name = "repro";
  cfg.stream.kind = eval::StreamKind::kSyntheticCovertype;
  cfg.stream.rows = 3000;
  cfg.stream.data_seed = 5;
  cfg.stream.drift_period = 4000;
  cfg.horizon = 10000;
  cfg.runs = 3;
  cfg.gamma = 0.05;
  cfg.oracle = {eval::OracleKind::kFixedAccuracy, 0.93};
  cfg.seed = 42;
  cfg.export_every = 10;
  std::vector<eval::PolicySpec> specs(4);
  specs[0].id = "nb1";
  specs[0].hidden_units = 5;
  specs[1].id = "nb2";
  specs[1].kind = eval::PolicyKind::kNeuralBandit2;
  specs[1].hidden_sizes = {2, 5};
  specs[1].lambdas = {0.1, 1};
  specs[2] = specs[1];
  specs[2].id = "nb3";
  specs[2].kind = eval::PolicyKind::kNeuralBandit3;
  specs[3].id = "banditron";
  specs[3].kind = eval::PolicyKind::kBanditron;
  cfg.policies = specs;

  const auto root = std::filesystem::temp_directory_path() / "nb_acceptance_repro";
  std::filesystem::remove_all(root);
  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::vector<std::string> csvs, manifests;
  for (std::size_t parallel : {1u, 3u, 2u, 3u}) {
    cfg.parallel = parallel;
    const eval::ExportedFiles f =
        eval::export_results(eval::run_averaged(cfg), root / ("p" + std::to_string(parallel) + "_" +
                                                              std::to_string(csvs.size())));
    csvs.push_back(slurp(f.csv));
    manifests.push_back(slurp(f.manifest));
  }
  std::filesystem::remove_all(root);
  bool same = !csvs[0].empty();
  for (std::size_t i = 1; i < csvs.size(); ++i) same = same && csvs[i] == csvs[0] && manifests[i] == manifests[0];
  return {same, fmt("4 reruns at 1, 3, 2 and 3 threads: CSV %zu bytes, %s", csvs[0].size(),
                    same ? "all CSV and manifest bytes identical" : "outputs differ")};
}

}  // namespace

int main() {
  report(1, "backward() matches central finite differences on 100 random networks", gradient_check);
  report(2, "importance-weighted update is unbiased over 1e5 sampled plays", unbiasedness_check);
  report(3, "EXP3 distribution and update algebra", exp3_check);
  report(4, "one-model committees reproduce NeuralBandit1 over 10000 rounds", degenerate_committee_check);
  report(5, "XOR stream separates NeuralBandit1 from Banditron", xor_check);
  report(6, "XOR drift at round 50000: drop below 0.5, recovery to 0.90", drift_check);
  report(7, "desk covertype: NeuralBandit2 beats Banditron", desk_covertype_check);
  report(8, "covertype encoding has 94 features and equal-frequency bins", encoding_check);
  report(9, "regret conservation and random-policy regret line", conservation_check);
  report(10, "identical exports across reruns and thread counts", reproducibility_check);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
