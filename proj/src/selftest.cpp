#include "neuralbandit/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "neuralbandit/baselines.hpp"
#include "neuralbandit/committee.hpp"
#include "neuralbandit/evaluation.hpp"
#include "neuralbandit/exp3.hpp"
#include "neuralbandit/neural_bandit.hpp"
#include "neuralbandit/stream.hpp"

namespace neuralbandit {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

CheckResult gradient_check(const SelftestOptions& opt) {
  Rng rng(mix_seed(opt.seed, 10));
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.below(5);
    const std::size_t c = 1 + rng.below(3);
    const mlp::NetworkWeights w = mlp::init_weights({d, c}, mix_seed(opt.seed, 100 + trial));
    std::vector<double> x(d);
    for (double& v : x) v = rng.uniform_open(-1.0, 1.0);
    const double target = rng.uniform();
    mlp::GradientVector g = mlp::backward(w, mlp::forward(w, x), x, target);
    if (opt.corrupt_gradient_sign) {
      for (double& v : g.values) v = -v;
    }
    const std::vector<double> fd = finite_difference_gradient(w, x, target, 1e-5);
    for (std::size_t n = 0; n < fd.size(); ++n) {
      const double err = std::abs(g.values[n] - fd[n]);
      worst = std::max(worst, err);
      if (!close_enough(g.values[n], fd[n], 1e-6, 1e-9)) ok = false;
    }
  }
  return {"gradient", ok, fmt("max abs deviation from finite differences %.3g", worst)};
}

CheckResult unbiasedness_check(const SelftestOptions& opt) {
  PolicyConfig pc;
  pc.gamma = 0.3;
  pc.lambda = 0.5;
  pc.hidden_units = 2;
  pc.arm_count = 3;
  pc.input_dim = 3;
  pc.seed = mix_seed(opt.seed, 20);
  const NeuralBandit1 policy(pc);
  const std::vector<double> x = {1.0, 0.0, 1.0};
  const std::vector<double> rewards = {1.0, 0.0, 1.0};
  const std::vector<double> scores = policy.scores(x);
  const std::vector<double> probs = exploration_distribution(greedy_arm(scores), 3, pc.gamma);

  constexpr std::size_t kSamples = 20000;
  Rng rng(mix_seed(opt.seed, 21));
  std::vector<std::size_t> counts(3, 0);
  for (std::size_t s = 0; s < kSamples; ++s) ++counts[rng.sample(probs)];

  // Each sample contributes the played arm's importance-weighted step, so the
  // mean for arm k is counts[k] / N times that step.
  bool ok = true;
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const mlp::GradientVector step = policy.importance_weighted_step(x, k, probs[k], rewards[k]);
    const mlp::GradientVector full = policy.full_information_step(x, k, rewards[k]);
    const double share = static_cast<double>(counts[k]) / kSamples;
    const double tolerance = 4.0 * std::sqrt((1.0 - probs[k]) / (probs[k] * kSamples));
    for (std::size_t n = 0; n < full.values.size(); ++n) {
      const double mean = share * step.values[n];
      if (std::abs(full.values[n]) < 1e-8) {
        if (std::abs(mean) > 1e-8) ok = false;
        continue;
      }
      const double rel = std::abs(mean - full.values[n]) / std::abs(full.values[n]);
      worst = std::max(worst, rel);
      if (rel > tolerance) ok = false;
    }
  }
  return {"unbiasedness", ok, fmt("max relative deviation %.3g over %g samples", worst, kSamples)};
}

CheckResult exp3_check(const SelftestOptions& opt) {
  Rng rng(mix_seed(opt.seed, 30));
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.below(20);
    Exp3 e(m, 0.5 * rng.uniform());
    std::vector<double> w(m);
    for (double& v : w) v = std::exp(rng.uniform_open(-20.0, 20.0));
    e.set_weights(w);
    const std::vector<double> p = e.probabilities();
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) ok = false;
    for (double v : p) {
      if (v < e.gamma_model() / static_cast<double>(m) - 1e-15) ok = false;
    }
  }
  Exp3 e(2, 0.1);
  e.update(0, 1.0, e.probabilities());
  if (std::abs(e.weights()[0] - std::exp(0.1)) > 1e-12 || e.weights()[1] != 1.0) ok = false;
  const std::vector<double> before = e.weights();
  e.update(1, 0.0, e.probabilities());
  if (e.weights() != before) ok = false;
  return {"exp3", ok, ok ? "distribution and update algebra hold" : "EXP3 algebra violated"};
}

CheckResult committee_check(const SelftestOptions& opt) {
  constexpr std::size_t kRounds = 1000;
  const std::uint64_t seed = mix_seed(opt.seed, 40);
  ModelGrid grid = make_model_grid({3}, {0.5}, 0.1, seed, 2, 3);
  NeuralBandit1 bare(grid.specs.front());
  NeuralBandit2 nb2(grid, 0.1, seed);
  NeuralBandit3 nb3(grid, 0.1, 0.1, seed);
  data::XorStream stream(seed);
  Rng r1(seed), r2(seed), r3(seed);
  for (std::size_t t = 0; t < kRounds; ++t) {
    const data::StreamEvent& ev = stream.next();
    const Decision a = bare.decide(ev.context(), r1);
    const Decision b = nb2.decide(ev.context(), r2);
    const Decision c = nb3.decide(ev.context(), r3);
    if (a.played_arm != b.played_arm || a.played_arm != c.played_arm || a.scores != b.scores ||
        a.scores != c.scores) {
      return {"committee", false, fmt("one-model committees diverged at round %g", double(t))};
    }
    const double reward = ev.reward(a.played_arm);
    bare.learn(ev.context(), a, reward);
    nb2.learn(ev.context(), b, reward);
    nb3.learn(ev.context(), c, reward);
  }
  return {"committee", true, "one-model committees match NeuralBandit1"};
}

CheckResult xor_check(const SelftestOptions& opt) {
  constexpr std::size_t kRounds = 100000;
  constexpr std::size_t kWindow = 10000;
  PolicyConfig pc;
  pc.gamma = 0.05;
  pc.lambda = 0.1;
  pc.hidden_units = 5;
  pc.arm_count = 2;
  pc.input_dim = 3;
  pc.seed = mix_seed(opt.seed, 50);
  NeuralBandit1 neural(pc);
  Banditron linear(2, 3, 0.05);
  data::XorStream s1(pc.seed), s2(pc.seed);
  Rng r1(pc.seed), r2(pc.seed), oracle(0);
  const eval::OracleSpec perfect;
  const double neural_rate =
      eval::classification_rate(eval::simulate(neural, s1, kRounds, perfect, r1, oracle), kWindow);
  const double linear_rate =
      eval::classification_rate(eval::simulate(linear, s2, kRounds, perfect, r2, oracle), kWindow);
  const bool ok = neural_rate >= 0.9 && linear_rate <= 0.8;
  return {"xor", ok, fmt("neuralbandit1 %.3f, banditron %.3f", neural_rate, linear_rate)};
}

}  // namespace

std::vector<double> finite_difference_gradient(const mlp::NetworkWeights& w,
                                               std::span<const double> x, double target,
                                               double step) {
  std::vector<double> grad(w.values.size());
  mlp::NetworkWeights probe = w;
  for (std::size_t n = 0; n < w.values.size(); ++n) {
    probe.values[n] = w.values[n] + step;
    const double up = mlp::half_squared_error(mlp::forward(probe, x).output, target);
    probe.values[n] = w.values[n] - step;
    const double down = mlp::half_squared_error(mlp::forward(probe, x).output, target);
    probe.values[n] = w.values[n];
    grad[n] = (up - down) / (2.0 * step);
  }
  return grad;
}

bool close_enough(double a, double b, double rel, double abs) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs);
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  return {gradient_check(options), unbiasedness_check(options), exp3_check(options),
          committee_check(options), xor_check(options)};
}

}  // namespace neuralbandit
