#include "neuralbandit/baselines.hpp"

#include <stdexcept>

namespace neuralbandit {

Banditron::Banditron(std::size_t arm_count, std::size_t input_dim, double gamma)
    : input_dim_(input_dim), gamma_(gamma), weights_(arm_count, std::vector<double>(input_dim, 0.0)) {
  if (arm_count == 0 || input_dim == 0) throw std::invalid_argument("banditron needs arms and inputs");
  if (!(gamma >= 0.0 && gamma <= 0.5)) throw std::invalid_argument("gamma must lie in [0, 0.5]");
}

std::vector<double> Banditron::scores(Context x) const {
  check_context(x, input_dim_);
  std::vector<double> s(weights_.size(), 0.0);
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < input_dim_; ++i) {
      if (x[i] != 0.0) dot += weights_[k][i] * x[i];
    }
    s[k] = dot;
  }
  return s;
}

Decision Banditron::decide(Context x, Rng& rng) {
  Decision d;
  d.scores = scores(x);
  d.greedy_arm = greedy_arm(d.scores);
  d.probs = exploration_distribution(d.greedy_arm, weights_.size(), gamma_);
  d.played_arm = rng.sample(d.probs);
  return d;
}

void Banditron::learn(Context x, const Decision& decision, double reward) {
  check_reward(reward);
  check_context(x, input_dim_);
  const std::size_t k = decision.played_arm;
  if (k >= weights_.size()) throw std::invalid_argument("played arm out of range");
  const double predicted = decision.scores.at(k) >= 0.0 ? 1.0 : 0.0;
  const double error = reward - predicted;
  if (error == 0.0) return;
  const double step = error / decision.played_probability();
  for (std::size_t i = 0; i < input_dim_; ++i) weights_[k][i] += step * x[i];
}

Decision random_policy_decide(std::size_t arm_count, Rng& rng) {
  if (arm_count == 0) throw std::invalid_argument("random policy needs at least one arm");
  Decision d;
  d.probs.assign(arm_count, 1.0 / static_cast<double>(arm_count));
  d.scores.assign(arm_count, 0.0);
  d.played_arm = rng.sample(d.probs);
  d.greedy_arm = d.played_arm;
  return d;
}

UniformRandom::UniformRandom(std::size_t arm_count, std::size_t input_dim)
    : arm_count_(arm_count), input_dim_(input_dim) {
  if (arm_count == 0) throw std::invalid_argument("random policy needs at least one arm");
}

Decision UniformRandom::decide(Context x, Rng& rng) {
  check_context(x, input_dim_);
  return random_policy_decide(arm_count_, rng);
}

void UniformRandom::learn(Context x, const Decision&, double reward) {
  check_context(x, input_dim_);
  check_reward(reward);
}

}  // namespace neuralbandit
