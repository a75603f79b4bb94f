#include "neuralbandit/neural_bandit.hpp"

#include <stdexcept>

namespace neuralbandit {

namespace {

mlp::GradientVector scaled_step(const mlp::NetworkWeights& network, Context x, double lambda,
                                double probability, double reward) {
  const mlp::ForwardTrace trace = mlp::forward(network, x);
  mlp::GradientVector g = mlp::backward(network, trace, x, reward);
  const double scale = -lambda / probability;
  for (double& v : g.values) v *= scale;
  return g;
}

}  // namespace

std::vector<mlp::NetworkWeights> init_arm_networks(const mlp::NetworkShape& shape,
                                                   std::size_t arm_count, std::uint64_t seed) {
  std::vector<mlp::NetworkWeights> networks;
  networks.reserve(arm_count);
  for (std::size_t k = 0; k < arm_count; ++k) {
    networks.push_back(mlp::init_weights(shape, mix_seed(seed, k)));
  }
  return networks;
}

void importance_weighted_update(mlp::NetworkWeights& network, Context x, double lambda,
                                double probability, double reward) {
  check_reward(reward);
  if (!(probability > 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("played-arm probability must lie in (0, 1]");
  }
  const mlp::ForwardTrace trace = mlp::forward(network, x);
  const mlp::GradientVector g = mlp::backward(network, trace, x, reward);
  mlp::apply_update_in_place(network, g, -lambda / probability);
}

NeuralBandit1::NeuralBandit1(const PolicyConfig& config) : config_(config) {
  config_.validate();
  networks_ = init_arm_networks({config_.input_dim, config_.hidden_units}, config_.arm_count,
                                config_.seed);
}

std::vector<double> NeuralBandit1::scores(Context x) const {
  check_context(x, config_.input_dim);
  std::vector<double> s(networks_.size());
  for (std::size_t k = 0; k < networks_.size(); ++k) s[k] = mlp::forward(networks_[k], x).output;
  return s;
}

Decision NeuralBandit1::decide(Context x, Rng& rng) {
  Decision d;
  d.scores = scores(x);
  d.greedy_arm = greedy_arm(d.scores);
  d.probs = exploration_distribution(d.greedy_arm, config_.arm_count, config_.gamma);
  d.played_arm = rng.sample(d.probs);
  return d;
}

void NeuralBandit1::learn(Context x, const Decision& decision, double reward) {
  if (decision.played_arm >= decision.probs.size()) throw std::invalid_argument("played arm out of range");
  learn_played(x, decision.played_arm, decision.played_probability(), reward);
}

void NeuralBandit1::learn_played(Context x, std::size_t played_arm, double probability,
                                 double reward) {
  check_context(x, config_.input_dim);
  if (played_arm >= networks_.size()) throw std::invalid_argument("played arm out of range");
  importance_weighted_update(networks_[played_arm], x, config_.lambda, probability, reward);
  ++round_;
}

mlp::GradientVector NeuralBandit1::importance_weighted_step(Context x, std::size_t arm,
                                                            double probability,
                                                            double reward) const {
  check_reward(reward);
  return scaled_step(networks_.at(arm), x, config_.lambda, probability, reward);
}

mlp::GradientVector NeuralBandit1::full_information_step(Context x, std::size_t arm,
                                                         double reward) const {
  check_reward(reward);
  return scaled_step(networks_.at(arm), x, config_.lambda, 1.0, reward);
}

}  // namespace neuralbandit
