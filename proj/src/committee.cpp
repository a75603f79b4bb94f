#include "neuralbandit/committee.hpp"

#include <algorithm>
#include <stdexcept>

namespace neuralbandit {

namespace {

void check_grid(const ModelGrid& grid) {
  if (grid.specs.empty()) throw std::invalid_argument("model grid is empty");
  for (const PolicyConfig& spec : grid.specs) {
    spec.validate();
    if (spec.arm_count != grid.specs.front().arm_count ||
        spec.input_dim != grid.specs.front().input_dim) {
      throw std::invalid_argument("model grid entries disagree on arm count or input dimension");
    }
  }
}

}  // namespace

ModelGrid make_model_grid(std::vector<std::size_t> hidden_sizes, std::vector<double> lambdas,
                          double gamma, std::uint64_t base_seed, std::size_t arm_count,
                          std::size_t input_dim) {
  std::sort(hidden_sizes.begin(), hidden_sizes.end());
  std::sort(lambdas.begin(), lambdas.end());
  ModelGrid grid;
  std::uint64_t seed = base_seed;
  for (std::size_t hidden : hidden_sizes) {
    for (double lambda : lambdas) {
      PolicyConfig spec;
      spec.gamma = gamma;
      spec.lambda = lambda;
      spec.hidden_units = hidden;
      spec.seed = seed++;
      spec.arm_count = arm_count;
      spec.input_dim = input_dim;
      spec.validate();
      grid.specs.push_back(spec);
    }
  }
  return grid;
}

NeuralBandit2::NeuralBandit2(ModelGrid grid, double gamma_model, std::uint64_t seed)
    : selector_(grid.specs.size(), gamma_model), selector_rng_(mix_seed(seed, kSelectorStream)) {
  check_grid(grid);
  instances_.reserve(grid.specs.size());
  for (const PolicyConfig& spec : grid.specs) instances_.emplace_back(spec);
}

Decision NeuralBandit2::decide(Context x, Rng& rng) {
  check_context(x, input_dim());
  const std::size_t chosen = selector_.sample(selector_rng_);

  Decision d;
  d.models = {chosen};
  d.member_greedy.resize(instances_.size());
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    std::vector<double> s = instances_[i].scores(x);
    d.member_greedy[i] = greedy_arm(s);
    if (i == chosen) d.scores = std::move(s);
  }
  d.greedy_arm = d.member_greedy[chosen];
  d.probs = exploration_distribution(d.greedy_arm, arm_count(), instances_[chosen].config().gamma);
  d.played_arm = rng.sample(d.probs);
  return d;
}

void NeuralBandit2::learn(Context x, const Decision& decision, double reward) {
  check_reward(reward);
  if (decision.models.size() != 1 || decision.models[0] >= instances_.size() ||
      decision.member_greedy.size() != instances_.size()) {
    throw std::invalid_argument("decision was not produced by this committee");
  }
  const std::size_t played = decision.played_arm;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const PolicyConfig& spec = instances_[i].config();
    const std::vector<double> own =
        exploration_distribution(decision.member_greedy[i], spec.arm_count, spec.gamma);
    instances_[i].learn_played(x, played, own.at(played), reward);
  }
  const std::vector<double> probs = selector_.probabilities();
  selector_.update(decision.models[0], reward, probs);
}

NeuralBandit3::NeuralBandit3(ModelGrid grid, double gamma, double gamma_model, std::uint64_t seed)
    : input_dim_(0), gamma_(gamma), selector_rng_(mix_seed(seed, kSelectorStream)) {
  check_grid(grid);
  if (!(gamma >= 0.0 && gamma <= 0.5)) throw std::invalid_argument("gamma must lie in [0, 0.5]");
  input_dim_ = grid.specs.front().input_dim;
  const std::size_t arms = grid.specs.front().arm_count;
  for (const PolicyConfig& spec : grid.specs) {
    lambdas_.push_back(spec.lambda);
    networks_.push_back(init_arm_networks({spec.input_dim, spec.hidden_units}, arms, spec.seed));
  }
  bank_.assign(arms, Exp3(grid.specs.size(), gamma_model));
}

Decision NeuralBandit3::decide(Context x, Rng& rng) {
  check_context(x, input_dim_);
  const std::size_t arms = bank_.size();
  Decision d;
  d.models.resize(arms);
  d.scores.resize(arms);
  for (std::size_t k = 0; k < arms; ++k) {
    d.models[k] = bank_[k].sample(selector_rng_);
    d.scores[k] = mlp::forward(networks_[d.models[k]][k], x).output;
  }
  d.greedy_arm = greedy_arm(d.scores);
  d.probs = exploration_distribution(d.greedy_arm, arms, gamma_);
  d.played_arm = rng.sample(d.probs);
  return d;
}

void NeuralBandit3::learn(Context x, const Decision& decision, double reward) {
  check_reward(reward);
  check_context(x, input_dim_);
  const std::size_t played = decision.played_arm;
  if (played >= bank_.size() || decision.models.size() != bank_.size() ||
      decision.probs.size() != bank_.size()) {
    throw std::invalid_argument("decision was not produced by this committee");
  }
  const double probability = decision.played_probability();
  for (std::size_t m = 0; m < networks_.size(); ++m) {
    importance_weighted_update(networks_[m][played], x, lambdas_[m], probability, reward);
  }
  Exp3& selector = bank_[played];
  const std::vector<double> probs = selector.probabilities();
  selector.update(decision.models[played], reward, probs);
  ++round_;
}

}  // namespace neuralbandit
