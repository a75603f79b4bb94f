#pragma once

#include <cstddef>
#include <vector>

#include "neuralbandit/mlp.hpp"
#include "neuralbandit/policy.hpp"

namespace neuralbandit {

// NeuralBandit1: one sigmoid network per arm estimating the reward
// probability, greedy play smoothed by uniform exploration, and an
// importance-weighted backpropagation step on the played arm only.
//
// Network k is initialized from mix_seed(config.seed, k).
class NeuralBandit1 final : public Policy {
 public:
  explicit NeuralBandit1(const PolicyConfig& config);

  std::string name() const override { return "neuralbandit1"; }
  std::size_t arm_count() const override { return config_.arm_count; }
  std::size_t input_dim() const override { return config_.input_dim; }

  // One network output per arm.
  std::vector<double> scores(Context x) const;

  Decision decide(Context x, Rng& rng) override;

  // Updates the played arm's network toward `reward`, with step
  // lambda / P(played). Other networks are untouched.
  void learn(Context x, const Decision& decision, double reward) override;

  // learn() with an explicit played-arm probability. Committees use this to
  // apply each member's own P(played).
  void learn_played(Context x, std::size_t played_arm, double probability, double reward);

  // The increment learn() would add to network `arm` when that arm was played
  // with probability `probability` and returned `reward`:
  //   -lambda / probability * grad 0.5 * (N_arm(x) - reward)^2
  mlp::GradientVector importance_weighted_step(Context x, std::size_t arm, double probability,
                                               double reward) const;

  // Full-information increment for `arm` (no importance weight).
  mlp::GradientVector full_information_step(Context x, std::size_t arm, double reward) const;

  const PolicyConfig& config() const { return config_; }
  const std::vector<mlp::NetworkWeights>& networks() const { return networks_; }
  std::vector<mlp::NetworkWeights>& mutable_networks() { return networks_; }
  std::size_t round() const { return round_; }

 private:
  PolicyConfig config_;
  std::vector<mlp::NetworkWeights> networks_;
  std::size_t round_ = 0;
};

// Importance-weighted step on a single network. Shared by all neural
// policies so that committee members update with identical arithmetic.
void importance_weighted_update(mlp::NetworkWeights& network, Context x, double lambda,
                                double probability, double reward);

std::vector<mlp::NetworkWeights> init_arm_networks(const mlp::NetworkShape& shape,
                                                   std::size_t arm_count, std::uint64_t seed);

}  // namespace neuralbandit
