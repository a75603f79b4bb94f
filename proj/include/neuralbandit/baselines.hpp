#pragma once

#include <cstddef>
#include <vector>

#include "neuralbandit/policy.hpp"

namespace neuralbandit {

// Banditron-style linear baseline: one perceptron per arm, greedy play with
// the same uniform exploration as NeuralBandit1.
//
// Learning thresholds the played arm's score (score >= 0 predicts reward 1)
// and applies w_played += (reward - prediction) * x / P(played).
class Banditron final : public Policy {
 public:
  Banditron(std::size_t arm_count, std::size_t input_dim, double gamma);

  std::string name() const override { return "banditron"; }
  std::size_t arm_count() const override { return weights_.size(); }
  std::size_t input_dim() const override { return input_dim_; }

  std::vector<double> scores(Context x) const;
  Decision decide(Context x, Rng& rng) override;
  void learn(Context x, const Decision& decision, double reward) override;

  const std::vector<std::vector<double>>& weights() const { return weights_; }
  std::vector<std::vector<double>>& mutable_weights() { return weights_; }

 private:
  std::size_t input_dim_;
  double gamma_;
  std::vector<std::vector<double>> weights_;
};

// Uniform play over K arms; ignores the context and never learns.
Decision random_policy_decide(std::size_t arm_count, Rng& rng);

class UniformRandom final : public Policy {
 public:
  UniformRandom(std::size_t arm_count, std::size_t input_dim);

  std::string name() const override { return "random"; }
  std::size_t arm_count() const override { return arm_count_; }
  std::size_t input_dim() const override { return input_dim_; }

  Decision decide(Context x, Rng& rng) override;
  void learn(Context x, const Decision& decision, double reward) override;

 private:
  std::size_t arm_count_;
  std::size_t input_dim_;
};

}  // namespace neuralbandit
