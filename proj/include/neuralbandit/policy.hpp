#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "neuralbandit/rng.hpp"

namespace neuralbandit {

using Context = std::span<const double>;

// Hyperparameters of one NeuralBandit1 model. gamma is the uniform exploration
// mass and lambda the backpropagation step.
struct PolicyConfig {
  double gamma = 0.005;
  double lambda = 0.1;
  std::size_t hidden_units = 25;
  std::uint64_t seed = 0;
  std::size_t arm_count = 2;
  std::size_t input_dim = 1;

  // Throws std::invalid_argument unless gamma in [0, 0.5], lambda in (0, 1]
  // and all sizes are positive.
  void validate() const;
};

// Result of one decide() call.
//
// `models` is empty for single-model policies. For NeuralBandit2 it holds the
// sampled model index; for NeuralBandit3 it holds one sampled model per action.
// `member_greedy` holds each committee member's own greedy arm (NeuralBandit2).
struct Decision {
  std::size_t greedy_arm = 0;
  std::size_t played_arm = 0;
  std::vector<double> probs;
  std::vector<double> scores;
  std::vector<std::size_t> models;
  std::vector<std::size_t> member_greedy;

  double played_probability() const { return probs.at(played_arm); }
};

// Lowest index among the maxima.
std::size_t greedy_arm(std::span<const double> scores);

// P(k) = (1 - gamma) * [k == greedy] + gamma / K.
std::vector<double> exploration_distribution(std::size_t greedy, std::size_t arm_count,
                                             double gamma);

// Uniform play/learn interface. Policies see only the context before playing
// and only the played arm's reward afterwards. decide() for round t must be
// followed by learn() for that same decision before the next decide().
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;
  virtual std::size_t arm_count() const = 0;
  virtual std::size_t input_dim() const = 0;

  virtual Decision decide(Context x, Rng& rng) = 0;
  virtual void learn(Context x, const Decision& decision, double reward) = 0;
};

// Shared argument checks, throw std::invalid_argument.
void check_context(Context x, std::size_t input_dim);
void check_reward(double reward);

}  // namespace neuralbandit
