#include "neuralbandit/policy.hpp"

#include <stdexcept>

namespace neuralbandit {

void PolicyConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 0.5)) throw std::invalid_argument("gamma must lie in [0, 0.5]");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in (0, 1]");
  if (hidden_units == 0) throw std::invalid_argument("hidden_units must be positive");
  if (arm_count == 0) throw std::invalid_argument("arm_count must be positive");
  if (input_dim == 0) throw std::invalid_argument("input_dim must be positive");
}

std::size_t greedy_arm(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("greedy_arm: no scores");
  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return best;
}

std::vector<double> exploration_distribution(std::size_t greedy, std::size_t arm_count,
                                             double gamma) {
  if (greedy >= arm_count) throw std::invalid_argument("greedy arm out of range");
  std::vector<double> probs(arm_count, gamma / static_cast<double>(arm_count));
  probs[greedy] += 1.0 - gamma;
  return probs;
}

void check_context(Context x, std::size_t input_dim) {
  if (x.size() != input_dim) {
    throw std::invalid_argument("context has dimension " + std::to_string(x.size()) +
                                ", policy expects " + std::to_string(input_dim));
  }
}

void check_reward(double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) throw std::invalid_argument("reward must lie in [0, 1]");
}

}  // namespace neuralbandit
