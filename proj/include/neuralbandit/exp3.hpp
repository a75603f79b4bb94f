#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "neuralbandit/rng.hpp"

namespace neuralbandit {

// EXP3 over M candidates. Weights start at 1.
//
//   P(m)  = (1 - gamma_model) * w_m / sum(w) + gamma_model / M
//   w'_m  = w_m * exp(gamma_model * reward / (P(m) * M))   (chosen m only)
//
// The probability vector is invariant under positive rescaling of the
// weights, so weights are divided by their maximum once it exceeds
// kRescaleThreshold, and floored at the smallest normal double.
class Exp3 {
 public:
  static constexpr double kRescaleThreshold = 1e100;

  Exp3(std::size_t arm_count, double gamma_model);

  std::vector<double> probabilities() const;
  std::size_t sample(Rng& rng) const;

  // `probs` must be probabilities() for the current weights. Throws
  // std::invalid_argument for reward outside [0, 1] or a bad index.
  void update(std::size_t chosen, double reward, std::span<const double> probs);

  std::size_t arm_count() const { return weights_.size(); }
  double gamma_model() const { return gamma_model_; }
  const std::vector<double>& weights() const { return weights_; }

  // Replaces the weight vector (used to build test states).
  void set_weights(std::vector<double> weights);

 private:
  std::vector<double> weights_;
  double gamma_model_;
};

}  // namespace neuralbandit
