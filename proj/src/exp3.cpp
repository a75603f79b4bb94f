#include "neuralbandit/exp3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace neuralbandit {

Exp3::Exp3(std::size_t arm_count, double gamma_model)
    : weights_(arm_count, 1.0), gamma_model_(gamma_model) {
  if (arm_count == 0) throw std::invalid_argument("EXP3 needs at least one candidate");
  if (!(gamma_model >= 0.0 && gamma_model <= 0.5)) {
    throw std::invalid_argument("gamma_model must lie in [0, 0.5]");
  }
}

std::vector<double> Exp3::probabilities() const {
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  const double m = static_cast<double>(weights_.size());
  std::vector<double> p(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    p[i] = (1.0 - gamma_model_) * (weights_[i] / total) + gamma_model_ / m;
  }
  return p;
}

std::size_t Exp3::sample(Rng& rng) const {
  const std::vector<double> p = probabilities();
  return rng.sample(p);
}

void Exp3::update(std::size_t chosen, double reward, std::span<const double> probs) {
  if (!(reward >= 0.0 && reward <= 1.0)) throw std::invalid_argument("reward must lie in [0, 1]");
  if (chosen >= weights_.size() || probs.size() != weights_.size()) {
    throw std::invalid_argument("EXP3 update: chosen index or distribution size out of range");
  }
  if (reward == 0.0) return;
  const double m = static_cast<double>(weights_.size());
  weights_[chosen] *= std::exp(gamma_model_ * reward / (probs[chosen] * m));

  const double top = *std::max_element(weights_.begin(), weights_.end());
  if (top > kRescaleThreshold) {
    constexpr double floor = std::numeric_limits<double>::min();
    for (double& w : weights_) w = std::max(w / top, floor);
  }
}

void Exp3::set_weights(std::vector<double> weights) {
  if (weights.size() != weights_.size()) throw std::invalid_argument("EXP3 weight count mismatch");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("EXP3 weights must be positive and finite");
  }
  weights_ = std::move(weights);
}

}  // namespace neuralbandit
