#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "neuralbandit/exp3.hpp"
#include "neuralbandit/mlp.hpp"
#include "neuralbandit/neural_bandit.hpp"
#include "neuralbandit/policy.hpp"

namespace neuralbandit {

// Candidate NeuralBandit1 configurations for a committee.
struct ModelGrid {
  std::vector<PolicyConfig> specs;

  std::size_t size() const { return specs.size(); }
};

// Cartesian product hidden_sizes x lambdas, sorted by (hidden, lambda)
// ascending. Entry i gets seed base_seed + i.
ModelGrid make_model_grid(std::vector<std::size_t> hidden_sizes, std::vector<double> lambdas,
                          double gamma, std::uint64_t base_seed, std::size_t arm_count,
                          std::size_t input_dim);

// Seed stream reserved for the model-selection draws of a committee. Keeping
// it apart from the action draws means a one-model committee plays exactly
// like the bare NeuralBandit1 it wraps.
inline constexpr std::uint64_t kSelectorStream = 0x5E1EC7;

// NeuralBandit2: one EXP3 picks which NeuralBandit1 instance plays each round.
// Every instance then trains its network for the played arm, using its own
// probability of that arm.
class NeuralBandit2 final : public Policy {
 public:
  NeuralBandit2(ModelGrid grid, double gamma_model, std::uint64_t seed);

  std::string name() const override { return "neuralbandit2"; }
  std::size_t arm_count() const override { return instances_.front().arm_count(); }
  std::size_t input_dim() const override { return instances_.front().input_dim(); }

  // decision.models = {m_t}; decision.member_greedy[i] = instance i's greedy arm.
  Decision decide(Context x, Rng& rng) override;
  void learn(Context x, const Decision& decision, double reward) override;

  const Exp3& selector() const { return selector_; }
  Exp3& mutable_selector() { return selector_; }
  const std::vector<NeuralBandit1>& instances() const { return instances_; }

 private:
  std::vector<NeuralBandit1> instances_;
  Exp3 selector_;
  Rng selector_rng_;
};

// NeuralBandit3: one EXP3 per action chooses which model's network scores
// that action. All M networks of the played action train with the
// action-level probability; only the played action's EXP3 is credited.
class NeuralBandit3 final : public Policy {
 public:
  NeuralBandit3(ModelGrid grid, double gamma, double gamma_model, std::uint64_t seed);

  std::string name() const override { return "neuralbandit3"; }
  std::size_t arm_count() const override { return bank_.size(); }
  std::size_t input_dim() const override { return input_dim_; }

  // decision.models[k] = model that scored action k.
  Decision decide(Context x, Rng& rng) override;
  void learn(Context x, const Decision& decision, double reward) override;

  const std::vector<Exp3>& selectors() const { return bank_; }
  std::vector<Exp3>& mutable_selectors() { return bank_; }
  // networks()[m][k]: model m's network for action k.
  const std::vector<std::vector<mlp::NetworkWeights>>& networks() const { return networks_; }
  std::vector<std::vector<mlp::NetworkWeights>>& mutable_networks() { return networks_; }
  std::size_t round() const { return round_; }

 private:
  std::size_t input_dim_;
  double gamma_;
  std::vector<double> lambdas_;
  std::vector<std::vector<mlp::NetworkWeights>> networks_;
  std::vector<Exp3> bank_;
  Rng selector_rng_;
  std::size_t round_ = 0;
};

}  // namespace neuralbandit
