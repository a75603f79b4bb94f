#pragma once

#include <string>
#include <vector>

#include "neuralbandit/mlp.hpp"

namespace neuralbandit {

// Central finite differences of 0.5 * (forward(w, x) - target)^2, one
// connection at a time.
std::vector<double> finite_difference_gradient(const mlp::NetworkWeights& w,
                                               std::span<const double> x, double target,
                                               double step);

// |a - b| <= max(rel * max(|a|, |b|), abs)
bool close_enough(double a, double b, double rel, double abs);

struct SelftestOptions {
  // Negative control: flips the sign of every backpropagated gradient seen by
  // the gradient check.
  bool corrupt_gradient_sign = false;
  std::uint64_t seed = 2014;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Gradient check, importance-weighting Monte Carlo, EXP3 distribution checks,
// one-model committee equivalence and an XOR separation run.
std::vector<CheckResult> run_selftest(const SelftestOptions& options);

}  // namespace neuralbandit
