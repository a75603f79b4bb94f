#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace neuralbandit {

// SplitMix64 finalizer. Used to derive independent child seeds from a parent
// seed so that every random stream in a run traces back to one top-level seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random source. Only the raw mt19937_64 output is used, never
// the standard distributions, so sequences are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (lo, hi).
  double uniform_open(double lo, double hi) {
    double u = uniform();
    while (u == 0.0) u = uniform();
    return lo + (hi - lo) * u;
  }

  // Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return r % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Draws an index from a probability vector with one uniform draw.
  std::size_t sample(std::span<const double> probs) {
    if (probs.empty()) throw std::invalid_argument("Rng::sample: empty distribution");
    const double u = uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] <= 0.0) continue;
      cumulative += probs[i];
      last_positive = i;
      if (u < cumulative) return i;
    }
    return last_positive;
  }

  // Standard normal via Box-Muller (used only by synthetic data generators).
  double normal() {
    const double u1 = uniform_open(0.0, 1.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace neuralbandit
