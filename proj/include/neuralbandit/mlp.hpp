#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Single-hidden-layer sigmoid network used as one arm's reward estimator.
//
// The network has no bias terms: input_dim * hidden_units input-to-hidden
// connections followed by hidden_units hidden-to-output connections.
// Weights are stored flat, hidden-unit major:
//
//   values[j * input_dim + i]          input i  -> hidden j
//   values[input_dim * hidden_units + j]  hidden j -> output
//
// Gradients share the same layout.
namespace neuralbandit::mlp {

struct NetworkShape {
  std::size_t input_dim = 0;
  std::size_t hidden_units = 0;

  NetworkShape() = default;
  NetworkShape(std::size_t input_dim, std::size_t hidden_units);

  std::size_t connection_count() const noexcept { return input_dim * hidden_units + hidden_units; }
  std::size_t output_offset() const noexcept { return input_dim * hidden_units; }

  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

struct NetworkWeights {
  NetworkShape shape;
  std::vector<double> values;

  friend bool operator==(const NetworkWeights&, const NetworkWeights&) = default;
};

// Raw gradient of the loss 0.5 * (output - target)^2 with respect to every
// connection. Descent means adding a negative multiple of it.
struct GradientVector {
  NetworkShape shape;
  std::vector<double> values;
};

struct ForwardTrace {
  std::vector<double> hidden;
  double output = 0.5;

  friend bool operator==(const ForwardTrace&, const ForwardTrace&) = default;
};

// Logistic function. Saturated values are clamped so the result stays inside
// the open interval (0, 1).
double sigmoid(double z) noexcept;

// Every connection i.i.d. uniform on (-0.5, 0.5). Same shape and seed give
// bit-identical weights.
NetworkWeights init_weights(const NetworkShape& shape, std::uint64_t seed);

// Throws std::invalid_argument when x has the wrong dimension.
ForwardTrace forward(const NetworkWeights& w, std::span<const double> x);

// Backpropagation of 0.5 * (output - target)^2. `trace` must come from
// forward(w, x). Throws std::invalid_argument for target outside [0, 1] or a
// dimension mismatch.
GradientVector backward(const NetworkWeights& w, const ForwardTrace& trace,
                        std::span<const double> x, double target);

// w + scale * g. Throws std::invalid_argument on shape mismatch.
NetworkWeights apply_update(const NetworkWeights& w, const GradientVector& g, double scale);

// In-place form of apply_update used on the hot path of the policies.
void apply_update_in_place(NetworkWeights& w, const GradientVector& g, double scale);

double half_squared_error(double output, double target) noexcept;

}  // namespace neuralbandit::mlp
