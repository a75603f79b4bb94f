#include "neuralbandit/mlp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "neuralbandit/rng.hpp"

namespace neuralbandit::mlp {

namespace {

constexpr double kLowest = std::numeric_limits<double>::min();
constexpr double kHighest = 1.0 - 0x1.0p-53;

void check_input(const NetworkShape& shape, std::span<const double> x) {
  if (x.size() != shape.input_dim) {
    throw std::invalid_argument("context has dimension " + std::to_string(x.size()) +
                                ", network expects " + std::to_string(shape.input_dim));
  }
}

void check_same_shape(const NetworkWeights& w, const GradientVector& g) {
  if (!(w.shape == g.shape) || w.values.size() != g.values.size()) {
    throw std::invalid_argument("gradient shape does not match network shape");
  }
}

}  // namespace

NetworkShape::NetworkShape(std::size_t input_dim, std::size_t hidden_units)
    : input_dim(input_dim), hidden_units(hidden_units) {
  if (input_dim == 0 || hidden_units == 0) {
    throw std::invalid_argument("network shape needs positive input_dim and hidden_units");
  }
}

double sigmoid(double z) noexcept {
  double s;
  if (z >= 0.0) {
    s = 1.0 / (1.0 + std::exp(-z));
  } else {
    const double e = std::exp(z);
    s = e / (1.0 + e);
  }
  if (s < kLowest) return kLowest;
  if (s > kHighest) return kHighest;
  return s;
}

double half_squared_error(double output, double target) noexcept {
  const double diff = output - target;
  return 0.5 * diff * diff;
}

NetworkWeights init_weights(const NetworkShape& shape, std::uint64_t seed) {
  if (shape.input_dim == 0 || shape.hidden_units == 0) {
    throw std::invalid_argument("init_weights: empty network shape");
  }
  Rng rng(seed);
  NetworkWeights w{shape, std::vector<double>(shape.connection_count())};
  for (double& v : w.values) v = rng.uniform_open(-0.5, 0.5);
  return w;
}

ForwardTrace forward(const NetworkWeights& w, std::span<const double> x) {
  const NetworkShape& shape = w.shape;
  check_input(shape, x);
  const std::size_t d = shape.input_dim;
  const std::size_t c = shape.hidden_units;
  const double* in = w.values.data();
  const double* out = in + shape.output_offset();

  ForwardTrace trace;
  trace.hidden.resize(c);
  double z_out = 0.0;
  for (std::size_t j = 0; j < c; ++j) {
    const double* row = in + j * d;
    double z = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] != 0.0) z += row[i] * x[i];
    }
    trace.hidden[j] = sigmoid(z);
    z_out += out[j] * trace.hidden[j];
  }
  trace.output = sigmoid(z_out);
  return trace;
}

GradientVector backward(const NetworkWeights& w, const ForwardTrace& trace,
                        std::span<const double> x, double target) {
  if (!(target >= 0.0 && target <= 1.0)) {
    throw std::invalid_argument("backward: target must lie in [0, 1]");
  }
  const NetworkShape& shape = w.shape;
  check_input(shape, x);
  if (trace.hidden.size() != shape.hidden_units) {
    throw std::invalid_argument("backward: trace does not belong to this network");
  }
  const std::size_t d = shape.input_dim;
  const std::size_t c = shape.hidden_units;
  const double* out = w.values.data() + shape.output_offset();

  GradientVector g{shape, std::vector<double>(shape.connection_count(), 0.0)};
  const double y = trace.output;
  const double delta_out = (y - target) * y * (1.0 - y);
  if (delta_out == 0.0) return g;

  double* g_out = g.values.data() + shape.output_offset();
  for (std::size_t j = 0; j < c; ++j) {
    const double h = trace.hidden[j];
    g_out[j] = delta_out * h;
    const double delta_hidden = delta_out * out[j] * h * (1.0 - h);
    double* row = g.values.data() + j * d;
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] != 0.0) row[i] = delta_hidden * x[i];
    }
  }
  return g;
}

NetworkWeights apply_update(const NetworkWeights& w, const GradientVector& g, double scale) {
  NetworkWeights next = w;
  apply_update_in_place(next, g, scale);
  return next;
}

void apply_update_in_place(NetworkWeights& w, const GradientVector& g, double scale) {
  check_same_shape(w, g);
  for (std::size_t n = 0; n < w.values.size(); ++n) w.values[n] += scale * g.values[n];
}

}  // namespace neuralbandit::mlp
