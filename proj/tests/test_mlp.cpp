#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "neuralbandit/mlp.hpp"
#include "neuralbandit/rng.hpp"
#include "support/oracles.hpp"

using namespace neuralbandit;
using mlp::NetworkShape;
using mlp::NetworkWeights;

namespace {

NetworkWeights weights_of(std::size_t d, std::size_t c, std::vector<double> values) {
  return NetworkWeights{NetworkShape(d, c), std::move(values)};
}

}  // namespace

TEST_CASE("connection count is input_dim * hidden + hidden") {
  CHECK(NetworkShape(2, 1).connection_count() == 3);
  CHECK(NetworkShape(94, 25).connection_count() == 2375);
  CHECK_THROWS_AS(NetworkShape(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(NetworkShape(3, 0), std::invalid_argument);
}

TEST_CASE("init_weights draws from (-0.5, 0.5) deterministically") {
  const NetworkWeights a = mlp::init_weights({2, 1}, 17);
  REQUIRE(a.values.size() == 3);
  for (double v : a.values) {
    CHECK(v > -0.5);
    CHECK(v < 0.5);
  }
  CHECK(mlp::init_weights({2, 1}, 17) == a);
  CHECK_FALSE(mlp::init_weights({2, 1}, 18) == a);
  CHECK(mlp::init_weights({94, 25}, 3).values.size() == 2375);

  // Wider sample: range and a roughly centered mean.
  const NetworkWeights big = mlp::init_weights({100, 100}, 5);
  double sum = 0.0;
  for (double v : big.values) {
    REQUIRE(v > -0.5);
    REQUIRE(v < 0.5);
    sum += v;
  }
  CHECK(std::abs(sum / big.values.size()) < 0.01);
}

TEST_CASE("forward with zero weights outputs one half") {
  const NetworkWeights w = weights_of(3, 2, std::vector<double>(8, 0.0));
  const std::vector<double> x = {1.0, 0.0, 1.0};
  const mlp::ForwardTrace t = mlp::forward(w, x);
  CHECK(t.hidden == std::vector<double>{0.5, 0.5});
  CHECK(t.output == 0.5);
}

TEST_CASE("forward saturates toward one") {
  const NetworkWeights w = weights_of(1, 1, {1000.0, 1000.0});
  const std::vector<double> x = {1.0};
  const double out = mlp::forward(w, x).output;
  CHECK(std::abs(out - 1.0) < 1e-9);
  CHECK(out < 1.0);
}

TEST_CASE("forward matches a hand-evaluated pass") {
  // Frozen from the scalar oracle: h0 = s(0.1), h1 = s(0.3),
  // out = s(0.5 h0 - 0.6 h1).
  const NetworkWeights w = weights_of(2, 2, {0.1, -0.2, 0.3, 0.4, 0.5, -0.6});
  const std::vector<double> x = {1.0, 0.0};
  const mlp::ForwardTrace t = mlp::forward(w, x);
  CHECK(t.hidden[0] == doctest::Approx(0.52497918747894).epsilon(1e-14));
  CHECK(t.hidden[1] == doctest::Approx(0.574442516811659).epsilon(1e-14));
  CHECK(t.output == doctest::Approx(0.47946757403239004).epsilon(1e-14));
  CHECK(t.output == doctest::Approx(oracle::network_output(w.values, x, 2)).epsilon(1e-14));
}

TEST_CASE("forward rejects mismatched context") {
  const NetworkWeights w = mlp::init_weights({3, 2}, 1);
  const std::vector<double> x = {1.0, 0.0};
  CHECK_THROWS_AS(mlp::forward(w, x), std::invalid_argument);
}

TEST_CASE("forward is pure and stays inside (0, 1)") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + rng.below(6);
    const std::size_t c = 1 + rng.below(4);
    NetworkWeights w = mlp::init_weights({d, c}, trial);
    for (double& v : w.values) v *= 200.0 * rng.uniform();
    std::vector<double> x(d);
    for (double& v : x) v = rng.uniform_open(-3.0, 3.0);
    const mlp::ForwardTrace a = mlp::forward(w, x);
    CHECK(a == mlp::forward(w, x));
    CHECK(a.output > 0.0);
    CHECK(a.output < 1.0);
  }
}

TEST_CASE("backward is zero at the loss minimum") {
  const NetworkWeights w = mlp::init_weights({3, 2}, 4);
  const std::vector<double> x = {1.0, 1.0, 0.0};
  const mlp::ForwardTrace t = mlp::forward(w, x);
  const mlp::GradientVector g = mlp::backward(w, t, x, t.output);
  for (double v : g.values) CHECK(v == 0.0);
}

TEST_CASE("backward rejects targets outside [0, 1]") {
  const NetworkWeights w = mlp::init_weights({2, 2}, 4);
  const std::vector<double> x = {1.0, 1.0};
  const mlp::ForwardTrace t = mlp::forward(w, x);
  CHECK_THROWS_AS(mlp::backward(w, t, x, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(mlp::backward(w, t, x, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(mlp::backward(w, t, x, std::nan("")), std::invalid_argument);
}

TEST_CASE("backward matches finite differences at zero weights") {
  const NetworkWeights w = weights_of(4, 3, std::vector<double>(15, 0.0));
  const std::vector<double> x = {1.0, 1.0, 1.0, 1.0};
  const mlp::GradientVector g = mlp::backward(w, mlp::forward(w, x), x, 0.0);
  const std::vector<double> fd = oracle::numeric_gradient(w.values, x, 3, 0.0);
  for (std::size_t n = 0; n < fd.size(); ++n) CHECK(oracle::agrees(g.values[n], fd[n], 1e-6, 1e-9));
}

TEST_CASE("backward matches finite differences on random instances") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.below(5);
    const std::size_t c = 1 + rng.below(3);
    const NetworkWeights w = mlp::init_weights({d, c}, 1000 + trial);
    std::vector<double> x(d);
    for (double& v : x) v = static_cast<double>(rng.below(2));
    const double target = trial % 2 == 0 ? 1.0 : rng.uniform();
    const mlp::GradientVector g = mlp::backward(w, mlp::forward(w, x), x, target);
    const std::vector<double> fd = oracle::numeric_gradient(w.values, x, c, target);
    for (std::size_t n = 0; n < fd.size(); ++n) {
      REQUIRE(oracle::agrees(g.values[n], fd[n], 1e-6, 1e-9));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("a small descent step lowers the loss") {
  Rng rng(7);
  int decreased = 0;
  int trials = 0;
  while (trials < 100) {
    const std::size_t d = 1 + rng.below(5);
    const std::size_t c = 1 + rng.below(3);
    const NetworkWeights w = mlp::init_weights({d, c}, 500 + trials);
    std::vector<double> x(d);
    for (double& v : x) v = rng.uniform_open(-1.0, 1.0);
    const double target = rng.uniform();
    const mlp::ForwardTrace t = mlp::forward(w, x);
    const mlp::GradientVector g = mlp::backward(w, t, x, target);
    double norm = 0.0;
    for (double v : g.values) norm += v * v;
    if (norm < 1e-20) continue;  // degenerate: already at the minimum
    ++trials;
    const NetworkWeights next = mlp::apply_update(w, g, -1e-4);
    const double before = mlp::half_squared_error(t.output, target);
    const double after = mlp::half_squared_error(mlp::forward(next, x).output, target);
    if (after < before) ++decreased;
  }
  CHECK(decreased == 100);
}

TEST_CASE("apply_update arithmetic") {
  const NetworkWeights w = weights_of(1, 1, {1.0, 1.0});
  const mlp::GradientVector g{NetworkShape(1, 1), {2.0, -1.0}};
  CHECK(mlp::apply_update(w, g, 0.5).values == std::vector<double>{2.0, 0.5});
  CHECK(mlp::apply_update(w, g, 0.0) == w);
  const mlp::GradientVector zero{NetworkShape(1, 1), {0.0, 0.0}};
  CHECK(mlp::apply_update(w, zero, 3.0) == w);

  const mlp::GradientVector wrong{NetworkShape(2, 1), {0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(mlp::apply_update(w, wrong, 1.0), std::invalid_argument);
}
