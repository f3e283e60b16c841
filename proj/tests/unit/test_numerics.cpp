/*
 * Copyright 2025 the prnn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "prnn/errors.hpp"
#include "prnn/numerics.hpp"

using namespace prnn;
using doctest::Approx;

namespace {

LayerSpec layer(LayerKind kind, int d, int h, int t = 1) {
  LayerSpec l;
  l.kind = kind;
  l.input_dim = d;
  l.hidden_dim = h;
  l.timesteps = t;
  return l;
}

ToyCellWeights random_weights(const LayerSpec& l, std::mt19937& rng, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  ToyCellWeights w = zero_toy_weights(l);
  for (auto& m : w.w)
    for (auto& row : m)
      for (auto& x : row) x = u(rng);
  for (auto& m : w.u)
    for (auto& row : m)
      for (auto& x : row) x = u(rng);
  for (auto& v : w.b)
    for (auto& x : v) x = u(rng);
  return w;
}

std::vector<Vec> random_inputs(const LayerSpec& l, std::mt19937& rng, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  std::vector<Vec> xs(l.timesteps, Vec(l.input_dim));
  for (auto& x : xs)
    for (auto& v : x) v = u(rng);
  return xs;
}

}  // namespace

TEST_CASE("Q1.15 quantization saturates, rounds to even, rejects NaN") {
  CHECK(quantize16(0.0).raw == 0);
  CHECK(quantize16(0.5).raw == 16384);
  CHECK(quantize16(-0.5).raw == -16384);
  CHECK(quantize16(1.0).raw == 32767);
  CHECK(quantize16(-1.0).raw == -32768);
  CHECK(quantize16(2.0).raw == 32767);
  CHECK(quantize16(-3.0).raw == -32768);
  // 32767/32768 is a dyadic rational, so the comparison is exact.
  CHECK(quantize16_value(1.0) == 0.999969482421875);

  // Ties round to the even raw code.
  CHECK(quantize16(1.5 / 32768.0).raw == 2);
  CHECK(quantize16(2.5 / 32768.0).raw == 2);
  CHECK(quantize16(-1.5 / 32768.0).raw == -2);

  // On-grid values pass through exactly.
  for (int raw : {-32768, -12345, -1, 0, 1, 7, 32767}) {
    FixedPoint16 fp{static_cast<int16_t>(raw)};
    CHECK(quantize16(fp.value()).raw == raw);
  }

  CHECK_THROWS_AS(quantize16(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  // Infinities saturate like any out-of-range value.
  CHECK(quantize16(std::numeric_limits<double>::infinity()).raw == 32767);
}

TEST_CASE("quantization error is bounded by half an LSB inside the range") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-0.999, 0.999);
  for (int i = 0; i < 2000; ++i) {
    double x = u(rng);
    CHECK(std::abs(quantize16_value(x) - x) <= 0.5 / 32768.0 + 1e-15);
  }
}

TEST_CASE("sigmoid is stable and symmetric") {
  CHECK(sigmoid(0.0) == Approx(0.5).epsilon(1e-15));
  CHECK(sigmoid(2.0) == Approx(0.8807970779778823).epsilon(1e-15));
  CHECK(sigmoid(1000.0) == Approx(1.0));
  CHECK(sigmoid(-1000.0) == Approx(0.0));
  for (double x : {0.1, 0.9, 3.7, 15.0, 80.0}) {
    CHECK(sigmoid(-x) == Approx(1.0 - sigmoid(x)).epsilon(1e-14));
  }
}

TEST_CASE("tanh from sigmoid matches the reference tanh") {
  CHECK(tanh_from_sigmoid(1.0) == Approx(0.7615941559557649).epsilon(1e-15));
  CHECK(tanh_from_sigmoid(0.5) == Approx(0.46211715726000974).epsilon(1e-15));
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    double x = -8.0 + 16.0 * i / 10000.0;
    worst = std::max(worst, std::abs(tanh_from_sigmoid(x) - std::tanh(x)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("simple RNN forward matches a longhand recurrence") {
  LayerSpec l = layer(LayerKind::kSimpleRnn, 1, 1, 2);
  ToyCellWeights w = zero_toy_weights(l);
  w.w[0][0][0] = 0.5;
  w.u[0][0][0] = 0.25;
  w.b[0][0] = 0.125;

  std::vector<Vec> xs = {{0.5}, {-0.25}};
  auto out = toy_cell_forward(l, w, xs, /*quantized=*/false);
  REQUIRE(out.size() == 2);

  double h1 = std::tanh(0.5 * 0.5 + 0.125);
  double h2 = std::tanh(0.5 * -0.25 + 0.25 * h1 + 0.125);
  CHECK(out[0][0] == Approx(h1).epsilon(1e-9));
  CHECK(out[1][0] == Approx(h2).epsilon(1e-9));
}

TEST_CASE("GRU forward matches the canonical cell equations") {
  LayerSpec l = layer(LayerKind::kGru, 1, 1, 2);
  ToyCellWeights w = zero_toy_weights(l);
  // gates: update, reset, candidate
  w.w[0][0][0] = 0.3;  w.u[0][0][0] = -0.2; w.b[0][0] = 0.1;
  w.w[1][0][0] = -0.4; w.u[1][0][0] = 0.5;  w.b[1][0] = 0.0;
  w.w[2][0][0] = 0.7;  w.u[2][0][0] = 0.6;  w.b[2][0] = -0.1;

  std::vector<Vec> xs = {{0.8}, {-0.3}};
  auto out = toy_cell_forward(l, w, xs, false);

  double h = 0.0;
  for (double x : {0.8, -0.3}) {
    double z = 1.0 / (1.0 + std::exp(-(0.3 * x - 0.2 * h + 0.1)));
    double r = 1.0 / (1.0 + std::exp(-(-0.4 * x + 0.5 * h)));
    double c = std::tanh(0.7 * x + 0.6 * (r * h) - 0.1);
    h = (1.0 - z) * h + z * c;
  }
  CHECK(out[1][0] == Approx(h).epsilon(1e-9));
}

TEST_CASE("LSTM forward matches the canonical cell equations") {
  LayerSpec l = layer(LayerKind::kLstm, 1, 1, 3);
  ToyCellWeights w = zero_toy_weights(l);
  // gates: input, forget, output, cell
  double ws[4] = {0.2, -0.3, 0.4, 0.5};
  double us[4] = {0.1, 0.2, -0.1, 0.3};
  double bs[4] = {0.05, -0.05, 0.0, 0.1};
  for (int g = 0; g < 4; ++g) {
    w.w[g][0][0] = ws[g];
    w.u[g][0][0] = us[g];
    w.b[g][0] = bs[g];
  }

  std::vector<Vec> xs = {{0.6}, {-0.2}, {0.9}};
  auto out = toy_cell_forward(l, w, xs, false);

  auto sig = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  double h = 0.0, c = 0.0;
  for (double x : {0.6, -0.2, 0.9}) {
    double in = sig(ws[0] * x + us[0] * h + bs[0]);
    double f = sig(ws[1] * x + us[1] * h + bs[1]);
    double o = sig(ws[2] * x + us[2] * h + bs[2]);
    double cand = std::tanh(ws[3] * x + us[3] * h + bs[3]);
    c = f * c + in * cand;
    h = o * std::tanh(c);
  }
  CHECK(out[2][0] == Approx(h).epsilon(1e-9));
}

TEST_CASE("FC forward is one affine map with an optional activation") {
  LayerSpec l = layer(LayerKind::kFullyConnected, 2, 2);
  l.activation = Nonlinearity::kSigmoid;
  ToyCellWeights w = zero_toy_weights(l);
  w.w[0] = {{0.5, -0.25}, {0.125, 0.75}};
  w.b[0] = {0.1, -0.2};

  auto out = toy_cell_forward(l, w, {{0.4, 0.8}}, false);
  REQUIRE(out.size() == 1);
  auto sig = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  CHECK(out[0][0] == Approx(sig(0.5 * 0.4 - 0.25 * 0.8 + 0.1)).epsilon(1e-9));
  CHECK(out[0][1] == Approx(sig(0.125 * 0.4 + 0.75 * 0.8 - 0.2)).epsilon(1e-9));
}

TEST_CASE("forward pass validates shapes") {
  LayerSpec l = layer(LayerKind::kGru, 2, 2, 1);
  ToyCellWeights w = zero_toy_weights(l);
  CHECK_THROWS_AS(toy_cell_forward(l, w, {}, false), ConstraintError);
  CHECK_THROWS_AS(toy_cell_forward(l, w, {{0.0}}, false), ConstraintError);
  w.w.pop_back();
  CHECK_THROWS_AS(toy_cell_forward(l, w, {{0.0, 0.0}}, false), ConstraintError);
}

TEST_CASE("quantized LSTM stays within a 2^-10 envelope of the float pass") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    std::mt19937 rng(seed);
    LayerSpec l = layer(LayerKind::kLstm, 4, 4, 8);
    ToyCellWeights w = random_weights(l, rng, 0.5);
    auto xs = random_inputs(l, rng, 1.0);

    auto exact = toy_cell_forward(l, w, xs, false);
    auto fixed = toy_cell_forward(l, w, xs, true);
    double worst = 0.0;
    for (size_t t = 0; t < exact.size(); ++t)
      for (size_t i = 0; i < exact[t].size(); ++i)
        worst = std::max(worst, std::abs(exact[t][i] - fixed[t][i]));
    CHECK(worst <= std::ldexp(1.0, -10));
  }
}

TEST_CASE("opt-in sum quantization saturates once accumulations leave the grid") {
  LayerSpec l = layer(LayerKind::kSimpleRnn, 1, 1, 1);
  ToyCellWeights w = zero_toy_weights(l);
  w.w[0] = {{0.5}};

  // While every intermediate stays inside [-1, 1) the two quantized
  // modes agree bit for bit.
  auto tame_sums = toy_cell_forward(l, w, {{0.5}}, true, true);
  auto tame_wide = toy_cell_forward(l, w, {{0.5}}, true, false);
  CHECK(tame_sums[0][0] == tame_wide[0][0]);

  // A pre-activation of ~1.25 clamps against the Q1.15 ceiling, pulling
  // the saturating mode below the wide-accumulator one.
  w.b[0] = {0.75};
  auto clamped = toy_cell_forward(l, w, {{1.0}}, true, true);
  auto wide = toy_cell_forward(l, w, {{1.0}}, true, false);
  CHECK(clamped[0][0] < wide[0][0]);
}

TEST_CASE("weight fixtures load by gate index with zero fill") {
  LayerSpec l = layer(LayerKind::kSimpleRnn, 2, 3, 1);
  ToyCellWeights w = load_toy_weights(std::string(PRNN_DATA_DIR) + "/toy_rnn_weights.csv", l);
  CHECK(w.w[0][0][0] == 0.25);
  CHECK(w.w[0][0][1] == -0.5);
  CHECK(w.w[0][2][1] == 0.5);
  CHECK(w.u[0][2][2] == 0.35);
  CHECK(w.b[0][2] == 0.125);

  // The fixture feeds straight into the forward pass.
  auto out = toy_cell_forward(l, w, {{0.5, -0.5}}, false);
  double y0 = std::tanh(0.25 * 0.5 + -0.5 * -0.5 + 0.03125);
  CHECK(out[0][0] == Approx(y0).epsilon(1e-9));

  CHECK_THROWS_AS(load_toy_weights(std::string(PRNN_DATA_DIR) + "/no_such.csv", l), ParseError);
}
