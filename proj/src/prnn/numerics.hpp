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

// Q1.15 fixed-point quantization and the optoelectronic activation algebra,
// plus a tiny dense reference cell used to check functional fidelity.

#ifndef PRNN_NUMERICS_HPP_
#define PRNN_NUMERICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "prnn/workload.hpp"

namespace prnn {

// Signed 16-bit fixed point, value = raw * 2^-15, spanning [-1, 1 - 2^-15].
struct FixedPoint16 {
  int16_t raw = 0;
  double value() const { return raw * (1.0 / 32768.0); }
};

// Round-to-nearest-even onto the Q1.15 grid with saturation at the range
// ends. NaN has no sensible grid point and is rejected.
FixedPoint16 quantize16(double x);
double quantize16_value(double x);

double sigmoid(double x);

// tanh built from the sigmoid hardware: tanh(x) = 2*sigmoid(2x) - 1.
double tanh_from_sigmoid(double x);

using Vec = std::vector<double>;
using Matrix = std::vector<Vec>;  // row major

// Dense parameters for one layer, one entry per gate in canonical gate
// order (FC: a single W and bias, no U).
struct ToyCellWeights {
  std::vector<Matrix> w;  // h x d each
  std::vector<Matrix> u;  // h x h each
  std::vector<Vec> b;     // length h each
};

// Reference forward pass of the canonical cell equations, returning the
// hidden state after every timestep (FC: the single output). When
// `quantized` every parameter, input, product and activation is pushed
// through quantize16; accumulations stay at full precision unless
// `quantize_sums` also re-quantizes every running sum and state value.
// Sum quantization saturates once accumulations leave [-1, 1), so only
// the default mode carries a small rounding-error bound.
std::vector<Vec> toy_cell_forward(const LayerSpec& layer, const ToyCellWeights& weights,
                                  const std::vector<Vec>& inputs, bool quantized,
                                  bool quantize_sums = false);

// Loads weights from a CSV fixture with header gate,matrix,row,col,value
// where matrix is W, U or b. Unlisted entries stay zero.
ToyCellWeights load_toy_weights(const std::string& path, const LayerSpec& layer);

// Zero-initialized weight arrays with the right shapes for `layer`.
ToyCellWeights zero_toy_weights(const LayerSpec& layer);

}  // namespace prnn

#endif  // PRNN_NUMERICS_HPP_
