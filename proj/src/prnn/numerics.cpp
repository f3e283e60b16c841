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

#include "prnn/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "prnn/csv.hpp"
#include "prnn/errors.hpp"

namespace prnn {

FixedPoint16 quantize16(double x) {
  if (std::isnan(x)) throw std::domain_error("cannot quantize NaN");
  if (x >= 1.0) return {INT16_MAX};
  if (x <= -1.0) return {INT16_MIN};
  // llrint honors the default round-to-nearest, ties-to-even mode.
  long long raw = std::llrint(x * 32768.0);
  if (raw > INT16_MAX) raw = INT16_MAX;
  if (raw < INT16_MIN) raw = INT16_MIN;
  return {static_cast<int16_t>(raw)};
}

double quantize16_value(double x) { return quantize16(x).value(); }

double sigmoid(double x) {
  // Evaluate via exp of a nonpositive argument so large |x| cannot overflow.
  if (x >= 0.0) {
    double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

double tanh_from_sigmoid(double x) { return 2.0 * sigmoid(2.0 * x) - 1.0; }

namespace {

struct QuantPolicy {
  bool values = false;  // quantize parameters, inputs, products, activations
  bool sums = false;    // additionally quantize every running sum / state
  double v(double x) const { return values ? quantize16_value(x) : x; }
  double s(double x) const { return sums ? quantize16_value(x) : x; }
};

Vec matvec_bias(const Matrix& m, const Vec& x, const Vec& bias, const QuantPolicy& q) {
  Vec out(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    double acc = q.v(bias[i]);
    for (size_t j = 0; j < x.size(); ++j) acc = q.s(acc + q.v(m[i][j] * x[j]));
    out[i] = acc;
  }
  return out;
}

Vec add(const Vec& a, const Vec& b, const QuantPolicy& q) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = q.s(a[i] + b[i]);
  return out;
}

Vec apply(const Vec& a, Nonlinearity nl, const QuantPolicy& q) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    double y = a[i];
    if (nl == Nonlinearity::kSigmoid) y = sigmoid(y);
    if (nl == Nonlinearity::kTanh) y = tanh_from_sigmoid(y);
    out[i] = q.v(y);
  }
  return out;
}

Vec gate_output(const GateWorkload& gate, size_t idx, const ToyCellWeights& w, const Vec& x,
                const Vec& h_prev, const QuantPolicy& q) {
  Vec wx = matvec_bias(w.w[idx], x, w.b[idx], q);
  Vec uh = matvec_bias(w.u[idx], h_prev, Vec(h_prev.size(), 0.0), q);
  return apply(add(wx, uh, q), gate.nonlinearity, q);
}

void check_shape(const Matrix& m, size_t rows, size_t cols, const char* what) {
  bool ok = m.size() == rows;
  for (const auto& row : m) ok = ok && row.size() == cols;
  if (!ok)
    throw ConstraintError(std::string("weight matrix ") + what + " has the wrong shape");
}

void validate_weights(const LayerSpec& layer, const ToyCellWeights& w) {
  size_t h = layer.hidden_dim, d = layer.input_dim;
  size_t gates =
      layer.kind == LayerKind::kFullyConnected ? 1 : static_cast<size_t>(gate_count(layer.kind));
  if (w.w.size() != gates || w.b.size() != gates)
    throw ConstraintError("weight arrays do not match the layer's gate count");
  bool recurrent = layer.kind != LayerKind::kFullyConnected;
  if (recurrent && w.u.size() != gates)
    throw ConstraintError("weight arrays do not match the layer's gate count");
  if (!recurrent && !w.u.empty())
    throw ConstraintError("FC layers take no hidden-state matrices");
  for (size_t g = 0; g < gates; ++g) {
    check_shape(w.w[g], h, d, "W");
    if (recurrent) check_shape(w.u[g], h, h, "U");
    if (w.b[g].size() != h) throw ConstraintError("bias vector has the wrong length");
  }
}

ToyCellWeights quantized_copy(const ToyCellWeights& w) {
  ToyCellWeights out = w;
  for (auto& m : out.w)
    for (auto& row : m)
      for (auto& x : row) x = quantize16_value(x);
  for (auto& m : out.u)
    for (auto& row : m)
      for (auto& x : row) x = quantize16_value(x);
  for (auto& v : out.b)
    for (auto& x : v) x = quantize16_value(x);
  return out;
}

}  // namespace

std::vector<Vec> toy_cell_forward(const LayerSpec& layer, const ToyCellWeights& weights,
                                  const std::vector<Vec>& inputs, bool quantized,
                                  bool quantize_sums) {
  layer.validate();
  validate_weights(layer, weights);
  if (inputs.size() != static_cast<size_t>(layer.timesteps))
    throw ConstraintError("input sequence length does not match layer timesteps");
  for (const auto& x : inputs)
    if (x.size() != static_cast<size_t>(layer.input_dim))
      throw ConstraintError("input vector length does not match layer input dim");

  QuantPolicy q{quantized, quantized && quantize_sums};
  const ToyCellWeights w = quantized ? quantized_copy(weights) : weights;
  std::vector<Vec> ins = inputs;
  if (quantized)
    for (auto& x : ins)
      for (auto& v : x) v = quantize16_value(v);

  size_t h = layer.hidden_dim;
  std::vector<Vec> outputs;

  if (layer.kind == LayerKind::kFullyConnected) {
    Vec y = matvec_bias(w.w[0], ins[0], w.b[0], q);
    outputs.push_back(apply(y, layer.activation, q));
    return outputs;
  }

  auto gates = gate_workloads(layer);
  Vec hidden(h, 0.0), cell(h, 0.0);

  for (const auto& x : ins) {
    switch (layer.kind) {
      case LayerKind::kSimpleRnn: {
        hidden = gate_output(gates[0], 0, w, x, hidden, q);
        break;
      }
      case LayerKind::kGru: {
        Vec z = gate_output(gates[0], 0, w, x, hidden, q);
        Vec r = gate_output(gates[1], 1, w, x, hidden, q);
        Vec rh(h);
        for (size_t i = 0; i < h; ++i) rh[i] = q.v(r[i] * hidden[i]);
        Vec hc = gate_output(gates[2], 2, w, x, rh, q);
        for (size_t i = 0; i < h; ++i) {
          double keep = q.s(1.0 - z[i]);
          hidden[i] = q.s(q.v(keep * hidden[i]) + q.v(z[i] * hc[i]));
        }
        break;
      }
      case LayerKind::kLstm: {
        Vec in = gate_output(gates[0], 0, w, x, hidden, q);
        Vec forget = gate_output(gates[1], 1, w, x, hidden, q);
        Vec out = gate_output(gates[2], 2, w, x, hidden, q);
        Vec cand = gate_output(gates[3], 3, w, x, hidden, q);
        for (size_t i = 0; i < h; ++i) {
          cell[i] = q.s(q.v(forget[i] * cell[i]) + q.v(in[i] * cand[i]));
          hidden[i] = q.v(out[i] * q.v(tanh_from_sigmoid(cell[i])));
        }
        break;
      }
      default:
        break;
    }
    outputs.push_back(hidden);
  }
  return outputs;
}

ToyCellWeights zero_toy_weights(const LayerSpec& layer) {
  layer.validate();
  size_t h = layer.hidden_dim, d = layer.input_dim;
  size_t gates =
      layer.kind == LayerKind::kFullyConnected ? 1 : static_cast<size_t>(gate_count(layer.kind));
  ToyCellWeights w;
  w.w.assign(gates, Matrix(h, Vec(d, 0.0)));
  if (layer.kind != LayerKind::kFullyConnected) w.u.assign(gates, Matrix(h, Vec(h, 0.0)));
  w.b.assign(gates, Vec(h, 0.0));
  return w;
}

ToyCellWeights load_toy_weights(const std::string& path, const LayerSpec& layer) {
  auto rows = csv::read_rows(path);
  if (rows.empty()) throw ParseError(path + ": empty weight file");
  const std::vector<std::string> expected = {"gate", "matrix", "row", "col", "value"};
  if (rows[0].fields != expected)
    throw ParseError(path + ":" + std::to_string(rows[0].line) +
                     ": header must be gate,matrix,row,col,value");

  ToyCellWeights w = zero_toy_weights(layer);
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::string where = path + ":" + std::to_string(row.line);
    int gate = static_cast<int>(csv::parse_double(row, 0, "gate", path));
    if (row.fields.size() < 2) throw ParseError(where + ": missing column matrix");
    std::string matrix = row.fields[1];
    int r = static_cast<int>(csv::parse_double(row, 2, "row", path));
    int c = static_cast<int>(csv::parse_double(row, 3, "col", path));
    double value = csv::parse_double(row, 4, "value", path);
    if (gate < 0 || gate >= static_cast<int>(w.w.size()))
      throw ParseError(where + ": gate index out of range");
    auto set = [&](Matrix& m, int rows_n, int cols_n) {
      if (r < 0 || r >= rows_n || c < 0 || c >= cols_n)
        throw ParseError(where + ": row/col out of range for matrix " + matrix);
      m[r][c] = value;
    };
    if (matrix == "W") {
      set(w.w[gate], layer.hidden_dim, layer.input_dim);
    } else if (matrix == "U") {
      if (w.u.empty()) throw ParseError(where + ": FC layers take no U entries");
      set(w.u[gate], layer.hidden_dim, layer.hidden_dim);
    } else if (matrix == "b") {
      if (r < 0 || r >= layer.hidden_dim || c != 0)
        throw ParseError(where + ": row/col out of range for matrix b");
      w.b[gate][r] = value;
    } else {
      throw ParseError(where + ": matrix must be W, U or b");
    }
  }
  return w;
}

}  // namespace prnn
