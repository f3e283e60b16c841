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

// Recurrent/dense model descriptions and their decomposition into per-gate
// matrix workloads and exact operation counts.

#ifndef PRNN_WORKLOAD_HPP_
#define PRNN_WORKLOAD_HPP_

#include <string>
#include <vector>

namespace prnn {

enum class LayerKind { kSimpleRnn, kGru, kLstm, kFullyConnected };
enum class Nonlinearity { kNone, kSigmoid, kTanh };

struct LayerSpec {
  LayerKind kind = LayerKind::kSimpleRnn;
  int input_dim = 0;   // d
  int hidden_dim = 0;  // h; output width for FC
  int timesteps = 1;   // T; always 1 for FC
  // FC only. Recurrent kinds use their canonical gate activations.
  Nonlinearity activation = Nonlinearity::kNone;

  int output_dim() const { return hidden_dim; }
  void validate() const;
};

struct ModelSpec {
  std::string name;
  std::vector<LayerSpec> layers;

  void validate() const;  // per-layer checks plus dimension chaining
};

// One gate of a recurrent cell: out = act(W x + U h_prev + b).
struct GateWorkload {
  std::string gate_name;
  int w_rows = 0, w_cols = 0;  // input-state matrix, h x d
  int u_rows = 0, u_cols = 0;  // hidden-state matrix, h x h
  int bias_len = 0;
  Nonlinearity nonlinearity = Nonlinearity::kTanh;
};

int gate_count(LayerKind kind);

// Canonical gate list for a recurrent layer. FC layers have no gate
// structure and are rejected; they map directly to one matrix workload.
std::vector<GateWorkload> gate_workloads(const LayerSpec& layer);

// Number of scalar parameters: per gate h*d + h*h + h, times the gate
// count; FC is h*d + h.
long long param_count(const LayerSpec& layer);
long long param_count(const ModelSpec& model);

struct OpCounts {
  long long macs = 0;
  long long elementwise = 0;
  // Each MAC is a multiply plus an add.
  long long total() const { return 2 * macs + elementwise; }
};

// Exact work in one full sequence (all T timesteps). MACs per timestep per
// gate are h*d + h*h; the state-update arithmetic outside the gates adds
// 6h per step for GRU and 7h for LSTM.
OpCounts layer_op_counts(const LayerSpec& layer);
OpCounts model_op_counts(const ModelSpec& model);

const char* layer_kind_name(LayerKind kind);
const char* nonlinearity_name(Nonlinearity nl);

// Reads a model description: JSON { "name": ..., "layers": [ {kind, d, h,
// T, activation?} ] }. Strict: unknown keys, bad kinds, and dimension
// chains that do not line up are rejected with file:line anchors.
ModelSpec load_model(const std::string& path);
ModelSpec parse_model(const std::string& text, const std::string& origin);

}  // namespace prnn

#endif  // PRNN_WORKLOAD_HPP_
