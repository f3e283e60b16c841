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

#include "prnn/workload.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "prnn/errors.hpp"

namespace prnn {

namespace {

using nlohmann::json;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::optional<LayerKind> kind_from_name(const std::string& name) {
  std::string u = upper(name);
  if (u == "SIMPLE_RNN") return LayerKind::kSimpleRnn;
  if (u == "GRU") return LayerKind::kGru;
  if (u == "LSTM") return LayerKind::kLstm;
  if (u == "FC") return LayerKind::kFullyConnected;
  return std::nullopt;
}

std::optional<Nonlinearity> nonlinearity_from_name(const std::string& name) {
  std::string u = upper(name);
  if (u == "NONE") return Nonlinearity::kNone;
  if (u == "SIGMOID") return Nonlinearity::kSigmoid;
  if (u == "TANH") return Nonlinearity::kTanh;
  return std::nullopt;
}

// Line of the k-th (0-based) occurrence of `needle`, for anchoring layer
// errors: every layer object carries exactly one "kind" key.
int occurrence_line(const std::string& raw, const std::string& needle, size_t k) {
  size_t pos = 0;
  for (size_t i = 0;; ++i) {
    pos = raw.find(needle, pos);
    if (pos == std::string::npos) return 0;
    if (i == k) return 1 + static_cast<int>(std::count(raw.begin(), raw.begin() + pos, '\n'));
    pos += needle.size();
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void LayerSpec::validate() const {
  if (input_dim < 1) throw ConstraintError("layer input dim must be >= 1");
  if (hidden_dim < 1) throw ConstraintError("layer hidden dim must be >= 1");
  if (timesteps < 1) throw ConstraintError("layer timesteps must be >= 1");
  if (kind == LayerKind::kFullyConnected) {
    if (timesteps != 1) throw ConstraintError("FC layers must have timesteps = 1");
  } else {
    if (activation != Nonlinearity::kNone)
      throw ConstraintError(std::string("activation is fixed by the cell equations for ") +
                            layer_kind_name(kind) + " layers");
  }
}

void ModelSpec::validate() const {
  for (size_t i = 0; i < layers.size(); ++i) {
    layers[i].validate();
    if (i > 0 && layers[i].input_dim != layers[i - 1].output_dim())
      throw ConstraintError("layer " + std::to_string(i) + " input dim " +
                            std::to_string(layers[i].input_dim) +
                            " does not chain from previous output dim " +
                            std::to_string(layers[i - 1].output_dim()));
  }
}

int gate_count(LayerKind kind) {
  switch (kind) {
    case LayerKind::kSimpleRnn: return 1;
    case LayerKind::kGru: return 3;
    case LayerKind::kLstm: return 4;
    case LayerKind::kFullyConnected: return 1;
  }
  return 0;
}

std::vector<GateWorkload> gate_workloads(const LayerSpec& layer) {
  layer.validate();
  if (layer.kind == LayerKind::kFullyConnected)
    throw ConstraintError("FC layers have no gate decomposition; map them as one matrix");

  auto gate = [&](const char* name, Nonlinearity nl) {
    GateWorkload g;
    g.gate_name = name;
    g.w_rows = layer.hidden_dim;
    g.w_cols = layer.input_dim;
    g.u_rows = layer.hidden_dim;
    g.u_cols = layer.hidden_dim;
    g.bias_len = layer.hidden_dim;
    g.nonlinearity = nl;
    return g;
  };

  switch (layer.kind) {
    case LayerKind::kSimpleRnn:
      return {gate("hidden", Nonlinearity::kTanh)};
    case LayerKind::kGru:
      return {gate("update", Nonlinearity::kSigmoid), gate("reset", Nonlinearity::kSigmoid),
              gate("candidate", Nonlinearity::kTanh)};
    case LayerKind::kLstm:
      return {gate("input", Nonlinearity::kSigmoid), gate("forget", Nonlinearity::kSigmoid),
              gate("output", Nonlinearity::kSigmoid), gate("cell", Nonlinearity::kTanh)};
    default:
      return {};
  }
}

long long param_count(const LayerSpec& layer) {
  layer.validate();
  long long d = layer.input_dim, h = layer.hidden_dim;
  if (layer.kind == LayerKind::kFullyConnected) return h * d + h;
  return gate_count(layer.kind) * (h * d + h * h + h);
}

long long param_count(const ModelSpec& model) {
  model.validate();
  long long total = 0;
  for (const auto& layer : model.layers) total += param_count(layer);
  return total;
}

OpCounts layer_op_counts(const LayerSpec& layer) {
  layer.validate();
  long long d = layer.input_dim, h = layer.hidden_dim, t = layer.timesteps;
  OpCounts counts;
  if (layer.kind == LayerKind::kFullyConnected) {
    counts.macs = h * d;
    return counts;
  }
  counts.macs = t * gate_count(layer.kind) * (h * d + h * h);
  switch (layer.kind) {
    case LayerKind::kGru:
      counts.elementwise = t * 6 * h;  // 3h multiplies + 3h adds/complements
      break;
    case LayerKind::kLstm:
      counts.elementwise = t * 7 * h;  // 3h multiplies + 2h adds + 2h state activations
      break;
    default:
      break;
  }
  return counts;
}

OpCounts model_op_counts(const ModelSpec& model) {
  model.validate();
  OpCounts total;
  for (const auto& layer : model.layers) {
    OpCounts c = layer_op_counts(layer);
    total.macs += c.macs;
    total.elementwise += c.elementwise;
  }
  return total;
}

const char* layer_kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::kSimpleRnn: return "SIMPLE_RNN";
    case LayerKind::kGru: return "GRU";
    case LayerKind::kLstm: return "LSTM";
    case LayerKind::kFullyConnected: return "FC";
  }
  return "?";
}

const char* nonlinearity_name(Nonlinearity nl) {
  switch (nl) {
    case Nonlinearity::kNone: return "NONE";
    case Nonlinearity::kSigmoid: return "SIGMOID";
    case Nonlinearity::kTanh: return "TANH";
  }
  return "?";
}

ModelSpec parse_model(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": model must be a JSON object");
  if (!doc.contains("name") || !doc["name"].is_string())
    throw ParseError(origin + ": model needs a string \"name\"");
  if (!doc.contains("layers") || !doc["layers"].is_array())
    throw ParseError(origin + ": model needs a \"layers\" array");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "name" && key != "layers")
      throw ParseError(origin + ": unknown model key \"" + key + "\"");
  }

  ModelSpec model;
  model.name = doc["name"].get<std::string>();

  const auto& layers = doc["layers"];
  for (size_t i = 0; i < layers.size(); ++i) {
    // Each well-formed layer carries exactly one "kind", so the i-th
    // occurrence locates layer i in the raw text.
    int line = occurrence_line(text, "\"kind\"", i);
    std::string where =
        origin + (line > 0 ? ":" + std::to_string(line) : "") + ": layer " + std::to_string(i);
    const auto& node = layers[i];
    if (!node.is_object()) throw ParseError(where + " must be an object");
    if (!node.contains("kind") || !node["kind"].is_string())
      throw ParseError(where + " needs a string \"kind\"");

    LayerSpec layer;
    auto kind = kind_from_name(node["kind"].get<std::string>());
    if (!kind)
      throw ParseError(where + ": unknown kind \"" + node["kind"].get<std::string>() +
                       "\" (expected SIMPLE_RNN, GRU, LSTM or FC)");
    layer.kind = *kind;

    for (const auto& [key, value] : node.items()) {
      if (key == "kind") continue;
      if (key == "d" || key == "h" || key == "T") {
        if (!value.is_number_integer() || value.get<long long>() < 1)
          throw ParseError(where + ": \"" + key + "\" must be a positive integer");
        int v = value.get<int>();
        if (key == "d")
          layer.input_dim = v;
        else if (key == "h")
          layer.hidden_dim = v;
        else
          layer.timesteps = v;
      } else if (key == "activation") {
        if (!value.is_string())
          throw ParseError(where + ": \"activation\" must be a string");
        auto nl = nonlinearity_from_name(value.get<std::string>());
        if (!nl)
          throw ParseError(where + ": unknown activation \"" + value.get<std::string>() +
                           "\" (expected NONE, SIGMOID or TANH)");
        layer.activation = *nl;
      } else {
        throw ParseError(where + ": unknown layer key \"" + key + "\"");
      }
    }
    if (layer.input_dim < 1) throw ParseError(where + " needs a positive \"d\"");
    if (layer.hidden_dim < 1) throw ParseError(where + " needs a positive \"h\"");

    try {
      layer.validate();
    } catch (const ConstraintError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!model.layers.empty() && layer.input_dim != model.layers.back().output_dim())
      throw ParseError(where + ": input dim d=" + std::to_string(layer.input_dim) +
                       " does not chain from previous layer output dim " +
                       std::to_string(model.layers.back().output_dim()));
    model.layers.push_back(layer);
  }
  return model;
}

ModelSpec load_model(const std::string& path) { return parse_model(read_file(path), path); }

}  // namespace prnn
