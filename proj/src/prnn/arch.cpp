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

#include "prnn/arch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prnn/errors.hpp"

namespace prnn {

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

// Wavelengths lit for the whole run: per MAC array, every MAC unit keeps v
// data wavelengths plus one lambda0 summation VCSEL alive, and each array
// adds one bias VCSEL. Two arrays work every gate.
long long active_wavelengths(const AcceleratorConfig& cfg) {
  return 2 * (static_cast<long long>(cfg.mac_units) * (cfg.vector_granularity + 1) + 1);
}

double eo_average_shift(const DeviceParams& params, const ResolutionContext& ctx) {
  // Expected resonance shift per imprinted value; uniform magnitudes put it
  // at a quarter of the channel spacing unless the params pin it.
  return params.eo_avg_shift > 0.0 ? params.eo_avg_shift : ctx.channel_spacing / 4.0;
}

struct ArrayCost {
  double latency = 0.0;
  EnergyBreakdown energy{};
  long long passes = 0;
  long long macs = 0;
  long long params_loaded = 0;
};

// One h x d matrix-vector product on one MAC array. Charges, per pass:
// weight loads (2 DAC conversions + 2 memristor writes per element when
// loading), one activation conversion per active column, EO tuning held
// for the pass on every active element, one balanced-photodetector read
// per row per VDU group, and one lambda0 summation pulse per active row.
ArrayCost run_matrix(long long rows, long long cols, bool load, const AcceleratorConfig& cfg,
                     const DeviceParams& params, const ResolutionContext& ctx) {
  ArrayCost out;
  MatrixTiling tiling = passes_for_matrix(rows, cols, cfg);
  double lat = pass_latency(cfg, params, /*weights_resident=*/!load);
  double shift = eo_average_shift(params, ctx);
  long long group_cols =
      static_cast<long long>(cfg.vdus_per_mac) * cfg.vector_granularity;

  long long dac_conversions = 0, memristor_writes = 0, bpd_reads = 0, sum_pulses = 0;
  double eo_energy = 0.0;
  for (long long rg = 0; rg < tiling.row_groups; ++rg) {
    long long active_rows = std::min<long long>(cfg.mac_units, rows - rg * cfg.mac_units);
    for (long long ch = 0; ch < tiling.chunks_per_row; ++ch) {
      long long active_cols = std::min<long long>(group_cols, cols - ch * group_cols);
      long long elements = active_rows * active_cols;
      out.macs += elements;
      if (load) {
        dac_conversions += 2 * elements;  // positive and negative arms
        memristor_writes += 2 * elements;
        out.params_loaded += elements;
      }
      dac_conversions += active_cols;  // activation chunk broadcast to all rows
      eo_energy += elements * params.eo_power_per_shift * shift * lat;
      bpd_reads += active_rows * ceil_div(active_cols, cfg.vector_granularity);
      sum_pulses += active_rows;
    }
  }

  out.passes = tiling.passes;
  out.latency = tiling.passes * lat;
  out.energy[kEnergyDac] = dac_conversions * params.dac_power * params.dac_latency;
  out.energy[kEnergyMemristor] =
      memristor_writes * params.memristor_power * params.memristor_latency;
  out.energy[kEnergyEoTuning] = eo_energy;
  out.energy[kEnergyPd] = bpd_reads * params.pd_power * params.pd_latency;
  out.energy[kEnergyLaser] = sum_pulses * params.vcsel_power * params.vcsel_latency;
  return out;
}

void add_energy(EnergyBreakdown& into, const EnergyBreakdown& from) {
  for (int i = 0; i < kEnergyComponentCount; ++i) into[i] += from[i];
}

}  // namespace

int AcceleratorConfig::dacs_per_vdu() const {
  return static_cast<int>(ceil_div(2LL * vector_granularity, waveguides_per_vdu));
}

void AcceleratorConfig::validate() const {
  if (vector_granularity < 1 || vdus_per_mac < 1 || mac_units < 1 || waveguides_per_vdu < 1)
    throw ConstraintError("accelerator config values must all be >= 1");
}

int ResolutionContext::bank_limit() const {
  return bank_limit_for_bits(16, q_factor, channel_spacing, center_wavelength, calibration_k);
}

const char* energy_component_name(EnergyComponent c) {
  switch (c) {
    case kEnergyLaser: return "laser";
    case kEnergyEoTuning: return "eo_tuning";
    case kEnergyToTuning: return "to_tuning";
    case kEnergyDac: return "dac";
    case kEnergyAdc: return "adc";
    case kEnergyPd: return "pd";
    case kEnergyMemristor: return "memristor";
    case kEnergyNonlinearity: return "nonlinearity";
    case kEnergyStatic: return "static";
    default: return "?";
  }
}

double total_energy(const EnergyBreakdown& breakdown) {
  double sum = 0.0;
  for (double e : breakdown) sum += e;
  return sum;
}

MatrixTiling passes_for_matrix(long long rows, long long cols, const AcceleratorConfig& cfg) {
  cfg.validate();
  if (rows < 1 || cols < 1) throw ConstraintError("matrix dims must be >= 1");
  MatrixTiling t;
  long long group_cols = static_cast<long long>(cfg.vdus_per_mac) * cfg.vector_granularity;
  t.chunks_per_row = ceil_div(cols, group_cols);
  t.row_groups = ceil_div(rows, cfg.mac_units);
  t.passes = t.row_groups * t.chunks_per_row;
  return t;
}

double pass_latency(const AcceleratorConfig& cfg, const DeviceParams& params,
                    bool weights_resident) {
  cfg.validate();
  params.validate();
  double load = weights_resident ? 0.0
                                 : cfg.waveguides_per_vdu *
                                       (params.dac_latency + params.memristor_latency);
  return load + params.eo_latency + params.vcsel_latency + params.pd_latency +
         params.soa_latency + params.adc_latency;
}

GateCost gate_latency_energy(const GateWorkload& gate, const AcceleratorConfig& cfg,
                             const DeviceParams& params, const ResolutionContext& ctx,
                             bool load_w, bool load_u) {
  ArrayCost w = run_matrix(gate.w_rows, gate.w_cols, load_w, cfg, params, ctx);
  ArrayCost u = run_matrix(gate.u_rows, gate.u_cols, load_u, cfg, params, ctx);

  GateCost cost;
  // Arrays run concurrently, then the lambda0 summation and nonlinearity.
  cost.latency = std::max(w.latency, u.latency) + params.vcsel_latency + params.soa_latency;
  add_energy(cost.energy, w.energy);
  add_energy(cost.energy, u.energy);

  long long h = gate.bias_len;
  // Bias joins photonically: one DAC activation plus one VCSEL pulse, no
  // extra opto-electronic conversion.
  cost.energy[kEnergyDac] += params.dac_power * params.dac_latency;
  cost.energy[kEnergyLaser] += params.vcsel_power * params.vcsel_latency;
  // Each output element is detected once and converted once, after the
  // optical nonlinearity (two SOAs per element).
  cost.energy[kEnergyPd] += h * params.pd_power * params.pd_latency;
  cost.energy[kEnergyAdc] += h * params.adc_power * params.adc_latency;
  cost.energy[kEnergyNonlinearity] += 2.0 * h * params.soa_power * params.soa_latency;

  cost.passes = w.passes + u.passes;
  cost.macs = w.macs + u.macs;
  cost.params_streamed = w.params_loaded + u.params_loaded + h;  // bias re-streamed per eval
  cost.activations_streamed = gate.w_cols + gate.u_cols;
  cost.outputs_stored = h;
  return cost;
}

namespace {

// FC layers skip the hidden-state array entirely: one matrix, a bias, and
// an optional output activation.
GateCost run_fc_layer(const LayerSpec& layer, const AcceleratorConfig& cfg,
                      const DeviceParams& params, const ResolutionContext& ctx) {
  ArrayCost w = run_matrix(layer.hidden_dim, layer.input_dim, /*load=*/true, cfg, params, ctx);
  GateCost cost;
  bool activated = layer.activation != Nonlinearity::kNone;
  cost.latency = w.latency + params.vcsel_latency + (activated ? params.soa_latency : 0.0);
  add_energy(cost.energy, w.energy);

  long long h = layer.hidden_dim;
  cost.energy[kEnergyDac] += params.dac_power * params.dac_latency;
  cost.energy[kEnergyLaser] += params.vcsel_power * params.vcsel_latency;
  cost.energy[kEnergyPd] += h * params.pd_power * params.pd_latency;
  cost.energy[kEnergyAdc] += h * params.adc_power * params.adc_latency;
  if (activated)
    cost.energy[kEnergyNonlinearity] += 2.0 * h * params.soa_power * params.soa_latency;

  cost.passes = w.passes;
  cost.macs = w.macs;
  cost.params_streamed = w.params_loaded + h;
  cost.activations_streamed = layer.input_dim;
  cost.outputs_stored = h;
  return cost;
}

std::string layer_label(size_t index, const LayerSpec& layer) {
  std::string label = std::to_string(index) + ":" + layer_kind_name(layer.kind) + " d" +
                      std::to_string(layer.input_dim) + " h" +
                      std::to_string(layer.hidden_dim);
  if (layer.kind != LayerKind::kFullyConnected)
    label += " T" + std::to_string(layer.timesteps);
  return label;
}

}  // namespace

SimReport simulate(const ModelSpec& model, const AcceleratorConfig& cfg,
                   const DeviceParams& params, const ResolutionContext& ctx) {
  cfg.validate();
  params.validate();
  model.validate();

  int limit = ctx.bank_limit();
  if (cfg.vector_granularity > limit)
    throw ConstraintError("v exceeds 16-bit bank limit (" + std::to_string(limit) + ")");
  if (model.layers.empty())
    throw std::domain_error("empty model: no bits processed");

  SimReport report;
  report.model_name = model.name;
  report.config = cfg;

  double static_power = params.vcsel_power * active_wavelengths(cfg);

  for (size_t i = 0; i < model.layers.size(); ++i) {
    const LayerSpec& layer = model.layers[i];
    LayerReport lr;
    lr.label = layer_label(i, layer);

    long long params_streamed = 0, activations_streamed = 0, outputs_stored = 0;

    auto absorb = [&](const GateCost& c) {
      lr.latency += c.latency;
      add_energy(lr.energy, c.energy);
      lr.passes += c.passes;
      lr.macs += c.macs;
      params_streamed += c.params_streamed;
      activations_streamed += c.activations_streamed;
      outputs_stored += c.outputs_stored;
    };

    if (layer.kind == LayerKind::kFullyConnected) {
      absorb(run_fc_layer(layer, cfg, params, ctx));
    } else {
      auto gates = gate_workloads(layer);
      // Weight-stationary check per array: the memristor cells across the
      // Nwg waveguides hold one pass-group of parameters each, so a layer
      // stays resident when all its gates' pass-groups fit at once.
      long long groups_w = 0, groups_u = 0;
      for (const auto& g : gates) {
        groups_w += passes_for_matrix(g.w_rows, g.w_cols, cfg).passes;
        groups_u += passes_for_matrix(g.u_rows, g.u_cols, cfg).passes;
      }
      bool resident_w = groups_w <= cfg.waveguides_per_vdu;
      bool resident_u = groups_u <= cfg.waveguides_per_vdu;

      for (int t = 0; t < layer.timesteps; ++t) {
        for (const auto& gate : gates) {
          bool load_w = resident_w ? t == 0 : true;
          bool load_u = resident_u ? t == 0 : true;
          absorb(gate_latency_energy(gate, cfg, params, ctx, load_w, load_u));
        }
      }
      lr.elementwise = layer_op_counts(layer).elementwise;
    }

    lr.ops = 2 * lr.macs + lr.elementwise;
    lr.bits = 16 * (params_streamed + activations_streamed + outputs_stored);
    lr.energy[kEnergyStatic] += static_power * lr.latency;

    report.total_latency += lr.latency;
    add_energy(report.energy_breakdown, lr.energy);
    report.total_macs += lr.macs;
    report.total_ops += lr.ops;
    report.total_bits += lr.bits;
    report.total_passes += lr.passes;
    report.per_layer.push_back(std::move(lr));
  }

  report.total_energy = total_energy(report.energy_breakdown);
  return report;
}

std::pair<double, double> epb_gops(const SimReport& report) {
  if (report.total_bits <= 0) throw std::domain_error("no bits processed");
  if (report.total_latency <= 0.0) throw std::domain_error("no elapsed time");
  double epb = report.total_energy / report.total_bits;
  double gops = report.total_ops / report.total_latency / 1e9;
  return {epb, gops};
}

}  // namespace prnn
