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

// Analytical schedule and energy model for the vector-dot-product-unit /
// MAC-unit / MAC-array hierarchy. Matrices are tiled into passes; passes,
// gates, timesteps and layers serialize exactly as the dataflow demands,
// and each pass charges the devices it activates.

#ifndef PRNN_ARCH_HPP_
#define PRNN_ARCH_HPP_

#include <array>
#include <string>
#include <vector>

#include "prnn/device.hpp"
#include "prnn/workload.hpp"

namespace prnn {

// The architectural tuple [v, N, M, Nwg].
struct AcceleratorConfig {
  int vector_granularity = 15;  // v: elements per VDU
  int vdus_per_mac = 15;        // N: VDUs summed coherently per MAC unit
  int mac_units = 40;           // M: MAC units (rows in flight) per array
  int waveguides_per_vdu = 1;   // Nwg: waveguides sharing one DAC array

  // DAC-array sharing across waveguides: ceil(2v / Nwg).
  int dacs_per_vdu() const;
  void validate() const;
};

// Operating point of the MR banks that carries the resolution constraint.
struct ResolutionContext {
  double q_factor = kDefaultQFactor;
  double channel_spacing = kDefaultChannelSpacing;
  double center_wavelength = kDefaultCenterWavelength;
  double calibration_k = 0.0;  // 0 selects the default calibration

  // Largest v an MR bank supports at 16-bit resolution here.
  int bank_limit() const;
};

enum EnergyComponent {
  kEnergyLaser = 0,
  kEnergyEoTuning,
  kEnergyToTuning,
  kEnergyDac,
  kEnergyAdc,
  kEnergyPd,
  kEnergyMemristor,
  kEnergyNonlinearity,
  kEnergyStatic,
  kEnergyComponentCount,
};

const char* energy_component_name(EnergyComponent c);

using EnergyBreakdown = std::array<double, kEnergyComponentCount>;

double total_energy(const EnergyBreakdown& breakdown);

struct MatrixTiling {
  long long passes = 0;
  long long chunks_per_row = 0;  // ceil(cols / (N*v))
  long long row_groups = 0;      // ceil(rows / M)
};

// How an h x d matrix-vector product tiles onto one MAC array: each pass
// feeds up to N*v elements of a row into one MAC unit, M rows in parallel.
MatrixTiling passes_for_matrix(long long rows, long long cols, const AcceleratorConfig& cfg);

// Wall time of a single pass. Loading weights costs Nwg sequential
// DAC+memristor group writes; resident weights skip the load entirely.
double pass_latency(const AcceleratorConfig& cfg, const DeviceParams& params,
                    bool weights_resident);

struct GateCost {
  double latency = 0.0;
  EnergyBreakdown energy{};
  long long passes = 0;
  long long macs = 0;
  long long params_streamed = 0;
  long long activations_streamed = 0;
  long long outputs_stored = 0;
};

// One gate evaluation: the input-state (h x d) and hidden-state (h x h)
// products run concurrently on their two arrays, then photonic summation,
// bias add and the optical nonlinearity. load_w / load_u say whether each
// array must stream its weights in this timestep.
GateCost gate_latency_energy(const GateWorkload& gate, const AcceleratorConfig& cfg,
                             const DeviceParams& params, const ResolutionContext& ctx,
                             bool load_w = true, bool load_u = true);

struct LayerReport {
  std::string label;
  long long passes = 0;
  double latency = 0.0;  // seconds
  EnergyBreakdown energy{};
  long long macs = 0;
  long long elementwise = 0;
  long long ops = 0;
  long long bits = 0;
};

struct SimReport {
  std::string model_name;
  AcceleratorConfig config;
  std::vector<LayerReport> per_layer;
  double total_latency = 0.0;  // seconds
  EnergyBreakdown energy_breakdown{};
  double total_energy = 0.0;  // joules
  long long total_ops = 0;
  long long total_bits = 0;
  long long total_macs = 0;
  long long total_passes = 0;
};

// Runs the whole model through the schedule. Throws ConstraintError when v
// exceeds the calibrated bank limit, and a domain error for models that
// process no bits.
SimReport simulate(const ModelSpec& model, const AcceleratorConfig& cfg,
                   const DeviceParams& params, const ResolutionContext& ctx = {});

// (energy per bit in J/bit, throughput in GOPS). Throws std::domain_error
// on zero bits or zero latency.
std::pair<double, double> epb_gops(const SimReport& report);

}  // namespace prnn

#endif  // PRNN_ARCH_HPP_
