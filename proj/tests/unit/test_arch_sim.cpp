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
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "prnn/arch.hpp"
#include "prnn/errors.hpp"
#include "prnn/units.hpp"

using namespace prnn;
using doctest::Approx;

namespace {

AcceleratorConfig config(int v, int n, int m, int nwg) {
  AcceleratorConfig c;
  c.vector_granularity = v;
  c.vdus_per_mac = n;
  c.mac_units = m;
  c.waveguides_per_vdu = nwg;
  return c;
}

LayerSpec layer(LayerKind kind, int d, int h, int t = 1) {
  LayerSpec l;
  l.kind = kind;
  l.input_dim = d;
  l.hidden_dim = h;
  l.timesteps = t;
  return l;
}

ModelSpec single(const LayerSpec& l, const char* name = "m") {
  ModelSpec m;
  m.name = name;
  m.layers = {l};
  return m;
}

}  // namespace

TEST_CASE("DAC sharing across waveguides") {
  CHECK(config(15, 15, 40, 10).dacs_per_vdu() == 3);
  for (int v = 1; v <= 32; ++v) {
    for (int nwg = 1; nwg <= 16; ++nwg) {
      int expected = (2 * v + nwg - 1) / nwg;  // ceil(2v / Nwg)
      CHECK(config(v, 1, 1, nwg).dacs_per_vdu() == expected);
    }
  }
}

TEST_CASE("matrix tiling counts row groups and column chunks") {
  AcceleratorConfig cfg = config(15, 15, 40, 1);
  CHECK(passes_for_matrix(256, 128, cfg).passes == 7);   // ceil(256/40) * ceil(128/225)
  CHECK(passes_for_matrix(40, 450, cfg).passes == 2);    // 1 * ceil(450/225)
  CHECK(passes_for_matrix(1, 1, cfg).passes == 1);
  CHECK(passes_for_matrix(41, 226, cfg).passes == 4);    // 2 * 2
  CHECK_THROWS_AS(passes_for_matrix(0, 1, cfg), ConstraintError);
  CHECK_THROWS_AS(passes_for_matrix(1, 1, config(0, 1, 1, 1)), ConstraintError);
}

TEST_CASE("pass latency sums the active stage latencies") {
  DeviceParams p;
  // Loading: Nwg DAC+memristor group writes ahead of the optical stages.
  double loaded1 = pass_latency(config(15, 15, 40, 1), p, /*weights_resident=*/false);
  CHECK(loaded1 / units::kNs == Approx(34.5058).epsilon(1e-9));
  double loaded10 = pass_latency(config(15, 15, 40, 10), p, false);
  CHECK(loaded10 / units::kNs == Approx(38.3758).epsilon(1e-9));
  // Resident weights skip the load no matter how many waveguides.
  double resident = pass_latency(config(15, 15, 40, 10), p, true);
  CHECK(resident / units::kNs == Approx(34.0758).epsilon(1e-9));
  CHECK(pass_latency(config(15, 15, 40, 1), p, true) == Approx(resident).epsilon(1e-12));
}

TEST_CASE("single-gate schedule matches the hand-computed oracle") {
  // SIMPLE_RNN d=2 h=3 T=1 on [15, 15, 40, 10]: one loading pass per array.
  AcceleratorConfig cfg = config(15, 15, 40, 10);
  DeviceParams p;
  SimReport rep = simulate(single(layer(LayerKind::kSimpleRnn, 2, 3, 1), "toy"), cfg, p);

  double pass_ns = 10 * (0.33 + 0.1) + 20 + 0.07 + 0.0058 + 14;  // 38.3758
  double total_ns = pass_ns + 0.07;  // lambda0 summation tail, SOA latency is 0
  CHECK(rep.total_latency / units::kNs == Approx(total_ns).epsilon(1e-12));
  CHECK(rep.total_passes == 2);
  CHECK(rep.total_macs == 15);
  CHECK(rep.total_ops == 30);
  // Streams: 15 weights + 3 bias, 5 activations in, 3 outputs, 16 bits each.
  CHECK(rep.total_bits == 16 * (18 + 5 + 3));

  // W array: 2*6 load + 2 activation DACs; U array: 2*9 + 3; one bias DAC.
  double pass_s = pass_ns * units::kNs;
  double dac = (14 + 21 + 1) * 40e-3 * 0.33e-9;
  double mem = (12 + 18) * 0.07e-6 * 0.1e-9;
  double eo = 15 * (4e-6 / 1e-9) * (2.5e-9 / 4.0) * pass_s;
  double pd = (3 + 3 + 3) * 2.8e-3 * 5.8e-12;
  double laser = (3 + 3 + 1) * 1.3e-3 * 0.07e-9;
  double adc = 3 * 62e-3 * 14e-9;
  double stat = 1.3e-3 * 2 * (40 * 16 + 1) * rep.total_latency;

  CHECK(rep.energy_breakdown[kEnergyDac] == Approx(dac).epsilon(1e-12));
  CHECK(rep.energy_breakdown[kEnergyMemristor] == Approx(mem).epsilon(1e-12));
  CHECK(rep.energy_breakdown[kEnergyEoTuning] == Approx(eo).epsilon(1e-12));
  CHECK(rep.energy_breakdown[kEnergyPd] == Approx(pd).epsilon(1e-12));
  CHECK(rep.energy_breakdown[kEnergyLaser] == Approx(laser).epsilon(1e-12));
  CHECK(rep.energy_breakdown[kEnergyAdc] == Approx(adc).epsilon(1e-12));
  CHECK(rep.energy_breakdown[kEnergyToTuning] == 0.0);
  CHECK(rep.energy_breakdown[kEnergyNonlinearity] == 0.0);
  CHECK(rep.energy_breakdown[kEnergyStatic] == Approx(stat).epsilon(1e-12));

  double expected_total = dac + mem + eo + pd + laser + adc + stat;
  CHECK(rep.total_energy == Approx(expected_total).epsilon(1e-12));

  auto [epb, gops] = epb_gops(rep);
  CHECK(epb == Approx(expected_total / 416.0).epsilon(1e-12));
  CHECK(gops == Approx(30.0 / total_ns).epsilon(1e-12));
}

TEST_CASE("resident weights load once, streamed weights load every step") {
  DeviceParams p;
  LayerSpec lstm = layer(LayerKind::kLstm, 2, 3, 1);

  // 8 pass-groups (4 gates x 2 arrays, 1 pass each); 4 per array.
  AcceleratorConfig tight = config(15, 15, 40, 1);   // 4 > 1: stream each step
  AcceleratorConfig roomy = config(15, 15, 40, 5);   // 4 <= 5: resident

  SimReport t1 = simulate(single(lstm), tight, p);
  SimReport t2 = simulate(single(layer(LayerKind::kLstm, 2, 3, 2)), tight, p);
  // Streaming repeats the identical schedule every timestep.
  CHECK(t2.total_latency == Approx(2.0 * t1.total_latency).epsilon(1e-12));
  CHECK(t2.energy_breakdown[kEnergyDac] ==
        Approx(2.0 * t1.energy_breakdown[kEnergyDac]).epsilon(1e-12));
  CHECK(t2.energy_breakdown[kEnergyMemristor] ==
        Approx(2.0 * t1.energy_breakdown[kEnergyMemristor]).epsilon(1e-12));

  SimReport r1 = simulate(single(lstm), roomy, p);
  SimReport r2 = simulate(single(layer(LayerKind::kLstm, 2, 3, 2)), roomy, p);
  // Resident weights: the second step re-streams activations only.
  CHECK(r2.energy_breakdown[kEnergyDac] < 2.0 * r1.energy_breakdown[kEnergyDac]);
  CHECK(r2.energy_breakdown[kEnergyMemristor] ==
        Approx(r1.energy_breakdown[kEnergyMemristor]).epsilon(1e-12));

  // Steady state is affine in T: constant per-step increments after t=0.
  SimReport r3 = simulate(single(layer(LayerKind::kLstm, 2, 3, 3)), roomy, p);
  CHECK(r3.total_latency - r2.total_latency ==
        Approx(r2.total_latency - r1.total_latency).epsilon(1e-9));
  CHECK(r3.total_energy - r2.total_energy ==
        Approx(r2.total_energy - r1.total_energy).epsilon(1e-9));
  CHECK(r3.total_bits - r2.total_bits == r2.total_bits - r1.total_bits);
}

TEST_CASE("FC layers map as a single matrix") {
  AcceleratorConfig cfg = config(15, 15, 40, 1);
  DeviceParams p;
  LayerSpec fc = layer(LayerKind::kFullyConnected, 16, 4);
  SimReport rep = simulate(single(fc), cfg, p);
  CHECK(rep.total_passes == 1);
  CHECK(rep.total_macs == 64);
  CHECK(rep.total_ops == 128);
  // 64 weights + 4 bias, 16 activations, 4 outputs.
  CHECK(rep.total_bits == 16 * (68 + 16 + 4));
  double total_ns = 34.5058 + 0.07;  // no SOA stage without an activation
  CHECK(rep.total_latency / units::kNs == Approx(total_ns).epsilon(1e-12));
}

TEST_CASE("the resolution constraint gates the vector granularity") {
  DeviceParams p;
  ModelSpec m = single(layer(LayerKind::kSimpleRnn, 2, 3, 1));

  CHECK_NOTHROW(simulate(m, config(15, 15, 40, 1), p));
  CHECK_THROWS_WITH_AS(simulate(m, config(16, 15, 40, 1), p),
                       "v exceeds 16-bit bank limit (15)", ConstraintError);

  // A sharper resonance relaxes the limit.
  ResolutionContext sharp;
  sharp.q_factor = 10000.0;
  CHECK(sharp.bank_limit() > 15);
  CHECK_NOTHROW(simulate(m, config(20, 15, 40, 1), p, sharp));
}

TEST_CASE("degenerate runs are rejected") {
  DeviceParams p;
  ModelSpec empty;
  empty.name = "empty";
  CHECK_THROWS_AS(simulate(empty, config(15, 15, 40, 1), p), std::domain_error);

  SimReport blank;
  CHECK_THROWS_AS(epb_gops(blank), std::domain_error);
  blank.total_bits = 16;
  CHECK_THROWS_AS(epb_gops(blank), std::domain_error);  // still no elapsed time
}

TEST_CASE("energy components always sum to the total") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dim(1, 20), steps(1, 6), pick(0, 3);
  std::uniform_int_distribution<int> vpick(1, 15), npick(1, 20), mpick(1, 64), wpick(1, 12);
  const LayerKind kinds[] = {LayerKind::kSimpleRnn, LayerKind::kGru, LayerKind::kLstm,
                             LayerKind::kFullyConnected};
  DeviceParams p;

  for (int run = 0; run < 25; ++run) {
    LayerKind kind = kinds[pick(rng)];
    LayerSpec l = layer(kind, dim(rng), dim(rng),
                        kind == LayerKind::kFullyConnected ? 1 : steps(rng));
    AcceleratorConfig cfg = config(vpick(rng), npick(rng), mpick(rng), wpick(rng));
    SimReport rep = simulate(single(l), cfg, p);

    double sum = 0.0;
    for (double e : rep.energy_breakdown) sum += e;
    CHECK(rep.total_energy == Approx(sum).epsilon(1e-12));

    double layer_sum = 0.0;
    for (const auto& lr : rep.per_layer) layer_sum += total_energy(lr.energy);
    CHECK(rep.total_energy == Approx(layer_sum).epsilon(1e-9));
  }
}
