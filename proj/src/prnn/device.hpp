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

// Microring resonator geometry, wavelength-division bank feasibility, and
// per-device latency/power figures for the photonic datapath. Lengths are
// meters, times seconds, powers watts unless a name says otherwise.

#ifndef PRNN_DEVICE_HPP_
#define PRNN_DEVICE_HPP_

#include <string>
#include <vector>

#include "prnn/units.hpp"

namespace prnn {

inline constexpr double kDefaultCenterWavelength = 1550e-9;
inline constexpr double kDefaultChannelSpacing = 2.5e-9;
inline constexpr double kDefaultQFactor = 5000.0;
inline constexpr double kDefaultGroupIndex = 3.96;
inline constexpr int kMaxResolutionBits = 32;

// One all-pass/add-drop microring. `resonance_order` is the integer mode
// number m in  lambda = 2*pi*R*n_eff / m.
struct MRDesign {
  double radius = 5e-6;
  double q_factor = kDefaultQFactor;
  double kappa = 0.0;             // self-coupling coefficient, in (0,1)
  double group_index = kDefaultGroupIndex;
  double effective_index = 2.4;
  int resonance_order = 49;

  double resonant_wavelength() const;
  double free_spectral_range() const;  // evaluated at the resonant wavelength
  void validate() const;
};

// Radius that realizes a target Q at the given self-coupling coefficient:
//   R = Q * lambda * kappa^2 / (2 * pi^2 * n_g * sqrt(1 - kappa^2))
double radius_for_q(double q_factor, double wavelength, double kappa, double group_index);

// Inverse of radius_for_q in kappa, solved numerically on (0,1).
double kappa_for_radius(double radius, double q_factor, double wavelength, double group_index);

// Fully populated design for a ring of the given radius and Q: kappa from
// the Q relation, resonance order chosen to land nearest target_wavelength.
MRDesign design_ring(double radius, double q_factor,
                     double target_wavelength = kDefaultCenterWavelength,
                     double group_index = kDefaultGroupIndex, double effective_index = 2.4);

double free_spectral_range(double wavelength, double group_index, double radius);

// Lorentzian drop-port transmission of a ring at detuning `delta` (meters)
// from its resonance.
double drop_transmission(double detuning, double q_factor, double wavelength);

// A bank of equally spaced resonances sharing one waveguide. The spacing
// grid must fit inside one FSR or channels alias onto each other.
struct MRBankConfig {
  int mr_count = 1;
  double channel_spacing = kDefaultChannelSpacing;
  double center_wavelength = kDefaultCenterWavelength;
  double q_factor = kDefaultQFactor;
  double fsr = 0.0;

  void validate() const;
};

// Bank used for resolution analysis only: its FSR is taken as the span the
// grid itself occupies (mr_count * spacing), so any channel count can be
// screened on the same footing.
MRBankConfig analysis_bank(int mr_count, double channel_spacing = kDefaultChannelSpacing,
                           double q_factor = kDefaultQFactor,
                           double center_wavelength = kDefaultCenterWavelength);

// Heterodyne crosstalk seen by the worst-placed channel: the summed drop
// response of every other ring in the bank at that channel's wavelength.
double worst_case_crosstalk(const MRBankConfig& bank);

// Calibration constant chosen so a 15-ring bank at the default operating
// point resolves exactly 16 bits and a 16-ring bank drops to 15.
double default_calibration_k();

// floor(log2(k / worst_case_crosstalk)), clamped to [0, 32]. A single ring
// has no neighbours and saturates the clamp.
int achievable_resolution_bits(const MRBankConfig& bank, double calibration_k = 0.0);

// Largest channel count that still resolves >= target_bits at the given
// operating point. Returns 0 if even one ring falls short.
int bank_limit_for_bits(int target_bits, double q_factor = kDefaultQFactor,
                        double channel_spacing = kDefaultChannelSpacing,
                        double center_wavelength = kDefaultCenterWavelength,
                        double calibration_k = 0.0);

enum class TuningMechanism { kElectroOptic, kThermoOptic, kHybrid };

struct TuningCost {
  TuningMechanism mechanism = TuningMechanism::kElectroOptic;
  double latency = 0.0;  // seconds to settle
  double energy = 0.0;   // joules over max(hold, settle)
};

struct DeviceParams {
  // Defaults are written as magnitude * unit so they are bit-identical to
  // what parse_quantity produces for the same text, which keeps the JSON
  // writer's output in round numbers.
  //
  // Resonance tuning. EO power scales with shift distance, TO power with
  // the shifted fraction of one FSR; the thermal eigenmode engineering
  // discount scales TO power down.
  double eo_latency = 20 * units::kNs;
  double eo_power_per_shift = 4 * (units::kUw / units::kNm);  // W per meter of shift
  double eo_max_shift = 1.25 * units::kNm;                    // hybrid switchover point
  double eo_avg_shift = 0.0;                                  // 0 means spacing/4 at sim time
  double to_latency = 4 * units::kUs;
  double to_power_per_fsr = 27.5 * units::kMw;
  double ted_discount = 1.0;

  double vcsel_latency = 0.07 * units::kNs;
  double vcsel_power = 1.3 * units::kMw;
  double pd_latency = 5.8 * units::kPs;
  double pd_power = 2.8 * units::kMw;
  double pd_sensitivity_dbm = -20.0;
  double dac_latency = 0.33 * units::kNs;
  double dac_power = 40 * units::kMw;
  double adc_latency = 14 * units::kNs;
  double adc_power = 62 * units::kMw;
  double memristor_latency = 0.1 * units::kNs;
  double memristor_power = 0.07 * units::kUw;
  // Semiconductor optical amplifiers implementing sigmoid/tanh. Left at
  // zero until a measured figure is plugged in.
  double soa_latency = 0.0;
  double soa_power = 0.0;

  double loss_mr_through_db = 0.02;
  double loss_waveguide_db_per_m = 2.0 / units::kCm;  // 2 dB/cm
  double loss_splitter_excess_db = 0.5;

  void validate() const;
};

// Cost of moving one ring's resonance by `shift` and holding it there for
// `hold`. A zero shift is free. kHybrid picks EO for shifts within
// eo_max_shift and TO beyond; `fsr` scales the TO power law.
TuningCost tuning_cost(double shift, double hold, const DeviceParams& params,
                       TuningMechanism mechanism = TuningMechanism::kHybrid,
                       double fsr = 0.0);

// Launch power needed at the laser so the photodetector still sees its
// sensitivity floor after the listed dB losses and an n-way split.
double required_laser_power_dbm(const DeviceParams& params, const std::vector<double>& losses_db,
                                int n_way_split = 1);

// One row of a coupling-coefficient characterization table.
struct KappaTableRow {
  double mr_width = 0.0;   // meters
  double radius = 0.0;     // meters
  double kappa = 0.0;
  double group_index = 0.0;
};

// Row whose (kappa, group_index) pair best reproduces `radius` through
// radius_for_q, i.e. minimizes |radius_for_q(...) - radius|.
const KappaTableRow& best_kappa_row(const std::vector<KappaTableRow>& table, double radius,
                                    double q_factor, double wavelength);

}  // namespace prnn

#endif  // PRNN_DEVICE_HPP_
