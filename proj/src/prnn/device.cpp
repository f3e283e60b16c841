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

#include "prnn/device.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prnn/errors.hpp"

namespace prnn {

namespace {

constexpr double kPi = std::numbers::pi;

// Hard stop for the bank-limit search; crosstalk flattens out long before
// this, so hitting it means the target is unreachable for any count.
constexpr int kMaxBankSearch = 4096;

void require(bool ok, const char* what) {
  if (!ok) throw ConstraintError(what);
}

}  // namespace

double MRDesign::resonant_wavelength() const {
  return 2.0 * kPi * radius * effective_index / resonance_order;
}

double MRDesign::free_spectral_range() const {
  return prnn::free_spectral_range(resonant_wavelength(), group_index, radius);
}

void MRDesign::validate() const {
  require(radius > 0.0, "MR radius must be positive");
  require(q_factor > 0.0, "MR quality factor must be positive");
  require(kappa > 0.0 && kappa < 1.0, "MR self-coupling coefficient must lie in (0,1)");
  require(group_index > 0.0, "MR group index must be positive");
  require(effective_index > 0.0, "MR effective index must be positive");
  require(resonance_order >= 1, "MR resonance order must be a positive integer");
}

double radius_for_q(double q_factor, double wavelength, double kappa, double group_index) {
  require(q_factor > 0.0, "quality factor must be positive");
  require(wavelength > 0.0, "wavelength must be positive");
  require(kappa > 0.0 && kappa < 1.0, "self-coupling coefficient must lie in (0,1)");
  require(group_index > 0.0, "group index must be positive");
  return q_factor * wavelength * kappa * kappa /
         (2.0 * kPi * kPi * group_index * std::sqrt(1.0 - kappa * kappa));
}

double kappa_for_radius(double radius, double q_factor, double wavelength, double group_index) {
  require(radius > 0.0, "radius must be positive");
  // radius_for_q is strictly increasing in kappa on (0,1), so bisect.
  double lo = 1e-9, hi = 1.0 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (radius_for_q(q_factor, wavelength, mid, group_index) < radius)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double free_spectral_range(double wavelength, double group_index, double radius) {
  require(wavelength > 0.0, "wavelength must be positive");
  require(group_index > 0.0, "group index must be positive");
  require(radius > 0.0, "radius must be positive");
  return wavelength * wavelength / (group_index * 2.0 * kPi * radius);
}

double drop_transmission(double detuning, double q_factor, double wavelength) {
  require(q_factor > 0.0, "quality factor must be positive");
  require(wavelength > 0.0, "wavelength must be positive");
  double x = 2.0 * q_factor * detuning / wavelength;
  return 1.0 / (1.0 + x * x);
}

MRDesign design_ring(double radius, double q_factor, double target_wavelength,
                     double group_index, double effective_index) {
  MRDesign d;
  d.radius = radius;
  d.q_factor = q_factor;
  d.group_index = group_index;
  d.effective_index = effective_index;
  d.kappa = kappa_for_radius(radius, q_factor, target_wavelength, group_index);
  double order = 2.0 * kPi * radius * effective_index / target_wavelength;
  d.resonance_order = std::max(1, static_cast<int>(std::lround(order)));
  d.validate();
  return d;
}

void MRBankConfig::validate() const {
  require(mr_count >= 1, "MR bank needs at least one ring");
  require(channel_spacing > 0.0, "channel spacing must be positive");
  require(center_wavelength > 0.0, "center wavelength must be positive");
  require(q_factor > 0.0, "quality factor must be positive");
  require(fsr > 0.0, "free spectral range must be positive");
  require((mr_count - 1) * channel_spacing < fsr,
          "MR bank span exceeds one free spectral range");
}

MRBankConfig analysis_bank(int mr_count, double channel_spacing, double q_factor,
                           double center_wavelength) {
  MRBankConfig bank;
  bank.mr_count = mr_count;
  bank.channel_spacing = channel_spacing;
  bank.q_factor = q_factor;
  bank.center_wavelength = center_wavelength;
  bank.fsr = mr_count * channel_spacing;
  return bank;
}

double worst_case_crosstalk(const MRBankConfig& bank) {
  bank.validate();
  // The transmission falloff is strictly decreasing in detuning, so on a
  // uniform grid the aggregate peaks at the centre ring; only the two
  // central candidates can win. Keeping the ascending-j summation order
  // keeps the result bit-identical to a scan over every ring.
  double worst = 0.0;
  for (int i : {(bank.mr_count - 1) / 2, bank.mr_count / 2}) {
    double sum = 0.0;
    for (int j = 0; j < bank.mr_count; ++j) {
      if (j == i) continue;
      double detuning = std::abs(j - i) * bank.channel_spacing;
      sum += drop_transmission(detuning, bank.q_factor, bank.center_wavelength);
    }
    worst = std::max(worst, sum);
  }
  return worst;
}

double default_calibration_k() {
  // Pinned so that at Q=5000, 2.5nm spacing, 1550nm: 15 rings give 16 bits
  // and 16 rings give 15. Geometric mean keeps both integer boundaries well
  // away from floating point noise.
  static const double k = [] {
    double x15 = worst_case_crosstalk(analysis_bank(15));
    double x16 = worst_case_crosstalk(analysis_bank(16));
    return 65536.0 * std::sqrt(x15 * x16);
  }();
  return k;
}

int achievable_resolution_bits(const MRBankConfig& bank, double calibration_k) {
  bank.validate();
  double k = calibration_k > 0.0 ? calibration_k : default_calibration_k();
  double crosstalk = worst_case_crosstalk(bank);
  if (crosstalk <= 0.0) return kMaxResolutionBits;
  double bits = std::floor(std::log2(k / crosstalk));
  if (bits < 0.0) return 0;
  if (bits > kMaxResolutionBits) return kMaxResolutionBits;
  return static_cast<int>(bits);
}

int bank_limit_for_bits(int target_bits, double q_factor, double channel_spacing,
                        double center_wavelength, double calibration_k) {
  require(target_bits >= 0, "target resolution must be nonnegative");
  auto bits_at = [&](int n) {
    return achievable_resolution_bits(
        analysis_bank(n, channel_spacing, q_factor, center_wavelength), calibration_k);
  };
  if (bits_at(1) < target_bits) return 0;
  // Crosstalk grows with channel count, so resolution is nonincreasing and
  // the first failure bounds the limit.
  for (int n = 2; n <= kMaxBankSearch; ++n) {
    if (bits_at(n) < target_bits) return n - 1;
  }
  return kMaxBankSearch;
}

void DeviceParams::validate() const {
  require(eo_latency >= 0.0 && to_latency >= 0.0 && vcsel_latency >= 0.0 &&
              pd_latency >= 0.0 && dac_latency >= 0.0 && adc_latency >= 0.0 &&
              memristor_latency >= 0.0 && soa_latency >= 0.0,
          "device latencies must be nonnegative");
  require(eo_power_per_shift >= 0.0 && to_power_per_fsr >= 0.0 && vcsel_power >= 0.0 &&
              pd_power >= 0.0 && dac_power >= 0.0 && adc_power >= 0.0 &&
              memristor_power >= 0.0 && soa_power >= 0.0,
          "device powers must be nonnegative");
  require(eo_max_shift >= 0.0, "EO shift ceiling must be nonnegative");
  require(eo_avg_shift >= 0.0, "average EO shift must be nonnegative");
  require(ted_discount > 0.0 && ted_discount <= 1.0,
          "thermal eigenmode discount must lie in (0,1]");
  require(loss_mr_through_db >= 0.0 && loss_waveguide_db_per_m >= 0.0 &&
              loss_splitter_excess_db >= 0.0,
          "optical losses must be nonnegative");
}

TuningCost tuning_cost(double shift, double hold, const DeviceParams& params,
                       TuningMechanism mechanism, double fsr) {
  require(shift >= 0.0, "tuning shift must be nonnegative");
  require(hold >= 0.0, "tuning hold time must be nonnegative");
  params.validate();

  TuningCost cost;
  if (shift == 0.0) {
    cost.mechanism = TuningMechanism::kElectroOptic;
    return cost;
  }
  bool use_eo = mechanism == TuningMechanism::kElectroOptic ||
                (mechanism == TuningMechanism::kHybrid && shift <= params.eo_max_shift);
  if (use_eo) {
    cost.mechanism = TuningMechanism::kElectroOptic;
    cost.latency = params.eo_latency;
    double power = params.eo_power_per_shift * shift;
    cost.energy = power * std::max(hold, cost.latency);
  } else {
    cost.mechanism = TuningMechanism::kThermoOptic;
    double range = fsr > 0.0
                       ? fsr
                       : free_spectral_range(kDefaultCenterWavelength, kDefaultGroupIndex, 5e-6);
    cost.latency = params.to_latency;
    double power = params.to_power_per_fsr * (shift / range) * params.ted_discount;
    cost.energy = power * std::max(hold, cost.latency);
  }
  return cost;
}

double required_laser_power_dbm(const DeviceParams& params, const std::vector<double>& losses_db,
                                int n_way_split) {
  require(n_way_split >= 1, "split count must be at least 1");
  double total = params.pd_sensitivity_dbm;
  for (double loss : losses_db) {
    require(loss >= 0.0, "optical losses must be nonnegative");
    total += loss;
  }
  total += 10.0 * std::log10(static_cast<double>(n_way_split));
  if (n_way_split > 1) total += params.loss_splitter_excess_db;
  return total;
}

const KappaTableRow& best_kappa_row(const std::vector<KappaTableRow>& table, double radius,
                                    double q_factor, double wavelength) {
  require(!table.empty(), "coupling table is empty");
  const KappaTableRow* best = nullptr;
  double best_err = 0.0;
  for (const auto& row : table) {
    double predicted = radius_for_q(q_factor, wavelength, row.kappa, row.group_index);
    double err = std::abs(predicted - radius);
    if (!best || err < best_err) {
      best = &row;
      best_err = err;
    }
  }
  return *best;
}

}  // namespace prnn
