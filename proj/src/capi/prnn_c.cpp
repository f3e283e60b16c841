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

#include "prnn/prnn.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "prnn/arch.hpp"
#include "prnn/compare.hpp"
#include "prnn/device.hpp"
#include "prnn/dse.hpp"
#include "prnn/errors.hpp"
#include "prnn/params_io.hpp"
#include "prnn/report_io.hpp"
#include "prnn/units.hpp"
#include "prnn/workload.hpp"

/* Opaque handle bodies. Each wraps exactly one core object. */
struct prnn_params {
  prnn::DeviceParams value;
};
struct prnn_kappa_table {
  std::vector<prnn::KappaTableRow> rows;
};
struct prnn_model {
  prnn::ModelSpec value;
};
struct prnn_report {
  prnn::SimReport value;
};
struct prnn_sweep {
  prnn::SweepSpec value;
};
struct prnn_dse_result {
  std::vector<prnn::DsePoint> points;
};
struct prnn_baselines {
  std::vector<prnn::BaselineRecord> records;
};
struct prnn_compare_result {
  prnn::CompareResult value;
};

namespace {

thread_local std::string g_last_error;

prnn_status fail(prnn_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

prnn_status usage(const char* message) { return fail(PRNN_ERROR_USAGE, message); }

template <typename Fn>
prnn_status guarded(Fn&& fn) {
  try {
    fn();
    return PRNN_OK;
  } catch (const prnn::ParseError& e) {
    return fail(PRNN_ERROR_PARSE, e.what());
  } catch (const prnn::ConstraintError& e) {
    return fail(PRNN_ERROR_CONSTRAINT, e.what());
  } catch (const std::domain_error& e) {
    return fail(PRNN_ERROR_CONSTRAINT, e.what());
  } catch (const std::exception& e) {
    return fail(PRNN_ERROR_RUNTIME, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

prnn_status string_out(const std::string& s, char** out) {
  *out = copy_string(s);
  if (!*out) return fail(PRNN_ERROR_RUNTIME, "out of memory");
  return PRNN_OK;
}

prnn::ResolutionContext to_context(const prnn_resolution_context* ctx) {
  prnn::ResolutionContext out;
  if (!ctx) return out;
  out.q_factor = ctx->q_factor;
  out.channel_spacing = ctx->channel_spacing_nm * prnn::units::kNm;
  out.center_wavelength = ctx->center_wavelength_nm * prnn::units::kNm;
  out.calibration_k = ctx->calibration_k > 0.0 ? ctx->calibration_k : 0.0;
  return out;
}

prnn::AcceleratorConfig to_config(const prnn_config* config) {
  prnn::AcceleratorConfig out;
  out.vector_granularity = config->v;
  out.vdus_per_mac = config->n;
  out.mac_units = config->m;
  out.waveguides_per_vdu = config->nwg;
  return out;
}

}  // namespace

extern "C" {

const char* prnn_last_error(void) { return g_last_error.c_str(); }

void prnn_string_free(char* s) { std::free(s); }

/* ------------------------------------------------------------------ */

prnn_status prnn_params_create_default(prnn_params** out) {
  if (!out) return usage("null output pointer");
  return guarded([&] { *out = new prnn_params{prnn::DeviceParams{}}; });
}

prnn_status prnn_params_load(const char* path, prnn_params** out) {
  if (!path || !out) return usage("null path or output pointer");
  return guarded([&] { *out = new prnn_params{prnn::load_device_params(path)}; });
}

prnn_status prnn_params_save(const prnn_params* params, const char* path) {
  if (!params || !path) return usage("null params or path");
  return guarded([&] { prnn::save_device_params(params->value, path); });
}

void prnn_params_free(prnn_params* params) { delete params; }

/* ------------------------------------------------------------------ */

prnn_status prnn_resonant_wavelength_nm(double radius_um, double n_eff, int order,
                                        double* out_nm) {
  if (!out_nm) return usage("null output pointer");
  return guarded([&] {
    prnn::MRDesign d;
    d.radius = radius_um * prnn::units::kUm;
    d.effective_index = n_eff;
    d.resonance_order = order;
    d.kappa = 0.5;  // irrelevant to the resonance equation, must be valid
    d.validate();
    *out_nm = d.resonant_wavelength() / prnn::units::kNm;
  });
}

prnn_status prnn_radius_for_q_um(double q_factor, double wavelength_nm, double kappa,
                                 double n_g, double* out_um) {
  if (!out_um) return usage("null output pointer");
  return guarded([&] {
    *out_um = prnn::radius_for_q(q_factor, wavelength_nm * prnn::units::kNm, kappa, n_g) /
              prnn::units::kUm;
  });
}

prnn_status prnn_kappa_for_radius(double radius_um, double q_factor, double wavelength_nm,
                                  double n_g, double* out_kappa) {
  if (!out_kappa) return usage("null output pointer");
  return guarded([&] {
    *out_kappa = prnn::kappa_for_radius(radius_um * prnn::units::kUm, q_factor,
                                        wavelength_nm * prnn::units::kNm, n_g);
  });
}

prnn_status prnn_fsr_nm(double wavelength_nm, double n_g, double radius_um, double* out_nm) {
  if (!out_nm) return usage("null output pointer");
  return guarded([&] {
    *out_nm = prnn::free_spectral_range(wavelength_nm * prnn::units::kNm, n_g,
                                        radius_um * prnn::units::kUm) /
              prnn::units::kNm;
  });
}

prnn_status prnn_design_ring(double radius_um, double q_factor, double target_wavelength_nm,
                             double n_g, double n_eff, double* out_kappa, int* out_order,
                             double* out_resonant_nm, double* out_fsr_nm) {
  return guarded([&] {
    prnn::MRDesign design =
        prnn::design_ring(radius_um * prnn::units::kUm, q_factor,
                          target_wavelength_nm * prnn::units::kNm, n_g, n_eff);
    if (out_kappa) *out_kappa = design.kappa;
    if (out_order) *out_order = design.resonance_order;
    if (out_resonant_nm) *out_resonant_nm = design.resonant_wavelength() / prnn::units::kNm;
    if (out_fsr_nm) *out_fsr_nm = design.free_spectral_range() / prnn::units::kNm;
  });
}

prnn_status prnn_bank_crosstalk(int mr_count, double cs_nm, double q_factor,
                                double wavelength_nm, double* out_crosstalk) {
  if (!out_crosstalk) return usage("null output pointer");
  return guarded([&] {
    auto bank = prnn::analysis_bank(mr_count, cs_nm * prnn::units::kNm, q_factor,
                                    wavelength_nm * prnn::units::kNm);
    *out_crosstalk = prnn::worst_case_crosstalk(bank);
  });
}

prnn_status prnn_bank_resolution_bits(int mr_count, double cs_nm, double q_factor,
                                      double wavelength_nm, double calibration_k,
                                      int* out_bits) {
  if (!out_bits) return usage("null output pointer");
  return guarded([&] {
    auto bank = prnn::analysis_bank(mr_count, cs_nm * prnn::units::kNm, q_factor,
                                    wavelength_nm * prnn::units::kNm);
    *out_bits =
        prnn::achievable_resolution_bits(bank, calibration_k > 0.0 ? calibration_k : 0.0);
  });
}

prnn_status prnn_bank_limit_16bit(double q_factor, double cs_nm, double wavelength_nm,
                                  double calibration_k, int* out_limit) {
  if (!out_limit) return usage("null output pointer");
  return guarded([&] {
    *out_limit =
        prnn::bank_limit_for_bits(16, q_factor, cs_nm * prnn::units::kNm,
                                  wavelength_nm * prnn::units::kNm,
                                  calibration_k > 0.0 ? calibration_k : 0.0);
  });
}

prnn_status prnn_default_calibration_k(double* out_k) {
  if (!out_k) return usage("null output pointer");
  return guarded([&] { *out_k = prnn::default_calibration_k(); });
}

prnn_status prnn_tuning_cost(double shift_nm, double hold_ns, const prnn_params* params,
                             prnn_tuning_mechanism wanted, double fsr_nm,
                             double* out_energy_pj, double* out_latency_ns,
                             prnn_tuning_mechanism* out_used) {
  if (!params || !out_energy_pj || !out_latency_ns) return usage("null argument");
  return guarded([&] {
    prnn::TuningMechanism mech = prnn::TuningMechanism::kHybrid;
    if (wanted == PRNN_TUNING_EO) mech = prnn::TuningMechanism::kElectroOptic;
    if (wanted == PRNN_TUNING_TO) mech = prnn::TuningMechanism::kThermoOptic;
    prnn::TuningCost cost = prnn::tuning_cost(
        shift_nm * prnn::units::kNm, hold_ns * prnn::units::kNs, params->value, mech,
        fsr_nm > 0.0 ? fsr_nm * prnn::units::kNm : 0.0);
    *out_energy_pj = cost.energy / prnn::units::kPj;
    *out_latency_ns = cost.latency / prnn::units::kNs;
    if (out_used)
      *out_used = cost.mechanism == prnn::TuningMechanism::kElectroOptic ? PRNN_TUNING_EO
                                                                         : PRNN_TUNING_TO;
  });
}

prnn_status prnn_required_laser_power_dbm(const prnn_params* params, const double* losses_db,
                                          size_t n_losses, int n_way_split, double* out_dbm) {
  if (!params || !out_dbm || (n_losses > 0 && !losses_db)) return usage("null argument");
  return guarded([&] {
    std::vector<double> losses(losses_db, losses_db + n_losses);
    *out_dbm = prnn::required_laser_power_dbm(params->value, losses, n_way_split);
  });
}

/* ------------------------------------------------------------------ */

prnn_status prnn_kappa_table_load(const char* path, prnn_kappa_table** out) {
  if (!path || !out) return usage("null path or output pointer");
  return guarded([&] { *out = new prnn_kappa_table{prnn::load_kappa_table(path)}; });
}

void prnn_kappa_table_free(prnn_kappa_table* table) { delete table; }

prnn_status prnn_kappa_table_size(const prnn_kappa_table* table, size_t* out) {
  if (!table || !out) return usage("null argument");
  *out = table->rows.size();
  return PRNN_OK;
}

prnn_status prnn_kappa_table_best_row(const prnn_kappa_table* table, double radius_um,
                                      double q_factor, double wavelength_nm, double* out_w_nm,
                                      double* out_radius_um, double* out_kappa,
                                      double* out_ng) {
  if (!table) return usage("null table");
  return guarded([&] {
    const prnn::KappaTableRow& row = prnn::best_kappa_row(
        table->rows, radius_um * prnn::units::kUm, q_factor, wavelength_nm * prnn::units::kNm);
    if (out_w_nm) *out_w_nm = row.mr_width / prnn::units::kNm;
    if (out_radius_um) *out_radius_um = row.radius / prnn::units::kUm;
    if (out_kappa) *out_kappa = row.kappa;
    if (out_ng) *out_ng = row.group_index;
  });
}

/* ------------------------------------------------------------------ */

prnn_status prnn_model_load(const char* path, prnn_model** out) {
  if (!path || !out) return usage("null path or output pointer");
  return guarded([&] { *out = new prnn_model{prnn::load_model(path)}; });
}

void prnn_model_free(prnn_model* model) { delete model; }

prnn_status prnn_model_name(const prnn_model* model, const char** out_name) {
  if (!model || !out_name) return usage("null argument");
  *out_name = model->value.name.c_str();
  return PRNN_OK;
}

prnn_status prnn_model_layer_count(const prnn_model* model, size_t* out) {
  if (!model || !out) return usage("null argument");
  *out = model->value.layers.size();
  return PRNN_OK;
}

prnn_status prnn_model_param_count(const prnn_model* model, long long* out) {
  if (!model || !out) return usage("null argument");
  return guarded([&] { *out = prnn::param_count(model->value); });
}

prnn_status prnn_model_op_counts(const prnn_model* model, long long* out_macs,
                                 long long* out_elementwise) {
  if (!model || !out_macs || !out_elementwise) return usage("null argument");
  return guarded([&] {
    prnn::OpCounts counts = prnn::model_op_counts(model->value);
    *out_macs = counts.macs;
    *out_elementwise = counts.elementwise;
  });
}

/* ------------------------------------------------------------------ */

void prnn_resolution_context_default(prnn_resolution_context* out) {
  if (!out) return;
  prnn::ResolutionContext ctx;
  out->q_factor = ctx.q_factor;
  out->channel_spacing_nm = ctx.channel_spacing / prnn::units::kNm;
  out->center_wavelength_nm = ctx.center_wavelength / prnn::units::kNm;
  out->calibration_k = 0.0;
}

prnn_status prnn_config_dacs_per_vdu(const prnn_config* config, int* out) {
  if (!config || !out) return usage("null argument");
  return guarded([&] {
    prnn::AcceleratorConfig cfg = to_config(config);
    cfg.validate();
    *out = cfg.dacs_per_vdu();
  });
}

prnn_status prnn_simulate(const prnn_model* model, const prnn_config* config,
                          const prnn_params* params, const prnn_resolution_context* ctx,
                          prnn_report** out) {
  if (!model || !config || !out) return usage("null argument");
  return guarded([&] {
    prnn::DeviceParams defaults;
    const prnn::DeviceParams& device = params ? params->value : defaults;
    prnn::SimReport report =
        prnn::simulate(model->value, to_config(config), device, to_context(ctx));
    *out = new prnn_report{std::move(report)};
  });
}

void prnn_report_free(prnn_report* report) { delete report; }

prnn_status prnn_report_total_latency_ns(const prnn_report* report, double* out) {
  if (!report || !out) return usage("null argument");
  *out = report->value.total_latency / prnn::units::kNs;
  return PRNN_OK;
}

prnn_status prnn_report_total_energy_pj(const prnn_report* report, double* out) {
  if (!report || !out) return usage("null argument");
  *out = report->value.total_energy / prnn::units::kPj;
  return PRNN_OK;
}

prnn_status prnn_report_energy_component_pj(const prnn_report* report, const char* component,
                                            double* out) {
  if (!report || !component || !out) return usage("null argument");
  for (int c = 0; c < prnn::kEnergyComponentCount; ++c) {
    if (std::strcmp(component,
                    prnn::energy_component_name(static_cast<prnn::EnergyComponent>(c))) == 0) {
      *out = report->value.energy_breakdown[c] / prnn::units::kPj;
      return PRNN_OK;
    }
  }
  return fail(PRNN_ERROR_USAGE, std::string("unknown energy component \"") + component + "\"");
}

prnn_status prnn_report_totals(const prnn_report* report, long long* out_ops,
                               long long* out_bits, long long* out_macs) {
  if (!report) return usage("null report");
  if (out_ops) *out_ops = report->value.total_ops;
  if (out_bits) *out_bits = report->value.total_bits;
  if (out_macs) *out_macs = report->value.total_macs;
  return PRNN_OK;
}

prnn_status prnn_report_epb_gops(const prnn_report* report, double* out_epb_pj_per_bit,
                                 double* out_gops) {
  if (!report || !out_epb_pj_per_bit || !out_gops) return usage("null argument");
  return guarded([&] {
    auto [epb, gops] = prnn::epb_gops(report->value);
    *out_epb_pj_per_bit = epb / prnn::units::kPj;
    *out_gops = gops;
  });
}

prnn_status prnn_report_write_csv(const prnn_report* report, const char* path) {
  if (!report || !path) return usage("null argument");
  return guarded([&] { prnn::write_report_csv(report->value, path); });
}

prnn_status prnn_report_summary_alloc(const prnn_report* report, char** out) {
  if (!report || !out) return usage("null argument");
  prnn_status status = PRNN_OK;
  prnn_status inner = guarded([&] {
    std::string text = prnn::report_summary(report->value);
    status = string_out(text, out);
  });
  return inner != PRNN_OK ? inner : status;
}

/* ------------------------------------------------------------------ */

prnn_status prnn_sweep_load(const char* path, prnn_sweep** out) {
  if (!path || !out) return usage("null path or output pointer");
  return guarded([&] { *out = new prnn_sweep{prnn::load_sweep(path)}; });
}

void prnn_sweep_free(prnn_sweep* sweep) { delete sweep; }

prnn_status prnn_sweep_set_params(prnn_sweep* sweep, const prnn_params* params) {
  if (!sweep || !params) return usage("null argument");
  sweep->value.params = params->value;
  return PRNN_OK;
}

prnn_status prnn_dse_run(const prnn_sweep* sweep, prnn_dse_result** out) {
  if (!sweep || !out) return usage("null argument");
  return guarded([&] { *out = new prnn_dse_result{prnn::evaluate(sweep->value)}; });
}

void prnn_dse_result_free(prnn_dse_result* result) { delete result; }

prnn_status prnn_dse_point_count(const prnn_dse_result* result, size_t* out) {
  if (!result || !out) return usage("null argument");
  *out = result->points.size();
  return PRNN_OK;
}

prnn_status prnn_dse_point(const prnn_dse_result* result, size_t index,
                           prnn_config* out_config, int* out_feasible,
                           double* out_epb_pj_per_bit, double* out_gops, double* out_score) {
  if (!result) return usage("null result");
  if (index >= result->points.size()) return usage("point index out of range");
  const prnn::DsePoint& p = result->points[index];
  if (out_config) {
    out_config->v = p.config.vector_granularity;
    out_config->n = p.config.vdus_per_mac;
    out_config->m = p.config.mac_units;
    out_config->nwg = p.config.waveguides_per_vdu;
  }
  if (out_feasible) *out_feasible = p.feasible ? 1 : 0;
  if (out_epb_pj_per_bit) *out_epb_pj_per_bit = p.mean_epb / prnn::units::kPj;
  if (out_gops) *out_gops = p.mean_gops;
  if (out_score) *out_score = p.score / prnn::units::kPj;
  return PRNN_OK;
}

prnn_status prnn_dse_best_index(const prnn_dse_result* result, size_t* out_index) {
  if (!result || !out_index) return usage("null argument");
  return guarded([&] {
    const prnn::DsePoint& best = prnn::best_config(result->points);
    *out_index = static_cast<size_t>(&best - result->points.data());
  });
}

prnn_status prnn_dse_results_csv_alloc(const prnn_dse_result* result, char** out) {
  if (!result || !out) return usage("null argument");
  return string_out(prnn::dse_results_csv(result->points), out);
}

prnn_status prnn_dse_scatter_csv_alloc(const prnn_dse_result* result, char** out) {
  if (!result || !out) return usage("null argument");
  return string_out(prnn::dse_scatter_csv(result->points), out);
}

prnn_status prnn_dse_scatter_svg_alloc(const prnn_dse_result* result, char** out) {
  if (!result || !out) return usage("null argument");
  return string_out(prnn::dse_scatter_svg(result->points), out);
}

/* ------------------------------------------------------------------ */

prnn_status prnn_baselines_load(const char* path, prnn_baselines** out) {
  if (!path || !out) return usage("null path or output pointer");
  return guarded([&] { *out = new prnn_baselines{prnn::load_baselines(path)}; });
}

void prnn_baselines_free(prnn_baselines* baselines) { delete baselines; }

prnn_status prnn_compare_run(const prnn_baselines* baselines, const char* const* tags,
                             const char* const* report_paths, size_t n_reports,
                             prnn_compare_result** out) {
  if (!baselines || !out || n_reports == 0 || !tags || !report_paths)
    return usage("null argument or empty report list");
  return guarded([&] {
    std::vector<prnn::ReportEntry> reports;
    for (size_t i = 0; i < n_reports; ++i) {
      if (!tags[i] || !report_paths[i]) throw prnn::ParseError("null report tag or path");
      prnn::ReportEntry entry;
      entry.model_tag = tags[i];
      entry.kpis = prnn::read_report_kpis(report_paths[i]);
      reports.push_back(std::move(entry));
    }
    *out = new prnn_compare_result{prnn::compare_reports(baselines->records, reports)};
  });
}

void prnn_compare_result_free(prnn_compare_result* result) { delete result; }

prnn_status prnn_compare_csv_alloc(const prnn_compare_result* result, char** out) {
  if (!result || !out) return usage("null argument");
  return string_out(prnn::compare_csv(result->value), out);
}

prnn_status prnn_compare_epb_svg_alloc(const prnn_compare_result* result, char** out) {
  if (!result || !out) return usage("null argument");
  return guarded([&] {
    std::string svg = prnn::compare_epb_svg(result->value);
    if (string_out(svg, out) != PRNN_OK) throw std::bad_alloc();
  });
}

prnn_status prnn_compare_gops_svg_alloc(const prnn_compare_result* result, char** out) {
  if (!result || !out) return usage("null argument");
  return guarded([&] {
    std::string svg = prnn::compare_gops_svg(result->value);
    if (string_out(svg, out) != PRNN_OK) throw std::bad_alloc();
  });
}

prnn_status prnn_compare_skipped_count(const prnn_compare_result* result, size_t* out) {
  if (!result || !out) return usage("null argument");
  *out = result->value.skipped.size();
  return PRNN_OK;
}

prnn_status prnn_compare_skipped_alloc(const prnn_compare_result* result, char** out) {
  if (!result || !out) return usage("null argument");
  std::string joined;
  for (const auto& rec : result->value.skipped) {
    if (!joined.empty()) joined += ",";
    joined += rec.name + ":" + rec.model_tag;
  }
  return string_out(joined, out);
}

} /* extern "C" */
