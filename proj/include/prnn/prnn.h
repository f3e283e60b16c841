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

/*
 * C interface to the photonic RNN accelerator models: microring device
 * analysis, workload simulation, design-space exploration, and baseline
 * comparison.
 *
 * Conventions:
 *  - Every fallible call returns a prnn_status; on anything but PRNN_OK the
 *    thread-local message from prnn_last_error() describes the failure.
 *  - Objects returned through ** out-params are owned by the caller and
 *    released with the matching *_free function.
 *  - Strings returned through char** are heap copies; release them with
 *    prnn_string_free.
 *  - Boundary units are written into the names (nm, um, ns, pJ, dBm).
 */

#ifndef PRNN_PRNN_H_
#define PRNN_PRNN_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PRNN_API __declspec(dllexport)
#else
#define PRNN_API __attribute__((visibility("default")))
#endif

typedef enum prnn_status {
  PRNN_OK = 0,
  PRNN_ERROR_USAGE = 1,      /* bad arguments to an API call */
  PRNN_ERROR_PARSE = 2,      /* malformed input file */
  PRNN_ERROR_CONSTRAINT = 3, /* valid input violating a design constraint */
  PRNN_ERROR_RUNTIME = 4     /* anything else */
} prnn_status;

/* Message for the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next failing call on the same thread. */
PRNN_API const char* prnn_last_error(void);

PRNN_API void prnn_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Device parameters (latency/power table plus loss budget)            */

typedef struct prnn_params prnn_params;

PRNN_API prnn_status prnn_params_create_default(prnn_params** out);
PRNN_API prnn_status prnn_params_load(const char* path, prnn_params** out);
PRNN_API prnn_status prnn_params_save(const prnn_params* params, const char* path);
PRNN_API void prnn_params_free(prnn_params* params);

/* ------------------------------------------------------------------ */
/* Microring device analysis                                           */

PRNN_API prnn_status prnn_resonant_wavelength_nm(double radius_um, double n_eff, int order,
                                                 double* out_nm);

PRNN_API prnn_status prnn_radius_for_q_um(double q_factor, double wavelength_nm, double kappa,
                                          double n_g, double* out_um);

PRNN_API prnn_status prnn_kappa_for_radius(double radius_um, double q_factor,
                                           double wavelength_nm, double n_g,
                                           double* out_kappa);

PRNN_API prnn_status prnn_fsr_nm(double wavelength_nm, double n_g, double radius_um,
                                 double* out_nm);

/* Complete ring design for a radius and Q: coupling coefficient from the Q
 * relation and the resonance order nearest target_wavelength_nm. Any output
 * pointer may be NULL. */
PRNN_API prnn_status prnn_design_ring(double radius_um, double q_factor,
                                      double target_wavelength_nm, double n_g, double n_eff,
                                      double* out_kappa, int* out_order,
                                      double* out_resonant_nm, double* out_fsr_nm);

PRNN_API prnn_status prnn_bank_crosstalk(int mr_count, double cs_nm, double q_factor,
                                         double wavelength_nm, double* out_crosstalk);

/* calibration_k <= 0 selects the built-in calibration. */
PRNN_API prnn_status prnn_bank_resolution_bits(int mr_count, double cs_nm, double q_factor,
                                               double wavelength_nm, double calibration_k,
                                               int* out_bits);

PRNN_API prnn_status prnn_bank_limit_16bit(double q_factor, double cs_nm, double wavelength_nm,
                                           double calibration_k, int* out_limit);

PRNN_API prnn_status prnn_default_calibration_k(double* out_k);

typedef enum prnn_tuning_mechanism {
  PRNN_TUNING_EO = 0,
  PRNN_TUNING_TO = 1,
  PRNN_TUNING_HYBRID = 2
} prnn_tuning_mechanism;

/* fsr_nm <= 0 selects the design-point free spectral range. */
PRNN_API prnn_status prnn_tuning_cost(double shift_nm, double hold_ns,
                                      const prnn_params* params, prnn_tuning_mechanism wanted,
                                      double fsr_nm, double* out_energy_pj,
                                      double* out_latency_ns,
                                      prnn_tuning_mechanism* out_used);

PRNN_API prnn_status prnn_required_laser_power_dbm(const prnn_params* params,
                                                   const double* losses_db, size_t n_losses,
                                                   int n_way_split, double* out_dbm);

/* Coupling characterization table (w_mr_nm,radius_um,kappa,n_g CSV). */
typedef struct prnn_kappa_table prnn_kappa_table;

PRNN_API prnn_status prnn_kappa_table_load(const char* path, prnn_kappa_table** out);
PRNN_API void prnn_kappa_table_free(prnn_kappa_table* table);
PRNN_API prnn_status prnn_kappa_table_size(const prnn_kappa_table* table, size_t* out);

/* Row whose (kappa, n_g) best reproduces radius_um at this Q. */
PRNN_API prnn_status prnn_kappa_table_best_row(const prnn_kappa_table* table, double radius_um,
                                               double q_factor, double wavelength_nm,
                                               double* out_w_nm, double* out_radius_um,
                                               double* out_kappa, double* out_ng);

/* ------------------------------------------------------------------ */
/* Workload models                                                     */

typedef struct prnn_model prnn_model;

PRNN_API prnn_status prnn_model_load(const char* path, prnn_model** out);
PRNN_API void prnn_model_free(prnn_model* model);
/* Pointer stays valid while the model lives. */
PRNN_API prnn_status prnn_model_name(const prnn_model* model, const char** out_name);
PRNN_API prnn_status prnn_model_layer_count(const prnn_model* model, size_t* out);
PRNN_API prnn_status prnn_model_param_count(const prnn_model* model, long long* out);
PRNN_API prnn_status prnn_model_op_counts(const prnn_model* model, long long* out_macs,
                                          long long* out_elementwise);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */

typedef struct prnn_config {
  int v;   /* vector granularity */
  int n;   /* VDUs per MAC unit */
  int m;   /* MAC units per array */
  int nwg; /* waveguides per VDU */
} prnn_config;

typedef struct prnn_resolution_context {
  double q_factor;
  double channel_spacing_nm;
  double center_wavelength_nm;
  double calibration_k; /* <= 0 selects the built-in calibration */
} prnn_resolution_context;

PRNN_API void prnn_resolution_context_default(prnn_resolution_context* out);

PRNN_API prnn_status prnn_config_dacs_per_vdu(const prnn_config* config, int* out);

typedef struct prnn_report prnn_report;

/* params may be NULL for the default device; ctx may be NULL for the
 * default operating point. */
PRNN_API prnn_status prnn_simulate(const prnn_model* model, const prnn_config* config,
                                   const prnn_params* params,
                                   const prnn_resolution_context* ctx, prnn_report** out);
PRNN_API void prnn_report_free(prnn_report* report);

PRNN_API prnn_status prnn_report_total_latency_ns(const prnn_report* report, double* out);
PRNN_API prnn_status prnn_report_total_energy_pj(const prnn_report* report, double* out);
/* component: laser, eo_tuning, to_tuning, dac, adc, pd, memristor,
 * nonlinearity, static. */
PRNN_API prnn_status prnn_report_energy_component_pj(const prnn_report* report,
                                                     const char* component, double* out);
PRNN_API prnn_status prnn_report_totals(const prnn_report* report, long long* out_ops,
                                        long long* out_bits, long long* out_macs);
PRNN_API prnn_status prnn_report_epb_gops(const prnn_report* report, double* out_epb_pj_per_bit,
                                          double* out_gops);
PRNN_API prnn_status prnn_report_write_csv(const prnn_report* report, const char* path);
PRNN_API prnn_status prnn_report_summary_alloc(const prnn_report* report, char** out);

/* ------------------------------------------------------------------ */
/* Design-space exploration                                            */

typedef struct prnn_sweep prnn_sweep;
typedef struct prnn_dse_result prnn_dse_result;

PRNN_API prnn_status prnn_sweep_load(const char* path, prnn_sweep** out);
PRNN_API void prnn_sweep_free(prnn_sweep* sweep);
/* Replaces the sweep's device parameters (e.g. from a --params file). */
PRNN_API prnn_status prnn_sweep_set_params(prnn_sweep* sweep, const prnn_params* params);

PRNN_API prnn_status prnn_dse_run(const prnn_sweep* sweep, prnn_dse_result** out);
PRNN_API void prnn_dse_result_free(prnn_dse_result* result);

PRNN_API prnn_status prnn_dse_point_count(const prnn_dse_result* result, size_t* out);
PRNN_API prnn_status prnn_dse_point(const prnn_dse_result* result, size_t index,
                                    prnn_config* out_config, int* out_feasible,
                                    double* out_epb_pj_per_bit, double* out_gops,
                                    double* out_score);
PRNN_API prnn_status prnn_dse_best_index(const prnn_dse_result* result, size_t* out_index);
PRNN_API prnn_status prnn_dse_results_csv_alloc(const prnn_dse_result* result, char** out);
PRNN_API prnn_status prnn_dse_scatter_csv_alloc(const prnn_dse_result* result, char** out);
PRNN_API prnn_status prnn_dse_scatter_svg_alloc(const prnn_dse_result* result, char** out);

/* ------------------------------------------------------------------ */
/* Baseline comparison                                                 */

typedef struct prnn_baselines prnn_baselines;
typedef struct prnn_compare_result prnn_compare_result;

PRNN_API prnn_status prnn_baselines_load(const char* path, prnn_baselines** out);
PRNN_API void prnn_baselines_free(prnn_baselines* baselines);

/* tags[i] pairs report_paths[i] (a simulation report CSV) with the
 * baselines sharing that model tag. */
PRNN_API prnn_status prnn_compare_run(const prnn_baselines* baselines,
                                      const char* const* tags,
                                      const char* const* report_paths, size_t n_reports,
                                      prnn_compare_result** out);
PRNN_API void prnn_compare_result_free(prnn_compare_result* result);

PRNN_API prnn_status prnn_compare_csv_alloc(const prnn_compare_result* result, char** out);
PRNN_API prnn_status prnn_compare_epb_svg_alloc(const prnn_compare_result* result, char** out);
PRNN_API prnn_status prnn_compare_gops_svg_alloc(const prnn_compare_result* result, char** out);
PRNN_API prnn_status prnn_compare_skipped_count(const prnn_compare_result* result, size_t* out);
/* Comma-joined "name:model_tag" list of skipped baselines ("" if none). */
PRNN_API prnn_status prnn_compare_skipped_alloc(const prnn_compare_result* result, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PRNN_PRNN_H_ */
