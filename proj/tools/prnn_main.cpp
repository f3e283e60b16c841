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

// prnn command line front end. Everything here goes through the C API in
// prnn/prnn.h; the core library is never linked directly, which keeps the
// CLI honest about what the shared library exposes.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prnn/prnn.h"

namespace {

// Exit codes: 0 success, 1 usage, 2 parse, 3 constraint (runtime faults are
// reported as constraint-grade failures too).
int exit_code(prnn_status status) {
  switch (status) {
    case PRNN_OK:
      return 0;
    case PRNN_ERROR_USAGE:
      return 1;
    case PRNN_ERROR_PARSE:
      return 2;
    default:
      return 3;
  }
}

int fail(prnn_status status) {
  std::fprintf(stderr, "error: %s\n", prnn_last_error());
  return exit_code(status);
}

int usage_fail(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return 1;
}

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

// Managed string coming back from a *_alloc call.
struct CStr {
  char* ptr = nullptr;
  ~CStr() { prnn_string_free(ptr); }
  const char* get() const { return ptr ? ptr : ""; }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() {
    if (ptr) Free(ptr);
  }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using ParamsHandle = Handle<prnn_params, prnn_params_free>;
using ModelHandle = Handle<prnn_model, prnn_model_free>;
using ReportHandle = Handle<prnn_report, prnn_report_free>;
using SweepHandle = Handle<prnn_sweep, prnn_sweep_free>;
using DseHandle = Handle<prnn_dse_result, prnn_dse_result_free>;
using BaselinesHandle = Handle<prnn_baselines, prnn_baselines_free>;
using CompareHandle = Handle<prnn_compare_result, prnn_compare_result_free>;
using KappaTableHandle = Handle<prnn_kappa_table, prnn_kappa_table_free>;

// Lengths on the command line accept an optional metric suffix ("2.5",
// "2.5nm", "5um"); bare numbers are read in the flag's documented unit.
bool parse_length(const std::string& text, const char* default_unit, double* out) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double raw = std::strtod(begin, &end);
  if (end == begin) return false;
  std::string suffix(end);
  while (!suffix.empty() && suffix.front() == ' ') suffix.erase(suffix.begin());
  if (suffix.empty()) suffix = default_unit;
  double in_nm = 0.0;
  if (suffix == "nm") {
    in_nm = raw;
  } else if (suffix == "um") {
    in_nm = raw * 1e3;
  } else if (suffix == "mm") {
    in_nm = raw * 1e6;
  } else if (suffix == "cm") {
    in_nm = raw * 1e7;
  } else if (suffix == "m") {
    in_nm = raw * 1e9;
  } else {
    return false;
  }
  double unit_nm = std::strcmp(default_unit, "um") == 0 ? 1e3 : 1.0;
  *out = in_nm / unit_nm;
  return true;
}

bool parse_config(const std::string& text, prnn_config* out) {
  int consumed = -1;
  prnn_config cfg{};
  if (std::sscanf(text.c_str(), "%d,%d,%d,%d%n", &cfg.v, &cfg.n, &cfg.m, &cfg.nwg, &consumed) != 4)
    return false;
  if (consumed != static_cast<int>(text.size())) return false;
  *out = cfg;
  return true;
}

bool write_file(const std::filesystem::path& path, const std::string& content,
                std::string* error) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    *error = "cannot open " + path.string() + " for writing";
    return false;
  }
  out << content;
  out.flush();
  if (!out) {
    *error = "failed writing " + path.string();
    return false;
  }
  return true;
}

bool ensure_out_dir(const std::string& dir, std::string* error) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    *error = "cannot create output directory " + dir + ": " + ec.message();
    return false;
  }
  return true;
}

#define PRNN_CLI_CHECK(call)                         \
  do {                                               \
    prnn_status status_ = (call);                    \
    if (status_ != PRNN_OK) return fail(status_);    \
  } while (0)

/* ------------------------------------------------------------------ */
/* device                                                              */

struct DeviceArgs {
  double q = 5000.0;
  std::string cs = "2.5";
  std::string lambda = "1550";
  double ng = 3.96;
  double neff = 2.4;
  double calibration_k = 0.0;
  std::vector<int> mrs;
  std::string radius;
  bool fsr = false;
  double kappa = 0.0;
  std::string kappa_table;
  std::string params;
};

int run_device(const DeviceArgs& args) {
  double cs_nm = 0.0;
  double lambda_nm = 0.0;
  if (!parse_length(args.cs, "nm", &cs_nm)) return usage_fail("--cs expects a length like 2.5nm");
  if (!parse_length(args.lambda, "nm", &lambda_nm))
    return usage_fail("--lambda expects a length like 1550nm");

  if (!args.params.empty()) {
    ParamsHandle params;
    PRNN_CLI_CHECK(prnn_params_load(args.params.c_str(), params.out()));
  }

  std::printf("q_factor=%s\n", fmt(args.q).c_str());
  std::printf("center_wavelength_nm=%s\n", fmt(lambda_nm).c_str());
  std::printf("channel_spacing_nm=%s\n", fmt(cs_nm).c_str());

  double k = args.calibration_k;
  if (k <= 0.0) PRNN_CLI_CHECK(prnn_default_calibration_k(&k));
  std::printf("calibration_k=%s\n", fmt(k).c_str());

  int bank_limit = 0;
  PRNN_CLI_CHECK(
      prnn_bank_limit_16bit(args.q, cs_nm, lambda_nm, args.calibration_k, &bank_limit));
  std::printf("bank_limit_16bit=%d\n", bank_limit);

  for (int count : args.mrs) {
    double crosstalk = 0.0;
    int bits = 0;
    PRNN_CLI_CHECK(prnn_bank_crosstalk(count, cs_nm, args.q, lambda_nm, &crosstalk));
    PRNN_CLI_CHECK(
        prnn_bank_resolution_bits(count, cs_nm, args.q, lambda_nm, args.calibration_k, &bits));
    std::printf("mr_count=%d crosstalk=%s resolution_bits=%d\n", count, fmt(crosstalk).c_str(),
                bits);
  }

  if (args.radius.empty()) {
    if (args.fsr) return usage_fail("--fsr requires --r");
    if (!args.kappa_table.empty()) return usage_fail("--kappa-table requires --r");
  } else {
    double r_um = 0.0;
    if (!parse_length(args.radius, "um", &r_um))
      return usage_fail("--r expects a length like 5um");
    std::printf("radius_um=%s\n", fmt(r_um).c_str());

    double ring_kappa = 0.0;
    int order = 0;
    double resonant_nm = 0.0;
    double ring_fsr_nm = 0.0;
    PRNN_CLI_CHECK(prnn_design_ring(r_um, args.q, lambda_nm, args.ng, args.neff, &ring_kappa,
                                    &order, &resonant_nm, &ring_fsr_nm));
    std::printf("kappa=%s\n", fmt(ring_kappa).c_str());
    std::printf("resonance_order=%d\n", order);
    std::printf("resonant_wavelength_nm=%s\n", fmt(resonant_nm).c_str());
    std::printf("ring_fsr_nm=%s\n", fmt(ring_fsr_nm).c_str());

    if (args.fsr) {
      // Dispersion-referenced FSR at the requested center wavelength.
      double fsr_nm = 0.0;
      PRNN_CLI_CHECK(prnn_fsr_nm(lambda_nm, args.ng, r_um, &fsr_nm));
      std::printf("fsr_nm=%s\n", fmt(fsr_nm).c_str());
    }

    if (!args.kappa_table.empty()) {
      KappaTableHandle table;
      PRNN_CLI_CHECK(prnn_kappa_table_load(args.kappa_table.c_str(), table.out()));
      size_t rows = 0;
      PRNN_CLI_CHECK(prnn_kappa_table_size(table.get(), &rows));
      std::printf("kappa_table_rows=%zu\n", rows);
      double w_nm = 0.0;
      double row_r_um = 0.0;
      double row_kappa = 0.0;
      double row_ng = 0.0;
      PRNN_CLI_CHECK(prnn_kappa_table_best_row(table.get(), r_um, args.q, lambda_nm, &w_nm,
                                               &row_r_um, &row_kappa, &row_ng));
      std::printf("best_row w_mr_nm=%s radius_um=%s kappa=%s n_g=%s\n", fmt(w_nm).c_str(),
                  fmt(row_r_um).c_str(), fmt(row_kappa).c_str(), fmt(row_ng).c_str());
    }
  }

  if (args.kappa > 0.0) {
    double r_for_q = 0.0;
    PRNN_CLI_CHECK(prnn_radius_for_q_um(args.q, lambda_nm, args.kappa, args.ng, &r_for_q));
    std::printf("radius_for_q_um=%s\n", fmt(r_for_q).c_str());
  }

  return 0;
}

/* ------------------------------------------------------------------ */
/* simulate                                                            */

struct SimulateArgs {
  std::string model;
  std::string config = "15,15,40,10";
  std::string params;
  std::string out_dir = ".";
  double q = 5000.0;
  std::string cs = "2.5";
  std::string lambda = "1550";
  double calibration_k = 0.0;
};

int run_simulate(const SimulateArgs& args) {
  prnn_config config{};
  if (!parse_config(args.config, &config))
    return usage_fail("--config expects v,N,M,Nwg (e.g. 15,15,40,10)");

  prnn_resolution_context ctx{};
  prnn_resolution_context_default(&ctx);
  ctx.q_factor = args.q;
  ctx.calibration_k = args.calibration_k;
  if (!parse_length(args.cs, "nm", &ctx.channel_spacing_nm))
    return usage_fail("--cs expects a length like 2.5nm");
  if (!parse_length(args.lambda, "nm", &ctx.center_wavelength_nm))
    return usage_fail("--lambda expects a length like 1550nm");

  ParamsHandle params;
  if (args.params.empty()) {
    PRNN_CLI_CHECK(prnn_params_create_default(params.out()));
  } else {
    PRNN_CLI_CHECK(prnn_params_load(args.params.c_str(), params.out()));
  }

  ModelHandle model;
  PRNN_CLI_CHECK(prnn_model_load(args.model.c_str(), model.out()));

  ReportHandle report;
  PRNN_CLI_CHECK(prnn_simulate(model.get(), &config, params.get(), &ctx, report.out()));

  std::string error;
  if (!ensure_out_dir(args.out_dir, &error)) return usage_fail(error);
  std::filesystem::path out_dir(args.out_dir);

  std::filesystem::path csv_path = out_dir / "report.csv";
  PRNN_CLI_CHECK(prnn_report_write_csv(report.get(), csv_path.string().c_str()));

  CStr summary;
  PRNN_CLI_CHECK(prnn_report_summary_alloc(report.get(), &summary.ptr));
  if (!write_file(out_dir / "summary.txt", summary.get(), &error)) return usage_fail(error);

  std::fputs(summary.get(), stdout);
  std::printf("wrote %s\n", csv_path.string().c_str());
  return 0;
}

/* ------------------------------------------------------------------ */
/* dse                                                                 */

struct DseArgs {
  std::string sweep;
  std::string params;
  std::string out_dir = ".";
};

int run_dse(const DseArgs& args) {
  SweepHandle sweep;
  PRNN_CLI_CHECK(prnn_sweep_load(args.sweep.c_str(), sweep.out()));

  ParamsHandle params;
  if (!args.params.empty()) {
    PRNN_CLI_CHECK(prnn_params_load(args.params.c_str(), params.out()));
    PRNN_CLI_CHECK(prnn_sweep_set_params(sweep.get(), params.get()));
  }

  DseHandle result;
  PRNN_CLI_CHECK(prnn_dse_run(sweep.get(), result.out()));

  size_t points = 0;
  PRNN_CLI_CHECK(prnn_dse_point_count(result.get(), &points));
  size_t feasible = 0;
  for (size_t i = 0; i < points; ++i) {
    prnn_config cfg{};
    int ok = 0;
    double epb = 0.0, gops = 0.0, score = 0.0;
    PRNN_CLI_CHECK(prnn_dse_point(result.get(), i, &cfg, &ok, &epb, &gops, &score));
    if (ok) ++feasible;
  }
  std::printf("points=%zu feasible=%zu\n", points, feasible);

  // The best point is also the argmin over the results CSV; printing it
  // here keeps scripted callers from re-parsing the file.
  size_t best = 0;
  PRNN_CLI_CHECK(prnn_dse_best_index(result.get(), &best));
  prnn_config best_cfg{};
  int best_ok = 0;
  double best_epb = 0.0, best_gops = 0.0, best_score = 0.0;
  PRNN_CLI_CHECK(
      prnn_dse_point(result.get(), best, &best_cfg, &best_ok, &best_epb, &best_gops, &best_score));
  std::printf("best: v=%d n=%d m=%d nwg=%d mean_epb_pJ_bit=%s mean_gops=%s score=%s\n", best_cfg.v,
              best_cfg.n, best_cfg.m, best_cfg.nwg, fmt(best_epb).c_str(), fmt(best_gops).c_str(),
              fmt(best_score).c_str());

  std::string error;
  if (!ensure_out_dir(args.out_dir, &error)) return usage_fail(error);
  std::filesystem::path out_dir(args.out_dir);

  CStr results_csv;
  PRNN_CLI_CHECK(prnn_dse_results_csv_alloc(result.get(), &results_csv.ptr));
  if (!write_file(out_dir / "dse_results.csv", results_csv.get(), &error))
    return usage_fail(error);

  CStr scatter_csv;
  PRNN_CLI_CHECK(prnn_dse_scatter_csv_alloc(result.get(), &scatter_csv.ptr));
  if (!write_file(out_dir / "dse_scatter.csv", scatter_csv.get(), &error))
    return usage_fail(error);

  CStr scatter_svg;
  PRNN_CLI_CHECK(prnn_dse_scatter_svg_alloc(result.get(), &scatter_svg.ptr));
  if (!write_file(out_dir / "dse_scatter.svg", scatter_svg.get(), &error))
    return usage_fail(error);

  return 0;
}

/* ------------------------------------------------------------------ */
/* compare                                                             */

struct CompareArgs {
  std::string baselines;
  std::vector<std::string> reports;
  std::string out_dir = ".";
};

int run_compare(const CompareArgs& args) {
  BaselinesHandle baselines;
  PRNN_CLI_CHECK(prnn_baselines_load(args.baselines.c_str(), baselines.out()));

  std::vector<std::string> tags;
  std::vector<std::string> paths;
  for (const std::string& spec : args.reports) {
    size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
      return usage_fail("--report expects TAG=FILE, got '" + spec + "'");
    tags.push_back(spec.substr(0, eq));
    paths.push_back(spec.substr(eq + 1));
  }
  std::vector<const char*> tag_ptrs;
  std::vector<const char*> path_ptrs;
  for (size_t i = 0; i < tags.size(); ++i) {
    tag_ptrs.push_back(tags[i].c_str());
    path_ptrs.push_back(paths[i].c_str());
  }

  CompareHandle result;
  PRNN_CLI_CHECK(prnn_compare_run(baselines.get(), tag_ptrs.data(), path_ptrs.data(),
                                  tag_ptrs.size(), result.out()));

  CStr table;
  PRNN_CLI_CHECK(prnn_compare_csv_alloc(result.get(), &table.ptr));
  std::fputs(table.get(), stdout);

  std::string error;
  if (!ensure_out_dir(args.out_dir, &error)) return usage_fail(error);
  std::filesystem::path out_dir(args.out_dir);
  if (!write_file(out_dir / "compare.csv", table.get(), &error)) return usage_fail(error);

  CStr epb_svg;
  PRNN_CLI_CHECK(prnn_compare_epb_svg_alloc(result.get(), &epb_svg.ptr));
  if (!write_file(out_dir / "compare_epb.svg", epb_svg.get(), &error)) return usage_fail(error);

  CStr gops_svg;
  PRNN_CLI_CHECK(prnn_compare_gops_svg_alloc(result.get(), &gops_svg.ptr));
  if (!write_file(out_dir / "compare_gops.svg", gops_svg.get(), &error)) return usage_fail(error);

  size_t skipped = 0;
  PRNN_CLI_CHECK(prnn_compare_skipped_count(result.get(), &skipped));
  std::printf("skipped=%zu\n", skipped);
  if (skipped > 0) {
    CStr names;
    PRNN_CLI_CHECK(prnn_compare_skipped_alloc(result.get(), &names.ptr));
    std::printf("skipped_baselines=%s\n", names.get());
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytical explorer for a photonic recurrent-network accelerator"};
  app.require_subcommand(1);

  int rc = 0;

  DeviceArgs device;
  CLI::App* dev = app.add_subcommand("device", "Microring geometry and bank resolution analysis");
  dev->add_option("--q", device.q, "Quality factor")->capture_default_str();
  dev->add_option("--cs", device.cs, "Channel spacing (nm unless suffixed)")
      ->capture_default_str();
  dev->add_option("--lambda", device.lambda, "Center wavelength (nm unless suffixed)")
      ->capture_default_str();
  dev->add_option("--ng", device.ng, "Group index")->capture_default_str();
  dev->add_option("--neff", device.neff, "Effective index")->capture_default_str();
  dev->add_option("--calibration-k", device.calibration_k,
                  "Resolution calibration constant (0 = built in)");
  dev->add_option("--mrs", device.mrs, "Bank sizes to analyze (repeatable)");
  dev->add_option("--r", device.radius, "Ring radius (um unless suffixed)");
  dev->add_flag("--fsr", device.fsr, "Print the free spectral range for --r");
  dev->add_option("--kappa", device.kappa, "Coupling coefficient to invert to a radius");
  dev->add_option("--kappa-table", device.kappa_table,
                  "Coupling characterization CSV (w_mr_nm,radius_um,kappa,n_g)");
  dev->add_option("--params", device.params, "Device parameter JSON (validated)");
  dev->callback([&] { rc = run_device(device); });

  SimulateArgs simulate;
  CLI::App* sim = app.add_subcommand("simulate", "Run the analytical accelerator model");
  sim->add_option("model", simulate.model, "Model description JSON")->required();
  sim->add_option("--config", simulate.config, "Accelerator config v,N,M,Nwg")
      ->capture_default_str();
  sim->add_option("--params", simulate.params, "Device parameter JSON");
  sim->add_option("--out", simulate.out_dir, "Output directory")->capture_default_str();
  sim->add_option("--q", simulate.q, "Quality factor")->capture_default_str();
  sim->add_option("--cs", simulate.cs, "Channel spacing (nm unless suffixed)")
      ->capture_default_str();
  sim->add_option("--lambda", simulate.lambda, "Center wavelength (nm unless suffixed)")
      ->capture_default_str();
  sim->add_option("--calibration-k", simulate.calibration_k,
                  "Resolution calibration constant (0 = built in)");
  sim->callback([&] { rc = run_simulate(simulate); });

  DseArgs dse;
  CLI::App* dse_cmd = app.add_subcommand("dse", "Sweep accelerator configurations");
  dse_cmd->add_option("sweep", dse.sweep, "Sweep description JSON")->required();
  dse_cmd->add_option("--params", dse.params, "Device parameter JSON override");
  dse_cmd->add_option("--out", dse.out_dir, "Output directory")->capture_default_str();
  dse_cmd->callback([&] { rc = run_dse(dse); });

  CompareArgs compare;
  CLI::App* cmp = app.add_subcommand("compare", "Compare simulation reports against baselines");
  cmp->add_option("baselines", compare.baselines, "Baseline CSV (name,model_tag,epb_pj_per_bit,gops)")
      ->required();
  cmp->add_option("--report", compare.reports, "TAG=FILE simulation report pairing (repeatable)")
      ->required();
  cmp->add_option("--out", compare.out_dir, "Output directory")->capture_default_str();
  cmp->callback([&] { rc = run_compare(compare); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  return rc;
}
