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

// Design-space exploration over the [v, N, M, Nwg] tuple: enumerate a
// grid, simulate every model on every feasible point, and rank by the
// energy-per-bit to throughput ratio.

#ifndef PRNN_DSE_HPP_
#define PRNN_DSE_HPP_

#include <string>
#include <vector>

#include "prnn/arch.hpp"

namespace prnn {

struct SweepSpec {
  // Grids may come from {from,to,step} ranges or explicit value lists; by
  // the time they land here they are flat ascending lists.
  std::vector<int> v_range{5, 10, 15};
  std::vector<int> n_range{5, 10, 15};
  std::vector<int> m_range{10, 20, 40, 80};
  std::vector<int> nwg_range{1, 5, 10};
  std::vector<ModelSpec> models;
  DeviceParams params;
  ResolutionContext constraint;

  void validate() const;
};

struct DsePoint {
  AcceleratorConfig config;
  bool feasible = false;
  double mean_epb = 0.0;   // J/bit, arithmetic mean across models
  double mean_gops = 0.0;  // arithmetic mean across models
  double score = 0.0;      // mean_epb / mean_gops, the ranking objective
  std::string reason;      // populated for infeasible points
};

// Cartesian product of the grids in lexicographic (v, N, M, Nwg) order,
// with the resolution-constraint feasibility tag filled in and metrics
// left empty.
std::vector<DsePoint> enumerate_configs(const SweepSpec& spec);

// Full sweep. Point evaluations run in parallel but land in enumeration
// order, so results are deterministic. A point whose simulation throws is
// marked infeasible with the error text; the sweep itself never aborts.
std::vector<DsePoint> evaluate(const SweepSpec& spec);

// Minimum-score feasible point. Ties break toward smaller v*N*M*Nwg, then
// lexicographic config order. Throws when nothing is feasible.
const DsePoint& best_config(const std::vector<DsePoint>& points);

// Indices of feasible points not dominated in (lower epb, higher gops).
std::vector<size_t> pareto_front(const std::vector<DsePoint>& points);

// Sweep file: JSON with optional "v"/"n"/"m"/"nwg" grids (list or
// {from,to,step}), a required "models" list (paths or inline model
// objects; paths resolve against the sweep file), optional "params" (path
// or inline device parameters) and optional "constraint" {q, cs_nm,
// lambda_nm, calibration_k}.
SweepSpec load_sweep(const std::string& path);
SweepSpec parse_sweep(const std::string& text, const std::string& origin);

std::string dse_results_csv(const std::vector<DsePoint>& points);

// Feasible points only, one row per point with best/pareto flags; the
// companion SVG is the EPB-vs-GOPS scatter with the best point starred.
std::string dse_scatter_csv(const std::vector<DsePoint>& points);
std::string dse_scatter_svg(const std::vector<DsePoint>& points);

}  // namespace prnn

#endif  // PRNN_DSE_HPP_
