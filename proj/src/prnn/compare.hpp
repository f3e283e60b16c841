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

// Ratio tables against published accelerator baselines. The baseline file
// is user-supplied; nothing here asserts third-party numbers.

#ifndef PRNN_COMPARE_HPP_
#define PRNN_COMPARE_HPP_

#include <string>
#include <vector>

#include "prnn/report_io.hpp"

namespace prnn {

struct BaselineRecord {
  std::string name;       // accelerator
  std::string model_tag;  // workload identifier shared with a report
  double epb_pj_per_bit = 0.0;
  double gops = 0.0;
};

// CSV with header name,model_tag,epb_pj_per_bit,gops; both metrics must be
// positive. Errors carry file:line.
std::vector<BaselineRecord> load_baselines(const std::string& path);

struct ReportEntry {
  std::string model_tag;
  ReportKpis kpis;
};

struct CompareRow {
  std::string accelerator;
  std::string model_tag;  // "GEOMEAN" on the per-accelerator summary rows
  double epb_ratio = 0.0;   // baseline_epb / simulated_epb
  double gops_ratio = 0.0;  // simulated_gops / baseline_gops
};

struct CompareResult {
  std::vector<CompareRow> rows;  // matched pairs first, then GEOMEAN rows
  std::vector<BaselineRecord> skipped;
};

// Pairs each baseline with the report sharing its model_tag. Baselines
// without a partner are listed in `skipped`; each accelerator with at
// least one match gains a geometric-mean summary row.
CompareResult compare_reports(const std::vector<BaselineRecord>& baselines,
                              const std::vector<ReportEntry>& reports);

std::string compare_csv(const CompareResult& result);

// Grouped log-scale bars, one chart per metric.
std::string compare_epb_svg(const CompareResult& result);
std::string compare_gops_svg(const CompareResult& result);

}  // namespace prnn

#endif  // PRNN_COMPARE_HPP_
