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

#ifndef PRNN_REPORT_IO_HPP_
#define PRNN_REPORT_IO_HPP_

#include <string>

#include "prnn/arch.hpp"

namespace prnn {

// One row per layer plus a TOTAL row; energies in pJ, latency in ns. All
// numbers go through the shortest-round-trip formatter, so equal reports
// serialize byte-identically.
std::string report_to_csv(const SimReport& report);
void write_report_csv(const SimReport& report, const std::string& path);

// Human-readable run summary (also deterministic).
std::string report_summary(const SimReport& report);

struct ReportKpis {
  double epb_pj_per_bit = 0.0;
  double gops = 0.0;
};

// Pulls the headline numbers back out of a written report CSV.
ReportKpis read_report_kpis(const std::string& path);

}  // namespace prnn

#endif  // PRNN_REPORT_IO_HPP_
