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

#include "prnn/compare.hpp"

#include <cmath>
#include <sstream>

#include "prnn/csv.hpp"
#include "prnn/errors.hpp"
#include "prnn/svg.hpp"
#include "prnn/units.hpp"

namespace prnn {

std::vector<BaselineRecord> load_baselines(const std::string& path) {
  auto rows = csv::read_rows(path);
  if (rows.empty()) throw ParseError(path + ": empty baselines file");
  const std::vector<std::string> expected = {"name", "model_tag", "epb_pj_per_bit", "gops"};
  if (rows[0].fields != expected)
    throw ParseError(path + ":" + std::to_string(rows[0].line) +
                     ": header must be name,model_tag,epb_pj_per_bit,gops");

  std::vector<BaselineRecord> records;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::string where = path + ":" + std::to_string(row.line);
    if (row.fields.size() != 4) throw ParseError(where + ": expected 4 columns");
    BaselineRecord rec;
    rec.name = row.fields[0];
    rec.model_tag = row.fields[1];
    rec.epb_pj_per_bit = csv::parse_double(row, 2, "epb_pj_per_bit", path);
    rec.gops = csv::parse_double(row, 3, "gops", path);
    if (rec.name.empty() || rec.model_tag.empty())
      throw ParseError(where + ": name and model_tag must be non-empty");
    if (rec.epb_pj_per_bit <= 0.0) throw ParseError(where + ": epb_pj_per_bit must be > 0");
    if (rec.gops <= 0.0) throw ParseError(where + ": gops must be > 0");
    records.push_back(std::move(rec));
  }
  return records;
}

CompareResult compare_reports(const std::vector<BaselineRecord>& baselines,
                              const std::vector<ReportEntry>& reports) {
  if (reports.empty()) throw ConstraintError("comparison needs at least one report");
  for (const auto& r : reports) {
    if (r.kpis.epb_pj_per_bit <= 0.0 || r.kpis.gops <= 0.0)
      throw ConstraintError("report for tag \"" + r.model_tag +
                            "\" has nonpositive EPB or GOPS");
  }

  CompareResult result;
  // First-appearance order of accelerators keeps output deterministic.
  std::vector<std::string> accelerators;
  for (const auto& base : baselines) {
    const ReportEntry* match = nullptr;
    for (const auto& r : reports)
      if (r.model_tag == base.model_tag) {
        match = &r;
        break;
      }
    if (!match) {
      result.skipped.push_back(base);
      continue;
    }
    CompareRow row;
    row.accelerator = base.name;
    row.model_tag = base.model_tag;
    row.epb_ratio = base.epb_pj_per_bit / match->kpis.epb_pj_per_bit;
    row.gops_ratio = match->kpis.gops / base.gops;
    result.rows.push_back(row);
    bool seen = false;
    for (const auto& a : accelerators) seen = seen || a == base.name;
    if (!seen) accelerators.push_back(base.name);
  }

  size_t matched = result.rows.size();
  for (const auto& acc : accelerators) {
    double log_epb = 0.0, log_gops = 0.0;
    int n = 0;
    for (size_t i = 0; i < matched; ++i) {
      if (result.rows[i].accelerator != acc) continue;
      log_epb += std::log(result.rows[i].epb_ratio);
      log_gops += std::log(result.rows[i].gops_ratio);
      ++n;
    }
    CompareRow row;
    row.accelerator = acc;
    row.model_tag = "GEOMEAN";
    row.epb_ratio = std::exp(log_epb / n);
    row.gops_ratio = std::exp(log_gops / n);
    result.rows.push_back(row);
  }
  return result;
}

std::string compare_csv(const CompareResult& result) {
  std::ostringstream out;
  out << "accelerator,model_tag,epb_ratio,gops_ratio\n";
  for (const auto& row : result.rows)
    out << row.accelerator << ',' << row.model_tag << ',' << format_double(row.epb_ratio)
        << ',' << format_double(row.gops_ratio) << '\n';
  return out.str();
}

namespace {

std::string ratio_bars(const CompareResult& result, bool epb, const std::string& title,
                       const std::string& y_label) {
  // One cluster per model tag (file order), one bar per accelerator.
  std::vector<std::string> tags, accelerators;
  for (const auto& row : result.rows) {
    if (row.model_tag == "GEOMEAN") continue;
    bool seen = false;
    for (const auto& t : tags) seen = seen || t == row.model_tag;
    if (!seen) tags.push_back(row.model_tag);
    seen = false;
    for (const auto& a : accelerators) seen = seen || a == row.accelerator;
    if (!seen) accelerators.push_back(row.accelerator);
  }

  std::vector<svg::BarGroup> groups;
  for (const auto& tag : tags) {
    svg::BarGroup group;
    group.label = tag;
    for (const auto& acc : accelerators) {
      for (const auto& row : result.rows) {
        if (row.model_tag == tag && row.accelerator == acc)
          group.bars.emplace_back(acc, epb ? row.epb_ratio : row.gops_ratio);
      }
    }
    if (!group.bars.empty()) groups.push_back(std::move(group));
  }
  return svg::grouped_bars_log(groups, title, y_label);
}

}  // namespace

std::string compare_epb_svg(const CompareResult& result) {
  return ratio_bars(result, /*epb=*/true, "Energy-per-bit improvement over baselines",
                    "baseline EPB / simulated EPB");
}

std::string compare_gops_svg(const CompareResult& result) {
  return ratio_bars(result, /*epb=*/false, "Throughput vs baselines",
                    "simulated GOPS / baseline GOPS");
}

}  // namespace prnn
