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

#include "prnn/report_io.hpp"

#include <fstream>
#include <sstream>

#include "prnn/csv.hpp"
#include "prnn/errors.hpp"
#include "prnn/units.hpp"

namespace prnn {

namespace {

std::string csv_row(const std::string& label, long long passes, double latency,
                    const EnergyBreakdown& energy, double gops, double epb_j_bit) {
  std::ostringstream out;
  out << label << ',' << passes << ',' << format_double(latency / units::kNs);
  for (int c = 0; c < kEnergyComponentCount; ++c)
    out << ',' << format_double(energy[c] / units::kPj);
  out << ',' << format_double(gops) << ',' << format_double(epb_j_bit / units::kPj) << '\n';
  return out.str();
}

}  // namespace

std::string report_to_csv(const SimReport& report) {
  std::ostringstream out;
  out << "layer,passes,latency_ns";
  for (int c = 0; c < kEnergyComponentCount; ++c)
    out << ",energy_" << energy_component_name(static_cast<EnergyComponent>(c)) << "_pJ";
  out << ",gops,epb_pJ_per_bit\n";

  for (const auto& layer : report.per_layer) {
    double gops = layer.latency > 0.0 ? layer.ops / layer.latency / 1e9 : 0.0;
    double epb = layer.bits > 0 ? total_energy(layer.energy) / layer.bits : 0.0;
    out << csv_row(layer.label, layer.passes, layer.latency, layer.energy, gops, epb);
  }
  auto [epb, gops] = epb_gops(report);
  out << csv_row("TOTAL", report.total_passes, report.total_latency, report.energy_breakdown,
                 gops, epb);
  return out.str();
}

void write_report_csv(const SimReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << report_to_csv(report);
}

std::string report_summary(const SimReport& report) {
  auto [epb, gops] = epb_gops(report);
  std::ostringstream out;
  out << "model: " << report.model_name << "\n";
  out << "config: v=" << report.config.vector_granularity
      << " N=" << report.config.vdus_per_mac << " M=" << report.config.mac_units
      << " Nwg=" << report.config.waveguides_per_vdu
      << " (DACs per VDU: " << report.config.dacs_per_vdu() << ")\n";
  out << "total latency: " << format_double(report.total_latency / units::kNs) << " ns\n";
  out << "total energy: " << format_double(report.total_energy / units::kPj) << " pJ\n";
  for (int c = 0; c < kEnergyComponentCount; ++c) {
    out << "  " << energy_component_name(static_cast<EnergyComponent>(c)) << ": "
        << format_double(report.energy_breakdown[c] / units::kPj) << " pJ\n";
  }
  out << "total ops: " << report.total_ops << " (MACs: " << report.total_macs << ")\n";
  out << "total bits: " << report.total_bits << "\n";
  out << "throughput: " << format_double(gops) << " GOPS\n";
  out << "energy per bit: " << format_double(epb / units::kPj) << " pJ/bit\n";
  out << "layers:\n";
  for (const auto& layer : report.per_layer) {
    out << "  " << layer.label << ": passes=" << layer.passes
        << " latency=" << format_double(layer.latency / units::kNs)
        << "ns energy=" << format_double(total_energy(layer.energy) / units::kPj)
        << "pJ ops=" << layer.ops << " bits=" << layer.bits << "\n";
  }
  return out.str();
}

ReportKpis read_report_kpis(const std::string& path) {
  auto rows = csv::read_rows(path);
  if (rows.size() < 2 || rows[0].fields.empty() || rows[0].fields[0] != "layer")
    throw ParseError(path + ": not a simulation report CSV");
  size_t cols = rows[0].fields.size();
  for (const auto& row : rows) {
    if (!row.fields.empty() && row.fields[0] == "TOTAL") {
      if (row.fields.size() != cols)
        throw ParseError(path + ":" + std::to_string(row.line) + ": malformed TOTAL row");
      ReportKpis kpis;
      kpis.gops = csv::parse_double(row, cols - 2, "gops", path);
      kpis.epb_pj_per_bit = csv::parse_double(row, cols - 1, "epb_pJ_per_bit", path);
      return kpis;
    }
  }
  throw ParseError(path + ": report has no TOTAL row");
}

}  // namespace prnn
