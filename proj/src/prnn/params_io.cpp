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

#include "prnn/params_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prnn/csv.hpp"
#include "prnn/errors.hpp"
#include "prnn/units.hpp"

namespace prnn {

namespace {

using nlohmann::json;

struct FieldSpec {
  const char* key;
  double DeviceParams::*member;
  Dimension dim;
  // Unit the value is written back in (value / display_scale + suffix).
  double display_scale;
  const char* display_suffix;
  // Plain JSON numbers are accepted only where the key itself names the
  // unit; number_scale converts such a number to the internal SI value.
  bool allow_number;
  double number_scale;
};

constexpr FieldSpec kFields[] = {
    {"eo_latency", &DeviceParams::eo_latency, Dimension::kTime, 1e-9, "ns", false, 1},
    {"eo_power_per_nm", &DeviceParams::eo_power_per_shift, Dimension::kPowerPerLength,
     1e-6 / 1e-9, "uW/nm", false, 1},
    {"eo_max_shift", &DeviceParams::eo_max_shift, Dimension::kLength, 1e-9, "nm", false, 1},
    {"eo_avg_shift", &DeviceParams::eo_avg_shift, Dimension::kLength, 1e-9, "nm", false, 1},
    {"to_latency", &DeviceParams::to_latency, Dimension::kTime, 1e-6, "us", false, 1},
    {"to_power_per_fsr", &DeviceParams::to_power_per_fsr, Dimension::kPowerPerFsr, 1e-3,
     "mW/FSR", false, 1},
    {"ted_discount", &DeviceParams::ted_discount, Dimension::kScalar, 1, "", true, 1},
    {"vcsel_latency", &DeviceParams::vcsel_latency, Dimension::kTime, 1e-9, "ns", false, 1},
    {"vcsel_power", &DeviceParams::vcsel_power, Dimension::kPower, 1e-3, "mW", false, 1},
    {"pd_latency", &DeviceParams::pd_latency, Dimension::kTime, 1e-12, "ps", false, 1},
    {"pd_power", &DeviceParams::pd_power, Dimension::kPower, 1e-3, "mW", false, 1},
    {"pd_sensitivity_dbm", &DeviceParams::pd_sensitivity_dbm, Dimension::kDbm, 1, "dBm",
     true, 1},
    {"dac_latency", &DeviceParams::dac_latency, Dimension::kTime, 1e-9, "ns", false, 1},
    {"dac_power", &DeviceParams::dac_power, Dimension::kPower, 1e-3, "mW", false, 1},
    {"adc_latency", &DeviceParams::adc_latency, Dimension::kTime, 1e-9, "ns", false, 1},
    {"adc_power", &DeviceParams::adc_power, Dimension::kPower, 1e-3, "mW", false, 1},
    {"memristor_latency", &DeviceParams::memristor_latency, Dimension::kTime, 1e-9, "ns",
     false, 1},
    {"memristor_power", &DeviceParams::memristor_power, Dimension::kPower, 1e-6, "uW", false,
     1},
    {"soa_latency", &DeviceParams::soa_latency, Dimension::kTime, 1e-9, "ns", false, 1},
    {"soa_power", &DeviceParams::soa_power, Dimension::kPower, 1e-3, "mW", false, 1},
    {"loss_mr_through_db", &DeviceParams::loss_mr_through_db, Dimension::kDb, 1, "dB", true,
     1},
    {"loss_waveguide_db_per_cm", &DeviceParams::loss_waveguide_db_per_m,
     Dimension::kDbPerLength, 1.0 / 1e-2, "dB/cm", true, 1.0 / 1e-2},
    {"loss_splitter_excess_db", &DeviceParams::loss_splitter_excess_db, Dimension::kDb, 1,
     "dB", true, 1},
};

const FieldSpec* find_field(const std::string& key) {
  for (const auto& f : kFields) {
    if (key == f.key) return &f;
  }
  return nullptr;
}

// 1-based line of the first occurrence of a key in the raw text; used to
// anchor semantic errors that the JSON parser itself cannot locate.
int line_of_key(const std::string& raw, const std::string& key) {
  auto pos = raw.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(raw.begin(), raw.begin() + pos, '\n'));
}

std::string at_line(const std::string& origin, int line) {
  if (line <= 0) return origin;
  return origin + ":" + std::to_string(line);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Unit with multiplier 1.0 for each string-valued dimension. Values
// written with it reparse bit-exactly, since no rescaling happens.
const char* base_suffix(Dimension dim) {
  switch (dim) {
    case Dimension::kTime: return "s";
    case Dimension::kLength: return "m";
    case Dimension::kPower: return "W";
    case Dimension::kPowerPerLength: return "W/m";
    case Dimension::kPowerPerFsr: return "W/FSR";
    case Dimension::kDbPerLength: return "dB/m";
    default: return "";
  }
}

}  // namespace

DeviceParams parse_device_params(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": device parameters must be a JSON object");

  DeviceParams params;
  for (const auto& [key, value] : doc.items()) {
    const FieldSpec* field = find_field(key);
    std::string where = at_line(origin, line_of_key(text, key));
    if (!field) throw ParseError(where + ": unknown device parameter \"" + key + "\"");
    if (value.is_string()) {
      params.*(field->member) =
          parse_quantity(value.get<std::string>(), field->dim, where + ": " + key);
    } else if (value.is_number()) {
      if (!field->allow_number)
        throw ParseError(where + ": " + key + " needs a unit suffix, e.g. \"" +
                         dimension_example(field->dim) + "\"");
      params.*(field->member) = value.get<double>() * field->number_scale;
    } else {
      throw ParseError(where + ": " + key + " must be a unit-suffixed string");
    }
  }
  params.validate();
  return params;
}

DeviceParams load_device_params(const std::string& path) {
  return parse_device_params(read_file(path), path);
}

std::string device_params_to_json(const DeviceParams& params) {
  json doc = json::object();
  for (const auto& f : kFields) {
    double value = params.*(f.member);
    double display = value / f.display_scale;
    if (f.allow_number && display * f.number_scale == value) {
      doc[f.key] = display;
      continue;
    }
    // Dividing into the display unit and multiplying back on parse can
    // land one ulp off the stored value. Search the shortest decimal in
    // the display unit that reparses bit-exactly ("14ns" rather than
    // "13.999999999999998ns") and fall back to the base unit otherwise.
    std::string text;
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
      std::snprintf(buf, sizeof buf, "%.*g", prec, display);
      std::string candidate = std::string(buf) + f.display_suffix;
      if (parse_quantity(candidate, f.dim, f.key) == value &&
          (text.empty() || candidate.size() < text.size()))
        text = candidate;
    }
    if (text.empty()) text = format_double(value) + base_suffix(f.dim);
    doc[f.key] = text;
  }
  return doc.dump(2) + "\n";
}

void save_device_params(const DeviceParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << device_params_to_json(params);
}

std::vector<KappaTableRow> load_kappa_table(const std::string& path) {
  auto rows = csv::read_rows(path);
  if (rows.empty()) throw ParseError(path + ": empty coupling table");
  const std::vector<std::string> expected = {"w_mr_nm", "radius_um", "kappa", "n_g"};
  if (rows[0].fields != expected)
    throw ParseError(path + ":" + std::to_string(rows[0].line) +
                     ": header must be w_mr_nm,radius_um,kappa,n_g");

  std::vector<KappaTableRow> table;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::string where = path + ":" + std::to_string(row.line);
    KappaTableRow entry;
    entry.mr_width = csv::parse_double(row, 0, "w_mr_nm", path) * units::kNm;
    entry.radius = csv::parse_double(row, 1, "radius_um", path) * units::kUm;
    entry.kappa = csv::parse_double(row, 2, "kappa", path);
    entry.group_index = csv::parse_double(row, 3, "n_g", path);
    if (entry.mr_width <= 0.0) throw ParseError(where + ": w_mr_nm must be positive");
    if (entry.radius <= 0.0) throw ParseError(where + ": radius_um must be positive");
    if (entry.kappa <= 0.0 || entry.kappa >= 1.0)
      throw ParseError(where + ": kappa must lie in (0,1)");
    if (entry.group_index <= 0.0) throw ParseError(where + ": n_g must be positive");
    table.push_back(entry);
  }
  if (table.empty()) throw ParseError(path + ": coupling table has no data rows");
  return table;
}

}  // namespace prnn
