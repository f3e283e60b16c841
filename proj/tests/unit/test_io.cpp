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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <doctest.h>

#include "prnn/arch.hpp"
#include "prnn/csv.hpp"
#include "prnn/errors.hpp"
#include "prnn/params_io.hpp"
#include "prnn/report_io.hpp"
#include "prnn/units.hpp"

using namespace prnn;
using doctest::Approx;
using doctest::Contains;

namespace {

std::string data_path(const char* name) {
  return std::string(PRNN_DATA_DIR) + "/" + name;
}

std::string tmp_path(const char* name) {
  std::filesystem::create_directories(PRNN_TEST_TMP_DIR);
  return std::string(PRNN_TEST_TMP_DIR) + "/" + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

}  // namespace

TEST_CASE("quantities parse with unit suffixes into SI") {
  CHECK(parse_quantity("20ns", Dimension::kTime, "t") == Approx(20e-9).epsilon(1e-15));
  CHECK(parse_quantity(" 20 ns ", Dimension::kTime, "t") == Approx(20e-9).epsilon(1e-15));
  CHECK(parse_quantity("5.8ps", Dimension::kTime, "t") == Approx(5.8e-12).epsilon(1e-15));
  CHECK(parse_quantity("4us", Dimension::kTime, "t") == Approx(4e-6).epsilon(1e-15));
  CHECK(parse_quantity("2.5nm", Dimension::kLength, "l") == Approx(2.5e-9).epsilon(1e-15));
  CHECK(parse_quantity("5um", Dimension::kLength, "l") == Approx(5e-6).epsilon(1e-15));
  CHECK(parse_quantity("1.3mW", Dimension::kPower, "p") == Approx(1.3e-3).epsilon(1e-15));
  CHECK(parse_quantity("4uW/nm", Dimension::kPowerPerLength, "p") ==
        Approx(4000.0).epsilon(1e-15));
  CHECK(parse_quantity("27.5mW/FSR", Dimension::kPowerPerFsr, "p") ==
        Approx(27.5e-3).epsilon(1e-15));
  CHECK(parse_quantity("27.5mW/fsr", Dimension::kPowerPerFsr, "p") ==
        Approx(27.5e-3).epsilon(1e-15));
  CHECK(parse_quantity("-20dBm", Dimension::kDbm, "p") == Approx(-20.0).epsilon(1e-15));
  CHECK(parse_quantity("2dB/cm", Dimension::kDbPerLength, "a") ==
        Approx(200.0).epsilon(1e-15));
  CHECK(parse_quantity("0.02dB", Dimension::kDb, "a") == Approx(0.02).epsilon(1e-15));
  CHECK(parse_quantity("0.5", Dimension::kScalar, "x") == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("quantity errors name the field and the expected shape") {
  CHECK_THROWS_WITH_AS(parse_quantity("20", Dimension::kTime, "eo_latency"),
                       Contains("missing unit suffix"), ParseError);
  CHECK_THROWS_WITH_AS(parse_quantity("20", Dimension::kTime, "eo_latency"),
                       Contains("eo_latency"), ParseError);
  CHECK_THROWS_WITH_AS(parse_quantity("20", Dimension::kTime, "eo_latency"),
                       Contains("20ns"), ParseError);  // example suffix suggested
  CHECK_THROWS_WITH_AS(parse_quantity("fast", Dimension::kTime, "t"),
                       Contains("no numeric magnitude"), ParseError);
  CHECK_THROWS_WITH_AS(parse_quantity("20qs", Dimension::kTime, "t"),
                       Contains("unknown unit \"qs\""), ParseError);
  CHECK_THROWS_WITH_AS(parse_quantity("", Dimension::kTime, "t"), Contains("empty value"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_quantity("4uW", Dimension::kPowerPerLength, "p"),
                       Contains("unknown unit"), ParseError);
  CHECK_THROWS_AS(parse_quantity("1.5", Dimension::kDb, "a"), ParseError);
}

TEST_CASE("format_double is the shortest round-tripping form") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2604.0) == "2604");
  CHECK(format_double(-1.25) == "-1.25");
  CHECK(format_double(19.311) == "19.311");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  for (int i = 0; i < 2000; ++i) {
    double v = mant(rng) * std::pow(10.0, expo(rng));
    std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("device parameters round-trip through their JSON form") {
  DeviceParams p;  // defaults
  DeviceParams back = parse_device_params(device_params_to_json(p), "inline");
  CHECK(back.eo_latency == p.eo_latency);
  CHECK(back.eo_power_per_shift == p.eo_power_per_shift);
  CHECK(back.eo_max_shift == p.eo_max_shift);
  CHECK(back.eo_avg_shift == p.eo_avg_shift);
  CHECK(back.to_latency == p.to_latency);
  CHECK(back.to_power_per_fsr == p.to_power_per_fsr);
  CHECK(back.ted_discount == p.ted_discount);
  CHECK(back.vcsel_latency == p.vcsel_latency);
  CHECK(back.vcsel_power == p.vcsel_power);
  CHECK(back.pd_latency == p.pd_latency);
  CHECK(back.pd_power == p.pd_power);
  CHECK(back.pd_sensitivity_dbm == p.pd_sensitivity_dbm);
  CHECK(back.dac_latency == p.dac_latency);
  CHECK(back.dac_power == p.dac_power);
  CHECK(back.adc_latency == p.adc_latency);
  CHECK(back.adc_power == p.adc_power);
  CHECK(back.memristor_latency == p.memristor_latency);
  CHECK(back.memristor_power == p.memristor_power);
  CHECK(back.soa_latency == p.soa_latency);
  CHECK(back.soa_power == p.soa_power);
  CHECK(back.loss_mr_through_db == p.loss_mr_through_db);
  CHECK(back.loss_waveguide_db_per_m == p.loss_waveguide_db_per_m);
  CHECK(back.loss_splitter_excess_db == p.loss_splitter_excess_db);

  // A perturbed set survives save -> load through an actual file too.
  DeviceParams q = p;
  q.eo_latency = 11e-9;
  q.to_power_per_fsr = 31.25e-3;
  q.ted_discount = 0.5;
  q.pd_sensitivity_dbm = -18.5;
  q.memristor_power = 0.21e-6;
  q.loss_waveguide_db_per_m = 350.0;
  std::string path = tmp_path("params_roundtrip.json");
  save_device_params(q, path);
  DeviceParams loaded = load_device_params(path);
  CHECK(loaded.eo_latency == q.eo_latency);
  CHECK(loaded.to_power_per_fsr == q.to_power_per_fsr);
  CHECK(loaded.ted_discount == q.ted_discount);
  CHECK(loaded.pd_sensitivity_dbm == q.pd_sensitivity_dbm);
  CHECK(loaded.memristor_power == q.memristor_power);
  CHECK(loaded.loss_waveguide_db_per_m == q.loss_waveguide_db_per_m);
}

TEST_CASE("device parameter grammar is strict") {
  // Missing keys keep defaults; suffixed strings are converted.
  DeviceParams p = parse_device_params(R"({"adc_latency": "7ns"})", "inline");
  CHECK(p.adc_latency == Approx(7e-9).epsilon(1e-15));
  CHECK(p.dac_latency == Approx(0.33e-9).epsilon(1e-15));

  // Bare numbers are allowed exactly where the key names the unit.
  DeviceParams q = parse_device_params(
      R"({"ted_discount": 0.5, "pd_sensitivity_dbm": -20, "loss_mr_through_db": 0.03,
          "loss_waveguide_db_per_cm": 2, "loss_splitter_excess_db": 0.7})",
      "inline");
  CHECK(q.ted_discount == 0.5);
  CHECK(q.pd_sensitivity_dbm == -20.0);
  CHECK(q.loss_mr_through_db == 0.03);
  CHECK(q.loss_waveguide_db_per_m == Approx(200.0).epsilon(1e-15));
  CHECK(q.loss_splitter_excess_db == 0.7);

  CHECK_THROWS_WITH_AS(parse_device_params("{\n  \"dac_speed\": \"1ns\"\n}", "inline"),
                       Contains("inline:2: unknown device parameter \"dac_speed\""),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_device_params(R"({"eo_latency": 20})", "inline"),
                       Contains("needs a unit suffix, e.g. \"20ns\""), ParseError);
  CHECK_THROWS_WITH_AS(parse_device_params(R"({"eo_latency": true})", "inline"),
                       Contains("must be a unit-suffixed string"), ParseError);
  CHECK_THROWS_WITH_AS(parse_device_params("[1,2]", "inline"),
                       Contains("must be a JSON object"), ParseError);
  CHECK_THROWS_WITH_AS(parse_device_params("{nope", "inline"), Contains("inline"),
                       ParseError);
  CHECK_THROWS_AS(load_device_params(tmp_path("missing_params.json")), ParseError);
}

TEST_CASE("coupling tables load with units applied") {
  auto table = load_kappa_table(data_path("kappa_ng_example.csv"));
  REQUIRE(table.size() == 8);
  CHECK(table[0].mr_width == Approx(400e-9).epsilon(1e-15));
  CHECK(table[0].radius == Approx(4.0e-6).epsilon(1e-15));
  CHECK(table[0].kappa == Approx(0.310).epsilon(1e-15));
  CHECK(table[0].group_index == Approx(4.12).epsilon(1e-15));
  CHECK(table[7].mr_width == Approx(540e-9).epsilon(1e-15));
  CHECK(table[7].radius == Approx(10.0e-6).epsilon(1e-15));
}

TEST_CASE("coupling table validation") {
  std::string bad_header = tmp_path("kappa_bad_header.csv");
  write_file(bad_header, "width,radius,kappa,ng\n400,4.0,0.3,4.1\n");
  CHECK_THROWS_WITH_AS(load_kappa_table(bad_header),
                       Contains("header must be w_mr_nm,radius_um,kappa,n_g"), ParseError);

  std::string bad_kappa = tmp_path("kappa_bad_value.csv");
  write_file(bad_kappa, "w_mr_nm,radius_um,kappa,n_g\n400,4.0,1.5,4.1\n");
  CHECK_THROWS_WITH_AS(load_kappa_table(bad_kappa), Contains("kappa must lie in (0,1)"),
                       ParseError);

  std::string empty = tmp_path("kappa_empty.csv");
  write_file(empty, "");
  CHECK_THROWS_WITH_AS(load_kappa_table(empty), Contains("empty coupling table"), ParseError);

  std::string header_only = tmp_path("kappa_header_only.csv");
  write_file(header_only, "w_mr_nm,radius_um,kappa,n_g\n");
  CHECK_THROWS_WITH_AS(load_kappa_table(header_only), Contains("no data rows"), ParseError);
}

TEST_CASE("csv helpers split, trim and diagnose") {
  auto fields = csv::split_line("a, b ,c");
  REQUIRE(fields.size() == 3);
  CHECK(fields[1] == "b");
  auto trailing = csv::split_line("a,b,");
  REQUIRE(trailing.size() == 3);
  CHECK(trailing[2].empty());

  std::string path = tmp_path("rows.csv");
  write_file(path, "x,y\n\n1,2\n   \n3,oops\n");
  auto rows = csv::read_rows(path);
  REQUIRE(rows.size() == 3);       // blank lines skipped
  CHECK(rows[1].line == 3);        // but line numbers stay true
  CHECK(rows[2].line == 5);
  CHECK(csv::parse_double(rows[1], 0, "x", path) == 1.0);
  CHECK_THROWS_WITH_AS(csv::parse_double(rows[2], 1, "y", path),
                       Contains("column y is not a number: \"oops\""), ParseError);
  CHECK_THROWS_WITH_AS(csv::parse_double(rows[1], 5, "z", path), Contains("missing column z"),
                       ParseError);
}

TEST_CASE("report CSV writes headline numbers that read back exactly") {
  ModelSpec model = load_model(data_path("toy_rnn.json"));
  AcceleratorConfig cfg;
  cfg.waveguides_per_vdu = 10;
  DeviceParams params;
  SimReport rep = simulate(model, cfg, params);

  std::string csv_text = report_to_csv(rep);
  CHECK(csv_text.rfind("layer,passes,latency_ns,energy_laser_pJ,energy_eo_tuning_pJ,"
                       "energy_to_tuning_pJ,energy_dac_pJ,energy_adc_pJ,energy_pd_pJ,"
                       "energy_memristor_pJ,energy_nonlinearity_pJ,energy_static_pJ,"
                       "gops,epb_pJ_per_bit\n",
                       0) == 0);
  CHECK(csv_text.find("\nTOTAL,") != std::string::npos);

  std::string path = tmp_path("report.csv");
  write_report_csv(rep, path);
  auto [epb, gops] = epb_gops(rep);
  ReportKpis kpis = read_report_kpis(path);
  // format_double round-trips, so the readback is bit exact.
  CHECK(kpis.epb_pj_per_bit == epb / units::kPj);
  CHECK(kpis.gops == gops);

  std::string summary = report_summary(rep);
  CHECK(summary.find("model: toy_rnn") != std::string::npos);
  CHECK(summary.find("config: v=15 N=15 M=40 Nwg=10 (DACs per VDU: 3)") != std::string::npos);
  CHECK(summary.find("total latency: ") != std::string::npos);
  CHECK(summary.find("energy per bit: ") != std::string::npos);
  CHECK(summary.find("layers:") != std::string::npos);
  CHECK(summary.find("0:SIMPLE_RNN d2 h3 T1") != std::string::npos);
}

TEST_CASE("report KPI reader rejects other CSVs") {
  std::string path = tmp_path("not_report.csv");
  write_file(path, "a,b\n1,2\n");
  CHECK_THROWS_WITH_AS(read_report_kpis(path), Contains("not a simulation report CSV"),
                       ParseError);

  std::string no_total = tmp_path("no_total.csv");
  write_file(no_total, "layer,passes,gops,epb_pJ_per_bit\n0:FC,1,2,3\n");
  CHECK_THROWS_WITH_AS(read_report_kpis(no_total), Contains("report has no TOTAL row"),
                       ParseError);
}
