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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "prnn/compare.hpp"
#include "prnn/errors.hpp"

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

ReportEntry entry(const char* tag, double epb_pj, double gops) {
  ReportEntry e;
  e.model_tag = tag;
  e.kpis.epb_pj_per_bit = epb_pj;
  e.kpis.gops = gops;
  return e;
}

BaselineRecord baseline(const char* name, const char* tag, double epb_pj, double gops) {
  BaselineRecord b;
  b.name = name;
  b.model_tag = tag;
  b.epb_pj_per_bit = epb_pj;
  b.gops = gops;
  return b;
}

}  // namespace

TEST_CASE("baseline files load in order with their metrics") {
  auto records = load_baselines(data_path("baselines_example.csv"));
  REQUIRE(records.size() == 6);
  CHECK(records[0].name == "edge-dsp");
  CHECK(records[0].model_tag == "TS-LSTM");
  CHECK(records[0].epb_pj_per_bit == 5200.0);
  CHECK(records[0].gops == 1.8);
  CHECK(records[3].name == "mobile-npu");
  CHECK(records[3].model_tag == "LM-LSTM");
  CHECK(records[5].name == "fpga-overlay");
}

TEST_CASE("baseline file validation points at the offending line") {
  std::string bad_header = tmp_path("baselines_bad_header.csv");
  write_file(bad_header, "accel,tag,epb,gops\na,b,1,2\n");
  CHECK_THROWS_WITH_AS(load_baselines(bad_header),
                       Contains("header must be name,model_tag,epb_pj_per_bit,gops"),
                       ParseError);

  std::string bad_value = tmp_path("baselines_bad_value.csv");
  write_file(bad_value, "name,model_tag,epb_pj_per_bit,gops\na,b,0,2\n");
  CHECK_THROWS_WITH_AS(load_baselines(bad_value),
                       Contains(":2: epb_pj_per_bit must be > 0"), ParseError);

  std::string bad_gops = tmp_path("baselines_bad_gops.csv");
  write_file(bad_gops, "name,model_tag,epb_pj_per_bit,gops\na,b,1,-3\n");
  CHECK_THROWS_WITH_AS(load_baselines(bad_gops), Contains("gops must be > 0"), ParseError);

  std::string missing_tag = tmp_path("baselines_missing_tag.csv");
  write_file(missing_tag, "name,model_tag,epb_pj_per_bit,gops\na,,1,3\n");
  CHECK_THROWS_WITH_AS(load_baselines(missing_tag),
                       Contains("name and model_tag must be non-empty"), ParseError);

  std::string short_row = tmp_path("baselines_short_row.csv");
  write_file(short_row, "name,model_tag,epb_pj_per_bit,gops\na,b,1\n");
  CHECK_THROWS_WITH_AS(load_baselines(short_row), Contains("expected 4 columns"), ParseError);
}

TEST_CASE("comparison ratios follow their definitions") {
  // A report identical to its baseline scores 1.0 on both axes.
  std::vector<BaselineRecord> bases = {baseline("acc", "tag", 800.0, 4.0)};
  CompareResult self = compare_reports(bases, {entry("tag", 800.0, 4.0)});
  REQUIRE(self.rows.size() == 2);  // match + GEOMEAN
  CHECK(self.rows[0].epb_ratio == Approx(1.0).epsilon(1e-15));
  CHECK(self.rows[0].gops_ratio == Approx(1.0).epsilon(1e-15));
  CHECK(self.rows[1].model_tag == "GEOMEAN");
  CHECK(self.rows[1].epb_ratio == Approx(1.0).epsilon(1e-12));

  // Scaling the simulated numbers scales the ratios by construction:
  // 4x lower EPB -> epb_ratio 4, 3x higher GOPS -> gops_ratio 3.
  CompareResult scaled = compare_reports(bases, {entry("tag", 200.0, 12.0)});
  CHECK(scaled.rows[0].epb_ratio == Approx(4.0).epsilon(1e-12));
  CHECK(scaled.rows[0].gops_ratio == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("geometric means aggregate per accelerator") {
  std::vector<BaselineRecord> bases = {
      baseline("alpha", "t1", 100.0, 1.0),
      baseline("alpha", "t2", 900.0, 2.0),
      baseline("beta", "t1", 50.0, 8.0),
  };
  std::vector<ReportEntry> reports = {entry("t1", 10.0, 4.0), entry("t2", 30.0, 10.0)};
  CompareResult result = compare_reports(bases, reports);

  // 3 matches, then one GEOMEAN per accelerator in first-appearance order.
  REQUIRE(result.rows.size() == 5);
  CHECK(result.rows[3].accelerator == "alpha");
  CHECK(result.rows[3].model_tag == "GEOMEAN");
  CHECK(result.rows[4].accelerator == "beta");

  double alpha_epb = std::exp((std::log(100.0 / 10.0) + std::log(900.0 / 30.0)) / 2.0);
  double alpha_gops = std::exp((std::log(4.0 / 1.0) + std::log(10.0 / 2.0)) / 2.0);
  CHECK(result.rows[3].epb_ratio == Approx(alpha_epb).epsilon(1e-12));
  CHECK(result.rows[3].gops_ratio == Approx(alpha_gops).epsilon(1e-12));
  // Single-match accelerator: geomean equals the lone ratio.
  CHECK(result.rows[4].epb_ratio == Approx(50.0 / 10.0).epsilon(1e-12));
  CHECK(result.rows[4].gops_ratio == Approx(4.0 / 8.0).epsilon(1e-12));
  CHECK(result.skipped.empty());
}

TEST_CASE("baselines without a matching report are skipped, not invented") {
  auto bases = load_baselines(data_path("baselines_example.csv"));
  CompareResult result = compare_reports(bases, {entry("TS-LSTM", 100.0, 50.0)});

  // Two TS-LSTM matches (edge-dsp, mobile-npu) + two GEOMEAN rows.
  REQUIRE(result.rows.size() == 4);
  CHECK(result.rows[0].accelerator == "edge-dsp");
  CHECK(result.rows[1].accelerator == "mobile-npu");
  CHECK(result.rows[2].model_tag == "GEOMEAN");
  REQUIRE(result.skipped.size() == 4);
  CHECK(result.skipped[0].model_tag == "SA-GRU");
  CHECK(result.skipped[0].name == "edge-dsp");
  CHECK(result.skipped[1].model_tag == "LM-LSTM");

  CHECK(result.rows[0].epb_ratio == Approx(5200.0 / 100.0).epsilon(1e-12));
  CHECK(result.rows[0].gops_ratio == Approx(50.0 / 1.8).epsilon(1e-12));
}

TEST_CASE("comparison rejects empty or nonpositive inputs") {
  std::vector<BaselineRecord> bases = {baseline("acc", "tag", 800.0, 4.0)};
  CHECK_THROWS_WITH_AS(compare_reports(bases, {}),
                       "comparison needs at least one report", ConstraintError);
  CHECK_THROWS_WITH_AS(compare_reports(bases, {entry("tag", 0.0, 4.0)}),
                       Contains("nonpositive EPB or GOPS"), ConstraintError);
  CHECK_THROWS_WITH_AS(compare_reports(bases, {entry("tag", 5.0, -1.0)}),
                       Contains("tag \"tag\""), ConstraintError);
}

TEST_CASE("comparison outputs are well-formed") {
  auto bases = load_baselines(data_path("baselines_example.csv"));
  std::vector<ReportEntry> reports = {entry("TS-LSTM", 120.0, 40.0),
                                      entry("SA-GRU", 90.0, 55.0),
                                      entry("LM-LSTM", 150.0, 35.0)};
  CompareResult result = compare_reports(bases, reports);
  REQUIRE(result.skipped.empty());

  std::string csv = compare_csv(result);
  CHECK(csv.rfind("accelerator,model_tag,epb_ratio,gops_ratio\n", 0) == 0);
  CHECK(csv.find("edge-dsp,TS-LSTM,") != std::string::npos);
  CHECK(csv.find("edge-dsp,GEOMEAN,") != std::string::npos);
  CHECK(csv.find("mobile-npu,GEOMEAN,") != std::string::npos);
  CHECK(csv.find("fpga-overlay,GEOMEAN,") != std::string::npos);
  CHECK(csv.find("nan") == std::string::npos);

  std::string epb_svg = compare_epb_svg(result);
  std::string gops_svg = compare_gops_svg(result);
  CHECK(epb_svg.rfind("<svg", 0) == 0);
  CHECK(gops_svg.rfind("<svg", 0) == 0);
  CHECK(epb_svg.find("TS-LSTM") != std::string::npos);
  CHECK(epb_svg.find("edge-dsp") != std::string::npos);
  CHECK(epb_svg.find("nan") == std::string::npos);
  CHECK(gops_svg.find("nan") == std::string::npos);
  CHECK(epb_svg != gops_svg);
}
