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

#include "prnn/dse.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "prnn/errors.hpp"
#include "prnn/params_io.hpp"
#include "prnn/svg.hpp"
#include "prnn/units.hpp"

namespace prnn {

namespace {

using nlohmann::json;

void check_range(const std::vector<int>& range, const char* name) {
  if (range.empty()) throw ConstraintError(std::string("empty sweep range for ") + name);
  for (int v : range)
    if (v < 1) throw ConstraintError(std::string("sweep range for ") + name + " must be >= 1");
}

std::tuple<int, int, int, int> config_key(const AcceleratorConfig& c) {
  return {c.vector_granularity, c.vdus_per_mac, c.mac_units, c.waveguides_per_vdu};
}

long long hardware_product(const AcceleratorConfig& c) {
  return 1LL * c.vector_granularity * c.vdus_per_mac * c.mac_units * c.waveguides_per_vdu;
}

void evaluate_point(DsePoint& point, const SweepSpec& spec) {
  if (!point.feasible) return;
  try {
    double epb_sum = 0.0, gops_sum = 0.0;
    for (const auto& model : spec.models) {
      SimReport report = simulate(model, point.config, spec.params, spec.constraint);
      auto [epb, gops] = epb_gops(report);
      epb_sum += epb;
      gops_sum += gops;
    }
    point.mean_epb = epb_sum / spec.models.size();
    point.mean_gops = gops_sum / spec.models.size();
    point.score = point.mean_epb / point.mean_gops;
  } catch (const std::exception& e) {
    point.feasible = false;
    point.reason = e.what();
    point.mean_epb = point.mean_gops = point.score = 0.0;
  }
}

std::vector<int> parse_range(const json& node, const std::string& where) {
  std::vector<int> values;
  if (node.is_array()) {
    for (const auto& v : node) {
      if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ParseError(where + ": grid values must be positive integers");
      values.push_back(v.get<int>());
    }
  } else if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      (void)value;
      if (key != "from" && key != "to" && key != "step")
        throw ParseError(where + ": unknown range key \"" + key + "\"");
    }
    if (!node.contains("from") || !node.contains("to"))
      throw ParseError(where + ": range needs \"from\" and \"to\"");
    int from = node["from"].get<int>();
    int to = node["to"].get<int>();
    int step = node.value("step", 1);
    if (from < 1 || to < from) throw ParseError(where + ": need 1 <= from <= to");
    if (step < 1) throw ParseError(where + ": stride must be >= 1");
    for (int v = from; v <= to; v += step) values.push_back(v);
  } else {
    throw ParseError(where + ": grid must be a list or a {from,to,step} range");
  }
  if (values.empty()) throw ParseError(where + ": empty grid");
  return values;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve(const std::string& origin, const std::string& rel) {
  std::filesystem::path p(rel);
  if (p.is_absolute()) return rel;
  return (std::filesystem::path(origin).parent_path() / p).string();
}

}  // namespace

void SweepSpec::validate() const {
  check_range(v_range, "v");
  check_range(n_range, "n");
  check_range(m_range, "m");
  check_range(nwg_range, "nwg");
  if (models.empty()) throw ConstraintError("sweep needs at least one model");
  for (const auto& m : models) m.validate();
  params.validate();
}

std::vector<DsePoint> enumerate_configs(const SweepSpec& spec) {
  spec.validate();
  int limit = spec.constraint.bank_limit();
  std::vector<DsePoint> points;
  for (int v : spec.v_range)
    for (int n : spec.n_range)
      for (int m : spec.m_range)
        for (int nwg : spec.nwg_range) {
          DsePoint p;
          p.config.vector_granularity = v;
          p.config.vdus_per_mac = n;
          p.config.mac_units = m;
          p.config.waveguides_per_vdu = nwg;
          p.feasible = v <= limit;
          if (!p.feasible)
            p.reason = "v exceeds 16-bit bank limit (" + std::to_string(limit) + ")";
          points.push_back(std::move(p));
        }
  return points;
}

std::vector<DsePoint> evaluate(const SweepSpec& spec) {
  std::vector<DsePoint> points = enumerate_configs(spec);

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, points.size());
  if (workers <= 1) {
    for (auto& p : points) evaluate_point(p, spec);
    return points;
  }

  // Each slot is written by exactly one worker; completion order does not
  // matter because results land at their enumeration index.
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1))
        evaluate_point(points[i], spec);
    });
  }
  for (auto& t : pool) t.join();
  return points;
}

const DsePoint& best_config(const std::vector<DsePoint>& points) {
  const DsePoint* best = nullptr;
  for (const auto& p : points) {
    if (!p.feasible) continue;
    if (!best) {
      best = &p;
      continue;
    }
    if (p.score != best->score) {
      if (p.score < best->score) best = &p;
      continue;
    }
    long long hp = hardware_product(p.config), hb = hardware_product(best->config);
    if (hp != hb) {
      if (hp < hb) best = &p;
      continue;
    }
    if (config_key(p.config) < config_key(best->config)) best = &p;
  }
  if (!best) throw ConstraintError("no feasible configuration in the sweep");
  return *best;
}

std::vector<size_t> pareto_front(const std::vector<DsePoint>& points) {
  std::vector<size_t> front;
  for (size_t i = 0; i < points.size(); ++i) {
    if (!points[i].feasible) continue;
    bool dominated = false;
    for (size_t j = 0; j < points.size() && !dominated; ++j) {
      if (i == j || !points[j].feasible) continue;
      bool no_worse = points[j].mean_epb <= points[i].mean_epb &&
                      points[j].mean_gops >= points[i].mean_gops;
      bool better = points[j].mean_epb < points[i].mean_epb ||
                    points[j].mean_gops > points[i].mean_gops;
      dominated = no_worse && better;
    }
    if (!dominated) front.push_back(i);
  }
  return front;
}

SweepSpec parse_sweep(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": sweep spec must be a JSON object");

  SweepSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "v")
      spec.v_range = parse_range(value, origin + ": v");
    else if (key == "n")
      spec.n_range = parse_range(value, origin + ": n");
    else if (key == "m")
      spec.m_range = parse_range(value, origin + ": m");
    else if (key == "nwg")
      spec.nwg_range = parse_range(value, origin + ": nwg");
    else if (key == "models") {
      if (!value.is_array() || value.empty())
        throw ParseError(origin + ": \"models\" must be a non-empty list");
      for (const auto& entry : value) {
        if (entry.is_string()) {
          spec.models.push_back(load_model(resolve(origin, entry.get<std::string>())));
        } else if (entry.is_object()) {
          spec.models.push_back(parse_model(entry.dump(), origin + ": inline model"));
        } else {
          throw ParseError(origin + ": model entries must be paths or model objects");
        }
      }
    } else if (key == "params") {
      if (value.is_string())
        spec.params = load_device_params(resolve(origin, value.get<std::string>()));
      else if (value.is_object())
        spec.params = parse_device_params(value.dump(), origin + ": inline params");
      else
        throw ParseError(origin + ": \"params\" must be a path or an object");
    } else if (key == "constraint") {
      if (!value.is_object()) throw ParseError(origin + ": \"constraint\" must be an object");
      for (const auto& [ck, cv] : value.items()) {
        if (ck == "q")
          spec.constraint.q_factor = cv.get<double>();
        else if (ck == "cs_nm")
          spec.constraint.channel_spacing = cv.get<double>() * units::kNm;
        else if (ck == "lambda_nm")
          spec.constraint.center_wavelength = cv.get<double>() * units::kNm;
        else if (ck == "calibration_k")
          spec.constraint.calibration_k = cv.get<double>();
        else
          throw ParseError(origin + ": unknown constraint key \"" + ck + "\"");
      }
    } else {
      throw ParseError(origin + ": unknown sweep key \"" + key + "\"");
    }
  }
  if (spec.models.empty()) throw ParseError(origin + ": sweep needs a \"models\" list");
  try {
    spec.validate();
  } catch (const ConstraintError& e) {
    throw ParseError(origin + ": " + e.what());
  }
  return spec;
}

SweepSpec load_sweep(const std::string& path) { return parse_sweep(read_file(path), path); }

std::string dse_results_csv(const std::vector<DsePoint>& points) {
  std::ostringstream out;
  out << "v,n,m,nwg,feasible,mean_epb_pJ_bit,mean_gops,score\n";
  for (const auto& p : points) {
    out << p.config.vector_granularity << ',' << p.config.vdus_per_mac << ','
        << p.config.mac_units << ',' << p.config.waveguides_per_vdu << ','
        << (p.feasible ? 1 : 0) << ',';
    if (p.feasible) {
      out << format_double(p.mean_epb / units::kPj) << ',' << format_double(p.mean_gops)
          << ',' << format_double(p.score / units::kPj);
    } else {
      out << ",,";
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<char> point_flags(const std::vector<DsePoint>& points, bool& any_feasible,
                              size_t& best_index) {
  // flags: 0 plain, 1 pareto, 2 best
  std::vector<char> flags(points.size(), 0);
  for (size_t i : pareto_front(points)) flags[i] = 1;
  any_feasible = false;
  best_index = 0;
  for (const auto& p : points)
    if (p.feasible) any_feasible = true;
  if (any_feasible) {
    const DsePoint& best = best_config(points);
    best_index = static_cast<size_t>(&best - points.data());
    flags[best_index] = 2;
  }
  return flags;
}

}  // namespace

std::string dse_scatter_csv(const std::vector<DsePoint>& points) {
  bool any_feasible = false;
  size_t best_index = 0;
  std::vector<char> flags = point_flags(points, any_feasible, best_index);

  std::ostringstream out;
  out << "gops,epb_pJ_bit,v,n,m,nwg,best,pareto\n";
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!p.feasible) continue;
    out << format_double(p.mean_gops) << ',' << format_double(p.mean_epb / units::kPj) << ','
        << p.config.vector_granularity << ',' << p.config.vdus_per_mac << ','
        << p.config.mac_units << ',' << p.config.waveguides_per_vdu << ','
        << (flags[i] == 2 ? 1 : 0) << ',' << (flags[i] != 0 ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string dse_scatter_svg(const std::vector<DsePoint>& points) {
  bool any_feasible = false;
  size_t best_index = 0;
  std::vector<char> flags = point_flags(points, any_feasible, best_index);

  std::vector<svg::ScatterPoint> dots;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!p.feasible) continue;
    svg::ScatterPoint dot;
    dot.x = p.mean_gops;
    dot.y = p.mean_epb / units::kPj;
    dot.best = flags[i] == 2;
    dot.pareto = flags[i] != 0;
    dots.push_back(dot);
  }
  return svg::scatter_chart(dots, "Design space: energy per bit vs throughput",
                            "mean throughput (GOPS)", "mean energy per bit (pJ/bit)",
                            /*log_x=*/true, /*log_y=*/true);
}

}  // namespace prnn
