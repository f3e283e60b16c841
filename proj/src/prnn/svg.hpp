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

// Small self-contained SVG chart emitters. Everything is rendered from the
// data alone with fixed formatting, so identical inputs give identical
// bytes; there are no timestamps and no dependence on map iteration order.

#ifndef PRNN_SVG_HPP_
#define PRNN_SVG_HPP_

#include <string>
#include <utility>
#include <vector>

namespace prnn::svg {

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  bool best = false;    // drawn as a star
  bool pareto = false;  // outlined
};

std::string scatter_chart(const std::vector<ScatterPoint>& points, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          bool log_x = false, bool log_y = false);

struct BarGroup {
  std::string label;
  std::vector<std::pair<std::string, double>> bars;  // (series, value), value > 0
};

// Grouped bars on a log10 value axis, one cluster per group.
std::string grouped_bars_log(const std::vector<BarGroup>& groups, const std::string& title,
                             const std::string& y_label);

}  // namespace prnn::svg

#endif  // PRNN_SVG_HPP_
