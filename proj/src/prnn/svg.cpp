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

#include "prnn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "prnn/errors.hpp"
#include "prnn/units.hpp"

namespace prnn::svg {

namespace {

constexpr double kWidth = 800, kHeight = 560;
constexpr double kLeft = 80, kRight = 40, kTop = 50, kBottom = 70;

const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                          "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  // Screen position of a data value on [pix_lo, pix_hi].
  double pix_lo = 0.0, pix_hi = 1.0;

  double place(double v) const {
    double a = log ? std::log10(v) : v;
    double l = log ? std::log10(lo) : lo;
    double h = log ? std::log10(hi) : hi;
    double t = h > l ? (a - l) / (h - l) : 0.5;
    return pix_lo + t * (pix_hi - pix_lo);
  }
};

// Round a linear range out to a 1/2/5 grid and list the tick values.
std::vector<double> linear_ticks(double lo, double hi, double* out_lo, double* out_hi) {
  if (hi <= lo) {
    lo -= 1.0;
    hi += 1.0;
  }
  double span = hi - lo;
  double raw = span / 5.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  double start = std::floor(lo / step) * step;
  double end = std::ceil(hi / step) * step;
  std::vector<double> ticks;
  for (double t = start; t <= end + step / 2; t += step) ticks.push_back(t);
  *out_lo = start;
  *out_hi = end;
  return ticks;
}

// Decade ticks covering a positive range.
std::vector<double> log_ticks(double lo, double hi, double* out_lo, double* out_hi) {
  int d_lo = static_cast<int>(std::floor(std::log10(lo)));
  int d_hi = static_cast<int>(std::ceil(std::log10(hi)));
  if (d_hi <= d_lo) d_hi = d_lo + 1;
  std::vector<double> ticks;
  for (int d = d_lo; d <= d_hi; ++d) ticks.push_back(std::pow(10.0, d));
  *out_lo = ticks.front();
  *out_hi = ticks.back();
  return ticks;
}

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"28\" font-family=\"sans-serif\" "
      << "font-size=\"17\" text-anchor=\"middle\">" << escape(title) << "</text>\n";
}

void draw_frame(std::ostringstream& out) {
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(kWidth - kLeft - kRight) << "\" height=\"" << num(kHeight - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"#444444\"/>\n";
}

void axis_labels(std::ostringstream& out, const std::string& x_label,
                 const std::string& y_label) {
  out << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 14)
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << num((kTop + kHeight - kBottom) / 2)
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << num((kTop + kHeight - kBottom) / 2) << ")\">"
      << escape(y_label) << "</text>\n";
}

std::string tick_text(double v) {
  // Shortest faithful form keeps tick labels tidy and deterministic.
  return prnn::format_double(v);
}

void star(std::ostringstream& out, double cx, double cy) {
  constexpr double r_out = 11.0, r_in = 4.4;
  out << "<polygon points=\"";
  for (int i = 0; i < 10; ++i) {
    double r = i % 2 == 0 ? r_out : r_in;
    double a = -1.5707963267948966 + i * 0.6283185307179586;
    out << num(cx + r * std::cos(a)) << "," << num(cy + r * std::sin(a));
    if (i != 9) out << " ";
  }
  out << "\" fill=\"#e91e8c\" stroke=\"#880e4f\"/>\n";
}

}  // namespace

std::string scatter_chart(const std::vector<ScatterPoint>& points, const std::string& title,
                          const std::string& x_label, const std::string& y_label, bool log_x,
                          bool log_y) {
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  if (!points.empty()) {
    x_min = x_max = points[0].x;
    y_min = y_max = points[0].y;
    for (const auto& p : points) {
      x_min = std::min(x_min, p.x);
      x_max = std::max(x_max, p.x);
      y_min = std::min(y_min, p.y);
      y_max = std::max(y_max, p.y);
    }
  }
  if (log_x && x_min <= 0.0) log_x = false;
  if (log_y && y_min <= 0.0) log_y = false;

  Axis xa, ya;
  std::vector<double> xticks = log_x ? log_ticks(x_min, x_max, &xa.lo, &xa.hi)
                                     : linear_ticks(x_min, x_max, &xa.lo, &xa.hi);
  std::vector<double> yticks = log_y ? log_ticks(y_min, y_max, &ya.lo, &ya.hi)
                                     : linear_ticks(y_min, y_max, &ya.lo, &ya.hi);
  xa.log = log_x;
  ya.log = log_y;
  xa.pix_lo = kLeft;
  xa.pix_hi = kWidth - kRight;
  ya.pix_lo = kHeight - kBottom;  // y grows downward in SVG
  ya.pix_hi = kTop;

  std::ostringstream out;
  open_svg(out, title);

  for (double t : xticks) {
    double x = xa.place(t);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(kHeight - kBottom) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kBottom + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << tick_text(t) << "</text>\n";
  }
  for (double t : yticks) {
    double y = ya.place(t);
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kWidth - kRight) << "\" y2=\"" << num(y) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << tick_text(t) << "</text>\n";
  }
  draw_frame(out);
  axis_labels(out, x_label, y_label);

  // Plain points first so the star is never buried.
  for (const auto& p : points) {
    if (p.best) continue;
    double cx = xa.place(p.x), cy = ya.place(p.y);
    out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"4\" fill=\""
        << (p.pareto ? "#55a868" : "#4c72b0") << "\""
        << (p.pareto ? " stroke=\"#1b5e20\" stroke-width=\"1.5\"" : "") << "/>\n";
  }
  for (const auto& p : points) {
    if (p.best) star(out, xa.place(p.x), ya.place(p.y));
  }

  out << "</svg>\n";
  return out.str();
}

std::string grouped_bars_log(const std::vector<BarGroup>& groups, const std::string& title,
                             const std::string& y_label) {
  if (groups.empty()) throw ConstraintError("bar chart needs at least one group");
  size_t series = 0;
  double v_min = 0.0, v_max = 0.0;
  bool first = true;
  for (const auto& g : groups) {
    series = std::max(series, g.bars.size());
    for (const auto& [name, v] : g.bars) {
      (void)name;
      if (v <= 0.0) throw ConstraintError("log-scale bars need positive values");
      if (first) {
        v_min = v_max = v;
        first = false;
      }
      v_min = std::min(v_min, v);
      v_max = std::max(v_max, v);
    }
  }
  if (first) throw ConstraintError("bar chart needs at least one bar");

  Axis ya;
  ya.log = true;
  std::vector<double> yticks = log_ticks(v_min, v_max, &ya.lo, &ya.hi);
  ya.pix_lo = kHeight - kBottom;
  ya.pix_hi = kTop;

  std::ostringstream out;
  open_svg(out, title);

  for (double t : yticks) {
    double y = ya.place(t);
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kWidth - kRight) << "\" y2=\"" << num(y) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << tick_text(t) << "</text>\n";
  }

  double plot_w = kWidth - kLeft - kRight;
  double group_w = plot_w / groups.size();
  double bar_w = group_w * 0.8 / static_cast<double>(std::max<size_t>(series, 1));
  double base_y = kHeight - kBottom;

  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    double gx = kLeft + gi * group_w + group_w * 0.1;
    for (size_t bi = 0; bi < g.bars.size(); ++bi) {
      double top = ya.place(g.bars[bi].second);
      out << "<rect x=\"" << num(gx + bi * bar_w) << "\" y=\"" << num(top) << "\" width=\""
          << num(bar_w) << "\" height=\"" << num(base_y - top) << "\" fill=\""
          << kPalette[bi % std::size(kPalette)] << "\"/>\n";
    }
    out << "<text x=\"" << num(gx + group_w * 0.4) << "\" y=\"" << num(base_y + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << escape(g.label) << "</text>\n";
  }
  draw_frame(out);
  axis_labels(out, "", y_label);

  // Legend from the widest group's series names.
  const BarGroup* legend_src = &groups[0];
  for (const auto& g : groups)
    if (g.bars.size() > legend_src->bars.size()) legend_src = &g;
  double lx = kLeft + 10, ly = kTop + 14;
  for (size_t bi = 0; bi < legend_src->bars.size(); ++bi) {
    out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 9) << "\" width=\"12\" "
        << "height=\"12\" fill=\"" << kPalette[bi % std::size(kPalette)] << "\"/>\n";
    out << "<text x=\"" << num(lx + 16) << "\" y=\"" << num(ly + 1)
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << escape(legend_src->bars[bi].first) << "</text>\n";
    ly += 17;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace prnn::svg
