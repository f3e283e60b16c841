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

#include "prnn/units.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>

#include "prnn/errors.hpp"

namespace prnn {

namespace {

struct SuffixEntry {
  const char* suffix;
  double multiplier;
};

constexpr SuffixEntry kTimeSuffixes[] = {
    {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12},
};

constexpr SuffixEntry kLengthSuffixes[] = {
    {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9},
};

constexpr SuffixEntry kPowerSuffixes[] = {
    {"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"nW", 1e-9}, {"pW", 1e-12},
};

std::optional<double> lookup(const SuffixEntry* table, size_t n, std::string_view s) {
  for (size_t i = 0; i < n; ++i) {
    if (s == table[i].suffix) return table[i].multiplier;
  }
  return std::nullopt;
}

std::optional<double> power_mult(std::string_view s) {
  return lookup(kPowerSuffixes, std::size(kPowerSuffixes), s);
}

std::optional<double> length_mult(std::string_view s) {
  return lookup(kLengthSuffixes, std::size(kLengthSuffixes), s);
}

std::optional<double> time_mult(std::string_view s) {
  return lookup(kTimeSuffixes, std::size(kTimeSuffixes), s);
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Multiplier that converts the numeric part with this suffix into the
// dimension's canonical unit, or nullopt if the suffix does not belong.
std::optional<double> suffix_multiplier(std::string_view suffix, Dimension dim) {
  switch (dim) {
    case Dimension::kTime:
      return time_mult(suffix);
    case Dimension::kLength:
      return length_mult(suffix);
    case Dimension::kPower:
      return power_mult(suffix);
    case Dimension::kPowerPerLength: {
      auto slash = suffix.find('/');
      if (slash == std::string_view::npos) return std::nullopt;
      auto p = power_mult(trim(suffix.substr(0, slash)));
      auto l = length_mult(trim(suffix.substr(slash + 1)));
      if (!p || !l) return std::nullopt;
      return *p / *l;
    }
    case Dimension::kPowerPerFsr: {
      auto slash = suffix.find('/');
      if (slash == std::string_view::npos) return std::nullopt;
      if (!iequals(trim(suffix.substr(slash + 1)), "FSR")) return std::nullopt;
      return power_mult(trim(suffix.substr(0, slash)));
    }
    case Dimension::kDbm:
      if (iequals(suffix, "dBm")) return 1.0;
      return std::nullopt;
    case Dimension::kDb:
      if (iequals(suffix, "dB")) return 1.0;
      return std::nullopt;
    case Dimension::kDbPerLength: {
      auto slash = suffix.find('/');
      if (slash == std::string_view::npos) return std::nullopt;
      if (!iequals(trim(suffix.substr(0, slash)), "dB")) return std::nullopt;
      auto l = length_mult(trim(suffix.substr(slash + 1)));
      if (!l) return std::nullopt;
      return 1.0 / *l;
    }
    case Dimension::kScalar:
      if (suffix.empty()) return 1.0;
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

const char* dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::kTime: return "time";
    case Dimension::kLength: return "length";
    case Dimension::kPower: return "power";
    case Dimension::kPowerPerLength: return "power per wavelength shift";
    case Dimension::kPowerPerFsr: return "power per FSR";
    case Dimension::kDbm: return "power in dBm";
    case Dimension::kDb: return "loss in dB";
    case Dimension::kDbPerLength: return "loss per length";
    case Dimension::kScalar: return "unitless value";
  }
  return "?";
}

const char* dimension_example(Dimension dim) {
  switch (dim) {
    case Dimension::kTime: return "20ns";
    case Dimension::kLength: return "2.5nm";
    case Dimension::kPower: return "1.3mW";
    case Dimension::kPowerPerLength: return "4uW/nm";
    case Dimension::kPowerPerFsr: return "27.5mW/FSR";
    case Dimension::kDbm: return "-20dBm";
    case Dimension::kDb: return "0.02dB";
    case Dimension::kDbPerLength: return "2dB/cm";
    case Dimension::kScalar: return "0.5";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension dim, const std::string& context) {
  std::string_view s = trim(text);
  auto fail = [&](const std::string& why) -> double {
    throw ParseError(context + ": " + why + " in \"" + std::string(text) +
                     "\" (expected " + dimension_name(dim) + ", e.g. \"" +
                     dimension_example(dim) + "\")");
  };
  if (s.empty()) return fail("empty value");

  std::string num(s);  // strtod needs a terminated buffer
  char* end = nullptr;
  double magnitude = std::strtod(num.c_str(), &end);
  if (end == num.c_str()) return fail("no numeric magnitude");

  std::string_view suffix = trim(std::string_view(end));
  auto mult = suffix_multiplier(suffix, dim);
  if (!mult) {
    if (suffix.empty()) return fail("missing unit suffix");
    return fail("unknown unit \"" + std::string(suffix) + "\"");
  }
  return magnitude * *mult;
}

std::string format_double(double value) {
  // Scan every precision, not just the first that survives strtod: %g can
  // round-trip 20.0 as "2e+01" at one digit while "20" needs two.
  char buf[40];
  std::string best;
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value && (best.empty() || std::strlen(buf) < best.size()))
      best = buf;
  }
  return best;
}

}  // namespace prnn
