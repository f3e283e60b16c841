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

#ifndef PRNN_UNITS_HPP_
#define PRNN_UNITS_HPP_

#include <string>
#include <string_view>

namespace prnn {

// All internal quantities are plain SI doubles: meters, seconds, watts,
// joules. Conversion happens once at the file / API boundary.
namespace units {

inline constexpr double kNm = 1e-9;
inline constexpr double kUm = 1e-6;
inline constexpr double kMm = 1e-3;
inline constexpr double kCm = 1e-2;

inline constexpr double kPs = 1e-12;
inline constexpr double kNs = 1e-9;
inline constexpr double kUs = 1e-6;
inline constexpr double kMs = 1e-3;

inline constexpr double kNw = 1e-9;
inline constexpr double kUw = 1e-6;
inline constexpr double kMw = 1e-3;

inline constexpr double kPj = 1e-12;
inline constexpr double kNj = 1e-9;

}  // namespace units

// What a parsed quantity is expected to measure. Decibel flavours are kept
// as-is (log domain); everything else converts to base SI.
enum class Dimension {
  kTime,            // -> seconds
  kLength,          // -> meters
  kPower,           // -> watts
  kPowerPerLength,  // -> watts per meter (e.g. "4uW/nm")
  kPowerPerFsr,     // -> watts for a full-FSR shift (e.g. "27.5mW/FSR")
  kDbm,             // stays dBm
  kDb,              // stays dB
  kDbPerLength,     // -> dB per meter (e.g. "2dB/cm")
  kScalar,          // unitless
};

// Parses a magnitude-with-suffix string such as "20ns", "4uW/nm" or
// "-20dBm" into the SI value for the given dimension. Whitespace between
// number and suffix is tolerated. Throws ParseError on anything else;
// `context` names the offending field in the message.
double parse_quantity(std::string_view text, Dimension dim, const std::string& context);

const char* dimension_name(Dimension dim);

// Example suffix shown in error messages for a dimension ("ns", "uW/nm", ...).
const char* dimension_example(Dimension dim);

// Shortest of a fixed set of representations, locale independent. Used for
// every number we write into CSV or SVG output so that repeated runs are
// byte identical.
std::string format_double(double value);

}  // namespace prnn

#endif  // PRNN_UNITS_HPP_
