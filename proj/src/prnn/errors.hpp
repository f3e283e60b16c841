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

#ifndef PRNN_ERRORS_HPP_
#define PRNN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace prnn {

// Malformed input files or values that cannot be interpreted at all.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates a documented design constraint,
// e.g. a vector granularity above what a 16-bit MR bank supports.
class ConstraintError : public std::runtime_error {
 public:
  explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prnn

#endif  // PRNN_ERRORS_HPP_
