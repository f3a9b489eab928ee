// Copyright 2026 The spreadrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spreadrec {

// Invalid argument value (fractions, counts, beta, list lengths).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An id outside the graph dimensions, at construction or query time.
class IdRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed input file. line() is 1-based; 0 when the whole file is at fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Inputs that are individually valid but inconsistent with each other,
// e.g. a probe edge that is also a training edge.
class DataIntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace spreadrec
