// Copyright 2026 The Antistall Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// MPS reader and writer.
//
// Accepted sections, in this order: NAME, OBJSENSE, ROWS, COLUMNS, RHS,
// RANGES, BOUNDS, ENDATA. Fixed-column and whitespace-separated files are
// both read; the format is decided by the first COLUMNS data line. Numbers
// are read exactly as the decimals they print.
//
// A ranged row is split in two: the original row keeps its own side and a
// second row named "<row>_rng" carries the other one.
//
//   row type   R sign   interval
//   E          +        [h, h + |R|]
//   E          -        [h - |R|, h]
//   L          any      [h - |R|, h]
//   G          any      [h, h + |R|]
//
// Rejected: FR bounds (free variables), integer MARKER lines, integer bound
// types. Warnings are issued for a right-hand side on the objective row
// (ignored), extra N rows (dropped), and UP bounds below zero on a column
// with default lower bound (lower becomes -inf).

#ifndef ANTISTALL_CORE_MPS_HPP_
#define ANTISTALL_CORE_MPS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core/lp_model.hpp"

namespace antistall {

class MpsError : public std::runtime_error {
 public:
  MpsError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct MpsWarning {
  int line = 0;
  std::string message;
};

GeneralLP parse_mps(std::string_view text, std::vector<MpsWarning>* warnings = nullptr);

// Throws MpsError (line 0) if the file cannot be read.
GeneralLP read_mps_file(const std::string& path, std::vector<MpsWarning>* warnings = nullptr);

// Free-format MPS. Names containing whitespace have it replaced by '_'.
// Values are written as exact decimals, or as p/q when the decimal does not
// terminate (this reader accepts both).
std::string write_mps(const GeneralLP& gp);

}  // namespace antistall

#endif  // ANTISTALL_CORE_MPS_HPP_
