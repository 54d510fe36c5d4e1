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

// Exact ground truth for small LPs by enumerating every m-subset of columns.

#ifndef ANTISTALL_CORE_ORACLE_HPP_
#define ANTISTALL_CORE_ORACLE_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "core/lp_model.hpp"
#include "core/simplex_core.hpp"

namespace antistall {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BasisEntry {
  Basis basis;  // sorted
  std::vector<Rational> x;
  Rational objective;
  bool feasible = false;
  bool degenerate = false;       // some basic variable is zero
  bool optimal_vertex = false;   // feasible and attains the optimum
  bool optimal_basis = false;    // feasible and all reduced costs >= 0
  bool unbounded_ray = false;    // feasible and some cbar_f < 0 with Abar_.f <= 0
  int vertex = -1;               // index into Enumeration::vertices when feasible
};

struct Enumeration {
  int n = 0;
  int m = 0;
  long long subsets = 0;              // C(n, m)
  std::vector<BasisEntry> bases;      // nonsingular subsets, lexicographic order
  std::vector<std::vector<Rational>> vertices;  // distinct feasible x, first-seen order
  std::vector<int> bases_per_vertex;

  SolveStatus status = SolveStatus::kInfeasible;  // kOptimal, kUnbounded or kInfeasible
  std::optional<Rational> optimum;
  int optimal_vertex = -1;
  std::optional<Basis> optimal_basis;  // first optimal basis

  // Largest and smallest nonzero coordinate over all basic feasible solutions.
  std::optional<Rational> delta_max;
  std::optional<Rational> delta_min;
};

// Throws OracleError if C(n, m) exceeds `cap`. Work is split across
// `threads` workers (0: hardware concurrency); the result does not depend on
// the thread count.
Enumeration enumerate_bases(const StandardLP<Rational>& lp, long long cap = 1'000'000, unsigned threads = 0);

struct OracleOptimum {
  SolveStatus status = SolveStatus::kInfeasible;
  Rational value;
  std::vector<Rational> vertex;
  Basis basis;
};

OracleOptimum oracle_optimum(const StandardLP<Rational>& lp, long long cap = 1'000'000);

long long binomial_capped(int n, int k, long long cap);

}  // namespace antistall

#endif  // ANTISTALL_CORE_ORACLE_HPP_
