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

// Pivot-count bounds for the antistalling rule and the report that compares
// them with what a run observed.
//
//   per-vertex degenerate cap   n - m - 1            (any improving direction)
//                               min(n-m-1, m-1)      (direction toward a vertex)
//   distinct vertices           (n-m) ceil(lambda ln(m D/d)),  lambda = (n-m) D/d
//   total pivots                min(n-m, m) (n-m) ceil((n-m)(D/d) ln(m D/d))
//   integral data               same with D/d replaced by Delta_A^2 |b|_1
//
// D and d are the largest and smallest nonzero coordinates over all basic
// feasible solutions; Delta_A is the largest absolute subdeterminant of A.
// Logarithms are evaluated in double precision and ceilings are taken after
// subtracting a 1e-12 guard.

#ifndef ANTISTALL_CORE_BOUNDS_HPP_
#define ANTISTALL_CORE_BOUNDS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/matrix.hpp"
#include "core/scalar.hpp"

namespace antistall {

// Throws std::invalid_argument unless n > m >= 1.
long long degenerate_pivot_cap(int n, int m, bool guided);

// Throws std::invalid_argument unless Delta >= delta > 0.
long long distinct_vertex_cap(int n, int m, const Rational& delta_max, const Rational& delta_min);
long long total_pivot_cap(int n, int m, const Rational& delta_max, const Rational& delta_min);
long long total_pivot_cap(int n, int m, double delta_max, double delta_min);

// Throws std::invalid_argument for non-integral or sub-unit arguments.
long long integral_pivot_cap(int n, int m, const Rational& delta_a, const Rational& b_l1);

// gap_after <= (1 - 1/lambda) gap_before; exact for rationals, relative
// tolerance 1e-9 for doubles.
bool contraction_check(const Rational& gap_before, const Rational& gap_after, const Rational& lambda);
bool contraction_check(double gap_before, double gap_after, double lambda);

// Largest |det| over all square submatrices, or nullopt if more than
// `budget` minors would have to be evaluated.
std::optional<Rational> max_abs_subdeterminant(const DenseMatrix<Rational>& a, long long budget = 2'000'000);

enum class Verdict { kPass, kFail, kNotApplicable };
const char* verdict_name(Verdict v);

struct BoundReport {
  int n = 0;
  int m = 0;
  bool antistalling = false;
  bool guided = false;

  std::optional<Rational> delta_max;
  std::optional<Rational> delta_min;
  std::optional<Rational> delta_a;
  std::optional<Rational> b_l1;

  long long theorem1_cap = 0;
  long long remark1_cap = 0;
  std::optional<long long> lemma1_vertices;
  std::optional<long long> theorem2_total;
  // Theorem 2 plus the n - m finishing pivots at the optimal vertex.
  std::optional<long long> theorem2_with_finisher;
  std::optional<long long> corollary1_total;

  long long observed_max_consecutive_degenerate = 0;
  long long observed_distinct_vertices = 0;  // vertex changes (non-degenerate pivots)
  long long observed_total_pivots = 0;
  long long observed_finisher_pivots = 0;

  std::vector<std::pair<std::string, Verdict>> verdicts;

  // Fills the caps from n, m and whatever of Delta/delta/Delta_A/|b|_1 is set.
  void compute_caps();
  // Compares observations to caps. Caps only apply to antistalling runs.
  void evaluate();
  bool all_pass() const;
  // "theorem1=pass;remark1=pass;..."
  std::string verdict_string() const;
};

}  // namespace antistall

#endif  // ANTISTALL_CORE_BOUNDS_HPP_
