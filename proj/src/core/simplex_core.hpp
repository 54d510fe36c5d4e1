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

// Revised simplex iteration engine. A SimplexState owns the basis, the
// current basic feasible solution, its factorization and the run log; pivot
// rules drive it through ratio_test() and pivot().

#ifndef ANTISTALL_CORE_SIMPLEX_CORE_HPP_
#define ANTISTALL_CORE_SIMPLEX_CORE_HPP_

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/basis_engine.hpp"
#include "core/lp_model.hpp"

namespace antistall {

enum class SolveStatus { kOptimal, kUnbounded, kInfeasible, kIterationLimit, kCycled, kTimeLimit };
const char* status_name(SolveStatus s);

// Provenance of a log record. kCaseIII marks a direction reroute (no pivot);
// kCaseIIIThenII the Case II pivot that immediately follows it.
enum class CaseLabel { kCaseI, kCaseII, kCaseIII, kCaseIIIThenII, kClassic, kFinisher };
const char* case_label_name(CaseLabel l);
std::optional<CaseLabel> parse_case_label(const std::string& s);

template <class T>
struct PivotRecord {
  long iteration = 0;  // index of the pivot (reroutes carry the index of the pivot they precede)
  bool is_pivot = true;
  int entering = -1;
  int leaving = -1;
  CaseLabel label = CaseLabel::kClassic;
  bool degenerate = false;
  T step = 0;
  T objective_before = 0;
  T objective_after = 0;
  bool feasible_after = true;
  std::optional<T> pivot_element;  // Abar_{leaving, entering}

  // Antistalling bookkeeping.
  std::optional<int> q2_before;
  std::optional<int> q2_after;
  std::optional<T> direction_cost;        // c'y of the direction the decision used
  std::optional<T> direction_at_leaving;  // y_leaving of that direction
  std::optional<T> alpha;                 // reroute step length
  std::vector<T> direction;               // full y (detail logging only)
  std::vector<int> basis_before;          // sorted basis (detail logging only)
};

template <class T>
struct RunLog {
  std::string rule;
  bool guided = false;
  int n = 0;
  int m = 0;
  T initial_objective = 0;
  std::vector<PivotRecord<T>> records;
};

class InvalidPivot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A runtime bound or invariant check that failed during a run.
struct Violation {
  long pivot = -1;
  std::string claim;
  std::string detail;
};

template <class T>
class SimplexState {
 public:
  // Precondition: `basis` is feasible for `lp`. Throws BasisError if singular.
  SimplexState(const StandardLP<T>& lp, const Basis& basis, bool detail_log = false);

  const StandardLP<T>& lp() const { return *lp_; }
  const Basis& basis() const { return factor_.basis(); }
  const BasisFactorization<T>& factorization() const { return factor_; }
  const Tolerance<T>& tol() const { return tol_; }
  const std::vector<T>& x() const { return x_; }
  const std::vector<T>& reduced_costs() const { return rc_.values; }
  bool is_optimal() const { return rc_.optimal; }
  T objective() const { return lp_->objective(x_); }
  bool is_basic(int j) const { return factor_.is_basic(j); }
  int position(int j) const { return factor_.position(j); }
  bool detail_log() const { return detail_log_; }

  std::vector<int> nonbasic() const;
  std::vector<int> zero_basics() const;  // Z(B), ascending
  BasicSolution<T> solution() const;

  // Abar_{.f} indexed by basis position.
  std::vector<T> tableau_column(int f) { return factor_.tableau_column(f); }

  RunLog<T>& log() { return log_; }
  const RunLog<T>& log() const { return log_; }

  long total_pivots() const { return total_pivots_; }
  long degenerate_pivots() const { return degenerate_pivots_; }
  long finisher_pivots() const { return finisher_pivots_; }
  int consecutive_degenerate() const { return consecutive_degenerate_; }
  int max_consecutive_degenerate() const { return max_consecutive_degenerate_; }
  long distinct_vertices() const { return distinct_vertices_; }
  // Increments on every non-degenerate pivot.
  long vertex_id() const { return distinct_vertices_ - 1; }

  std::vector<Violation>& violations() { return violations_; }
  const std::vector<Violation>& violations() const { return violations_; }

  // Performs the exchange; used by pivot().
  PivotRecord<T>& apply_pivot(int f, int g, CaseLabel label);

 private:
  const StandardLP<T>* lp_;
  Tolerance<T> tol_;
  BasisFactorization<T> factor_;
  std::vector<T> x_;
  ReducedCosts<T> rc_;
  RunLog<T> log_;
  bool detail_log_;
  long total_pivots_ = 0;
  long degenerate_pivots_ = 0;
  long finisher_pivots_ = 0;
  int consecutive_degenerate_ = 0;
  int max_consecutive_degenerate_ = 0;
  long distinct_vertices_ = 1;
  std::vector<Violation> violations_;
};

template <class T>
struct RatioTest {
  bool unbounded = false;
  int leaving = -1;  // variable index
  T step = 0;
};

// theta = min { x_i / Abar_if : i in B, Abar_if > 0 }, ties to the smallest
// variable index. Precondition: f nonbasic.
template <class T>
RatioTest<T> ratio_test(SimplexState<T>& state, int f);

// Basis exchange B' = B - {g} + {f}. Throws InvalidPivot if Abar_gf = 0 or
// the step would be negative.
template <class T>
PivotRecord<T>& pivot(SimplexState<T>& state, int f, int g, CaseLabel label = CaseLabel::kClassic);

template <class T>
struct PhaseOneResult {
  bool feasible = false;
  Basis basis;
  long pivots = 0;
  int artificials = 0;
};

// Finds a feasible basis: a crash basis of singleton columns where possible,
// otherwise minimizes the sum of artificials with Bland's rule and drives
// zero-level artificials out. Precondition: A has full row rank.
template <class T>
PhaseOneResult<T> phase_one(const StandardLP<T>& lp, long max_iterations = -1);

enum class StepOutcome { kPivoted, kOptimal, kUnbounded };

// A pivot rule advances the state by at least one pivot per step, or
// reports that it cannot.
template <class T>
class PivotRule {
 public:
  virtual ~PivotRule() = default;
  virtual std::string name() const = 0;
  virtual bool guided() const { return false; }
  virtual StepOutcome step(SimplexState<T>& state) = 0;
};

template <class T>
struct SolveOptions {
  long max_iterations = -1;  // -1: 10 (n + m)^2
  std::optional<Basis> initial_basis;
  bool detect_cycles = true;
  std::optional<bool> detail_log;  // default: n <= 200
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

template <class T>
struct SolveResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  Basis basis;
  std::vector<T> x;
  T objective = 0;           // standard-form objective c'x
  T original_objective = 0;  // objective of the general-form problem
  RunLog<T> log;
  long pivots = 0;
  long degenerate_pivots = 0;
  long finisher_pivots = 0;
  int max_consecutive_degenerate = 0;
  long distinct_vertices = 0;
  long phase_one_pivots = 0;
  std::vector<Violation> violations;
  std::string message;
};

template <class T>
long default_iteration_limit(const StandardLP<T>& lp) {
  const long s = lp.n + lp.m;
  return 10 * s * s;
}

// Runs `rule` from a feasible basis (options.initial_basis, else phase one)
// until optimality, unboundedness, a repeated basis, or a limit.
template <class T>
SolveResult<T> solve(const StandardLP<T>& lp, PivotRule<T>& rule, const SolveOptions<T>& options = {});

}  // namespace antistall

#endif  // ANTISTALL_CORE_SIMPLEX_CORE_HPP_
