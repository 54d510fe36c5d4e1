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

// Entering/leaving policies: five classic pricing rules and the antistalling
// rule, which keeps an improving feasible direction y at the current vertex
// and only enters columns in the support of y. Every degenerate pivot it makes
// removes one index from Q2 = {i nonbasic : y_i > 0}, so a vertex is left
// after at most n - m - 1 degenerate pivots.

#ifndef ANTISTALL_CORE_PIVOT_RULES_HPP_
#define ANTISTALL_CORE_PIVOT_RULES_HPP_

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/simplex_core.hpp"

namespace antistall {

enum class RuleKind { kDantzig, kBland, kLifo, kMostFrequent, kSteepestEdge, kAntistalling };

const char* rule_name(RuleKind k);
std::optional<RuleKind> parse_rule(const std::string& s);
const std::vector<RuleKind>& all_rules();

// A consistency check inside the antistalling machinery failed. Signals a
// bug or an invalid direction/basis handed in by the caller.
class InternalContradiction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InvalidDirection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-run memory for LIFO and most-frequent pricing.
struct RuleMemory {
  std::vector<long> last_left;      // iteration the variable last left the basis, -1 if never
  std::vector<long> entered_count;  // times chosen as entering

  explicit RuleMemory(int n = 0) : last_left(n, -1), entered_count(n, 0) {}
  void record(int entering, int leaving, long iteration);
};

// Entering column for a classic rule, or nullopt when S(B) is empty
// (optimality certified). Ties go to the smallest index.
template <class T>
std::optional<int> select_classic(RuleKind kind, SimplexState<T>& state, const RuleMemory& memory);

template <class T>
class ClassicRule : public PivotRule<T> {
 public:
  explicit ClassicRule(RuleKind kind) : kind_(kind) {}
  std::string name() const override { return rule_name(kind_); }
  StepOutcome step(SimplexState<T>& state) override;
  const RuleMemory& memory() const { return memory_; }

 private:
  RuleKind kind_;
  RuleMemory memory_;
};

// An improving feasible direction at the current vertex together with the
// index sets Q1 = {i in Z(B) : y_i > 0} and Q2 = {i in N : y_i > 0}.
template <class T>
struct ImprovingDirection {
  std::vector<T> y;
  T cost = 0;  // c'y
  std::vector<int> q1;
  std::vector<int> q2;

  // Recomputes cost, Q1 and Q2 for the state's basis.
  void refresh(const SimplexState<T>& state);
};

// Throws InvalidDirection unless A y = 0, c'y < 0 and y_i >= 0 on Z(B) and N.
template <class T>
ImprovingDirection<T> make_direction(const SimplexState<T>& state, std::vector<T> y);

// y = target - x. Throws InvalidDirection if c'target >= c'x. When the
// target is a basic feasible solution |Q2| <= m is asserted.
template <class T>
ImprovingDirection<T> guided_direction(const SimplexState<T>& state, const std::vector<T>& target,
                                       bool target_is_vertex = true);

// Basic direction for entering f: z_B = -Abar_.f, z_f = 1, zero elsewhere.
template <class T>
std::vector<T> compute_ray(SimplexState<T>& state, int f);

template <class T>
struct Reroute {
  ImprovingDirection<T> direction;
  int leaving = -1;  // g, attains alpha
  T alpha = 0;
};

// Case III: y' = y + alpha z with alpha = min over Eq>(f) cap Q1 of y_i/|z_i|.
// Throws std::invalid_argument if Eq>(f) cap Q1 is empty and
// InternalContradiction if a postcondition fails.
template <class T>
Reroute<T> reroute_direction(SimplexState<T>& state, const ImprovingDirection<T>& dir, int f);

template <class T>
struct AntistallingDecision {
  CaseLabel label = CaseLabel::kCaseI;  // kCaseI, kCaseII or kCaseIIIThenII
  int entering = -1;
  int leaving = -1;
  bool unbounded = false;
  std::optional<Reroute<T>> reroute;  // set when Case III occurred first
  ImprovingDirection<T> direction;    // direction after this decision
};

// One antistalling decision at a non-optimal vertex; does not pivot.
template <class T>
AntistallingDecision<T> antistalling_step(SimplexState<T>& state, const ImprovingDirection<T>& dir);

// Turns a non-optimal basis of an optimal vertex into an optimal basis by
// degenerate pivots: enter the most negative reduced cost among columns not
// yet fixed, leave the smallest i in B cap N* with Abar_if > 0 and x_i = 0,
// then fix i at zero. Returns the (entering, leaving) pairs.
template <class T>
std::vector<std::pair<int, int>> finish_at_optimum(SimplexState<T>& state, const Basis& optimal_basis);

// Supplies an improving feasible direction at each new vertex; nullopt
// declares the vertex optimal.
template <class T>
class DirectionSource {
 public:
  virtual ~DirectionSource() = default;
  virtual bool guided() const = 0;
  virtual std::optional<std::vector<T>> direction(const SimplexState<T>& state) = 0;
  // Optimal basis for the vertex `x` if the source knows one.
  virtual std::optional<Basis> optimal_basis_for(const std::vector<T>& /*x*/) const { return std::nullopt; }
};

// y = x* - x for a known optimal basic feasible solution x*.
template <class T>
class OptimalGuide : public DirectionSource<T> {
 public:
  OptimalGuide(std::vector<T> x_star, Basis b_star) : x_star_(std::move(x_star)), b_star_(std::move(b_star)) {}
  bool guided() const override { return true; }
  std::optional<std::vector<T>> direction(const SimplexState<T>& state) override;
  std::optional<Basis> optimal_basis_for(const std::vector<T>& x) const override;

 private:
  std::vector<T> x_star_;
  Basis b_star_;
};

// y = (centroid of the listed feasible points strictly better than x) - x.
// The centroid is generally not a vertex, so only the n - m - 1 cap applies.
template <class T>
class CentroidGuide : public DirectionSource<T> {
 public:
  explicit CentroidGuide(std::vector<std::vector<T>> points) : points_(std::move(points)) {}
  bool guided() const override { return false; }
  std::optional<std::vector<T>> direction(const SimplexState<T>& state) override;

 private:
  std::vector<std::vector<T>> points_;
};

// Reference data for the runtime contraction hook.
template <class T>
struct ContractionHook {
  T optimal_objective = 0;
  T delta_max = 0;  // largest nonzero BFS coordinate
  T delta_min = 0;  // smallest nonzero BFS coordinate
};

template <class T>
class AntistallingRule : public PivotRule<T> {
 public:
  explicit AntistallingRule(std::unique_ptr<DirectionSource<T>> source,
                            std::optional<ContractionHook<T>> hook = std::nullopt)
      : source_(std::move(source)), hook_(std::move(hook)) {}

  std::string name() const override { return rule_name(RuleKind::kAntistalling); }
  bool guided() const override { return source_->guided(); }
  StepOutcome step(SimplexState<T>& state) override;

 private:
  void start_vertex(SimplexState<T>& state, std::vector<T> y);
  StepOutcome finish(SimplexState<T>& state);
  void check_pivot(SimplexState<T>& state, const PivotRecord<T>& rec, const ImprovingDirection<T>& used,
                   const std::vector<int>& nonbasic_before);

  std::unique_ptr<DirectionSource<T>> source_;
  std::optional<ContractionHook<T>> hook_;
  std::optional<ImprovingDirection<T>> dir_;
  long vertex_ = -1;
  std::vector<T> y_at_arrival_;
  T last_cost_ = 0;
};

}  // namespace antistall

#endif  // ANTISTALL_CORE_PIVOT_RULES_HPP_
