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

#include <gtest/gtest.h>

#include "core/generators.hpp"
#include "core/pivot_rules.hpp"
#include "core/simplex_core.hpp"
#include "test_util.hpp"

namespace antistall {
namespace {

using testing::Q;

StandardLP<Q> standard(const GeneralLP& gp) {
  StandardLP<Q> lp = to_standard_form(gp);
  validate(lp);
  return lp;
}

TEST(RatioTest, TiesGoToSmallestIndex) {
  // min -x s.t. x + s1 = 2, 2x + s2 = 4: both rows give theta = 2.
  GeneralLP gp;
  gp.add_column("x", Q(-1));
  gp.add_row("a", {1}, Relation::kLessEqual, Q(2));
  gp.add_row("b", {2}, Relation::kLessEqual, Q(4));
  const StandardLP<Q> lp = standard(gp);
  SimplexState<Q> st(lp, Basis{{2, 1}});
  const RatioTest<Q> rt = ratio_test(st, 0);
  EXPECT_FALSE(rt.unbounded);
  EXPECT_EQ(rt.leaving, 1);
  EXPECT_EQ(rt.step, Q(2));
}

TEST(RatioTest, DetectsUnboundedDirection) {
  GeneralLP gp;
  gp.add_column("x", Q(-1));
  gp.add_column("y", Q(0));
  gp.add_row("a", {1, -1}, Relation::kLessEqual, Q(1));
  const StandardLP<Q> lp = standard(gp);
  SimplexState<Q> st(lp, Basis{{2}});
  EXPECT_TRUE(ratio_test(st, 1).unbounded);
  EXPECT_FALSE(ratio_test(st, 0).unbounded);
}

TEST(Pivot, RejectsZeroPivotElementAndNegativeStep) {
  GeneralLP gp;
  gp.add_column("x", Q(-1));
  gp.add_column("y", Q(-1));
  gp.add_row("a", {1, 0}, Relation::kLessEqual, Q(1));
  gp.add_row("b", {0, 1}, Relation::kLessEqual, Q(1));
  const StandardLP<Q> lp = standard(gp);
  SimplexState<Q> st(lp, Basis{{2, 3}});
  EXPECT_THROW(pivot(st, 0, 3), InvalidPivot);  // Abar = 0 in row b
  PivotRecord<Q>& r = pivot(st, 0, 2);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.step, Q(1));
  EXPECT_EQ(r.objective_after, Q(-1));
  EXPECT_EQ(st.distinct_vertices(), 2);
}

TEST(Pivot, DegenerateCountsAndStreak) {
  // Apex of a pyramid: many zero basics.
  const Generated g = gen_degenerate_pyramid(3, 1);
  const StandardLP<Q> lp = standard(g.lp);
  SimplexState<Q> st(lp, Basis{{3, 4, 5, 6}});
  EXPECT_EQ(st.zero_basics().size(), 3u);
  // Enter x1: rows facet_k with positive coefficient block at zero.
  const RatioTest<Q> rt = ratio_test(st, 0);
  EXPECT_EQ(rt.step, Q(0));
  pivot(st, 0, rt.leaving);
  EXPECT_EQ(st.degenerate_pivots(), 1);
  EXPECT_EQ(st.consecutive_degenerate(), 1);
  EXPECT_EQ(st.distinct_vertices(), 1);
}

TEST(PhaseOne, CrashBasisOfSlacks) {
  const Generated g = gen_named("lp_b");
  const StandardLP<Q> lp = standard(g.lp);
  const PhaseOneResult<Q> p = phase_one(lp);
  EXPECT_TRUE(p.feasible);
  EXPECT_EQ(p.artificials, 0);
  EXPECT_EQ(p.basis.columns, (std::vector<int>{2, 3, 4}));
}

TEST(PhaseOne, ArtificialsForEqualitiesAndSurplus) {
  // x + y = 2, x - y >= 1.
  GeneralLP gp;
  gp.add_column("x", Q(1));
  gp.add_column("y", Q(1));
  gp.add_row("e", {1, 1}, Relation::kEqual, Q(2));
  gp.add_row("g", {1, -1}, Relation::kGreaterEqual, Q(1));
  const StandardLP<Q> lp = standard(gp);
  const PhaseOneResult<Q> p = phase_one(lp);
  ASSERT_TRUE(p.feasible);
  EXPECT_GT(p.artificials, 0);
  const BasicSolution<Q> s = basic_solution(lp, p.basis);
  EXPECT_TRUE(s.feasible);
}

TEST(PhaseOne, DetectsInfeasibility) {
  GeneralLP gp;
  gp.add_column("x", Q(1));
  gp.add_row("a", {1}, Relation::kLessEqual, Q(1));
  gp.add_row("b", {1}, Relation::kGreaterEqual, Q(2));
  const StandardLP<Q> lp = standard(gp);
  EXPECT_FALSE(phase_one(lp).feasible);
  ClassicRule<Q> rule(RuleKind::kDantzig);
  EXPECT_EQ(solve(lp, rule).status, SolveStatus::kInfeasible);
}

TEST(Solve, Unbounded) {
  GeneralLP gp;
  gp.add_column("x", Q(-1));
  gp.add_column("y", Q(0));
  gp.add_row("a", {1, -1}, Relation::kLessEqual, Q(1));
  const StandardLP<Q> lp = standard(gp);
  for (RuleKind k : all_rules()) {
    if (k == RuleKind::kAntistalling) continue;
    ClassicRule<Q> rule(k);
    EXPECT_EQ(solve(lp, rule).status, SolveStatus::kUnbounded) << rule_name(k);
  }
}

TEST(Solve, RejectsInfeasibleInitialBasis) {
  const Generated g = gen_named("lp_b");
  const StandardLP<Q> lp = standard(g.lp);
  ClassicRule<Q> rule(RuleKind::kBland);
  SolveOptions<Q> opts;
  opts.initial_basis = Basis{{0, 1, 2}};  // x1 = 3/2 violates x1 <= 1
  EXPECT_THROW(solve(lp, rule, opts), BasisError);
}

TEST(Solve, KleeMintyDantzigVisitsEveryVertex) {
  for (int d = 2; d <= 4; ++d) {
    const StandardLP<Q> lp = standard(gen_klee_minty(d).lp);
    ClassicRule<Q> rule(RuleKind::kDantzig);
    const SolveResult<Q> r = solve(lp, rule);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    EXPECT_EQ(r.pivots, (1L << d) - 1) << d;
    EXPECT_EQ(r.degenerate_pivots, 0);
    Q top = 1;
    for (int k = 1; k < d; ++k) top *= 100;
    EXPECT_EQ(r.original_objective, top);
  }
}

TEST(Solve, BealeCyclesUnderDantzig) {
  const StandardLP<Q> lp = standard(gen_beale_cycle().lp);
  ClassicRule<Q> dantzig(RuleKind::kDantzig);
  const SolveResult<Q> r = solve(lp, dantzig);
  EXPECT_EQ(r.status, SolveStatus::kCycled);
  EXPECT_EQ(r.pivots, r.degenerate_pivots);
  ClassicRule<Q> bland(RuleKind::kBland);
  const SolveResult<Q> b = solve(lp, bland);
  EXPECT_EQ(b.status, SolveStatus::kOptimal);
  EXPECT_EQ(b.objective, testing::reference_min(lp));
}

TEST(Solve, IterationLimit) {
  const StandardLP<Q> lp = standard(gen_klee_minty(4).lp);
  ClassicRule<Q> rule(RuleKind::kDantzig);
  SolveOptions<Q> opts;
  opts.max_iterations = 3;
  EXPECT_EQ(solve(lp, rule, opts).status, SolveStatus::kIterationLimit);
}

TEST(Solve, DeadlineInThePast) {
  const StandardLP<Q> lp = standard(gen_klee_minty(4).lp);
  ClassicRule<Q> rule(RuleKind::kDantzig);
  SolveOptions<Q> opts;
  opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  EXPECT_EQ(solve(lp, rule, opts).status, SolveStatus::kTimeLimit);
}

TEST(Solve, FloatAndRationalAgreeOnKleeMinty) {
  const StandardLP<Q> lp = standard(gen_klee_minty(3).lp);
  const StandardLP<double> lf = to_float(lp);
  ClassicRule<Q> rq(RuleKind::kSteepestEdge);
  ClassicRule<double> rf(RuleKind::kSteepestEdge);
  const SolveResult<Q> a = solve(lp, rq);
  const SolveResult<double> b = solve(lf, rf);
  EXPECT_EQ(a.pivots, b.pivots);
  EXPECT_NEAR(a.original_objective.get_d(), b.original_objective, 1e-9);
}

TEST(Solve, LogRecordsEveryPivot) {
  const StandardLP<Q> lp = standard(gen_klee_minty(3).lp);
  ClassicRule<Q> rule(RuleKind::kBland);
  const SolveResult<Q> r = solve(lp, rule);
  ASSERT_EQ(static_cast<long>(r.log.records.size()), r.pivots);
  for (std::size_t k = 0; k + 1 < r.log.records.size(); ++k) {
    EXPECT_EQ(r.log.records[k].objective_after, r.log.records[k + 1].objective_before);
    EXPECT_EQ(r.log.records[k].label, CaseLabel::kClassic);
  }
}

}  // namespace
}  // namespace antistall
