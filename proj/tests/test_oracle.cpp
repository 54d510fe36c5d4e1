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

#include <random>
#include <set>

#include "core/generators.hpp"
#include "core/oracle.hpp"
#include "test_util.hpp"

namespace antistall {
namespace {

using testing::Q;

StandardLP<Q> standard(const GeneralLP& gp) {
  StandardLP<Q> lp = to_standard_form(gp);
  validate(lp);
  return lp;
}

// Frozen counts. Of the ten 3-subsets of {x1, x2, s1, s2, s3} only
// {x2, s2, s3} is singular (row r1 is empty). Vertices (0,0), (1,0), (1,1),
// (0,2); (1,0) has s1 = s3 = 0 and three bases, the others one each.
// Largest coordinate s3 = 3 at (0,2).
TEST(Oracle, LpBCounts) {
  const StandardLP<Q> lp = standard(gen_named("lp_b").lp);
  const Enumeration e = enumerate_bases(lp);
  EXPECT_EQ(e.subsets, 10);
  EXPECT_EQ(e.bases.size(), 9u);
  int feasible = 0, degenerate = 0;
  for (const auto& b : e.bases) {
    feasible += b.feasible;
    degenerate += b.feasible && b.degenerate;
  }
  EXPECT_EQ(feasible, 6);
  EXPECT_EQ(degenerate, 3);
  EXPECT_EQ(e.vertices.size(), 4u);
  EXPECT_EQ(e.status, SolveStatus::kOptimal);
  EXPECT_EQ(*e.optimum, Q(-2));
  EXPECT_EQ(*e.delta_max, Q(3));
  EXPECT_EQ(*e.delta_min, Q(1));
}

// Independent enumeration by Cramer's rule.
void cross_check(const StandardLP<Q>& lp) {
  const Enumeration e = enumerate_bases(lp);
  int nonsingular = 0;
  for (const auto& s : testing::subsets(lp.n, lp.m))
    nonsingular += testing::det_laplace(testing::columns_of(lp, s)) != 0;
  EXPECT_EQ(static_cast<int>(e.bases.size()), nonsingular);

  const auto ref = testing::reference_feasible_bases(lp);
  std::set<std::vector<int>> ref_bases;
  std::set<std::vector<Q>> ref_vertices;
  Q dmax = 0, dmin = 0;
  for (const auto& r : ref) {
    ref_bases.insert(r.basis);
    ref_vertices.insert(r.x);
    for (const Q& v : r.x) {
      if (v == 0) continue;
      dmax = std::max(dmax, v);
      dmin = dmin == 0 ? v : std::min(dmin, v);
    }
  }
  std::set<std::vector<int>> got_bases;
  for (const auto& b : e.bases) {
    if (!b.feasible) continue;
    got_bases.insert(b.basis.columns);
    EXPECT_EQ(b.x, e.vertices.at(b.vertex));
    EXPECT_EQ(b.optimal_basis, testing::reference_optimal_basis(lp, b.basis.columns));
  }
  EXPECT_EQ(got_bases, ref_bases);
  EXPECT_EQ(std::set<std::vector<Q>>(e.vertices.begin(), e.vertices.end()), ref_vertices);
  if (ref.empty()) return;
  if (e.status == SolveStatus::kOptimal) {
    EXPECT_EQ(*e.optimum, testing::reference_min(lp));
    EXPECT_EQ(*e.delta_max, dmax);
    EXPECT_EQ(*e.delta_min, dmin);
  }
}

TEST(Oracle, CrossCheckNamedAndGenerated) {
  for (const char* n : {"lp_a", "lp_b", "lp_c"}) cross_check(standard(gen_named(n).lp));
  cross_check(standard(gen_beale_cycle().lp));
  cross_check(standard(gen_klee_minty(3).lp));
  for (std::uint64_t s = 1; s <= 3; ++s) cross_check(standard(gen_degenerate_pyramid(3, s).lp));
}

// Random bounded LPs: box rows keep the feasible region a polytope.
TEST(Oracle, CrossCheckRandom) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> d(-3, 3), rhs(0, 4);
  for (int trial = 0; trial < 15; ++trial) {
    GeneralLP gp;
    for (int j = 0; j < 3; ++j) gp.add_column("x" + std::to_string(j), Q(d(rng)), Q(0), Q(2));
    for (int i = 0; i < 2; ++i) {
      std::vector<Q> row(3);
      for (auto& v : row) v = d(rng);
      gp.add_row("r" + std::to_string(i), row, Relation::kLessEqual, Q(rhs(rng)));
    }
    cross_check(standard(gp));
  }
}

TEST(Oracle, ThreadCountDoesNotMatter) {
  const StandardLP<Q> lp = standard(gen_degenerate_pyramid(4, 3).lp);
  const Enumeration a = enumerate_bases(lp, 1'000'000, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    const Enumeration b = enumerate_bases(lp, 1'000'000, t);
    ASSERT_EQ(a.bases.size(), b.bases.size());
    for (std::size_t k = 0; k < a.bases.size(); ++k) {
      EXPECT_EQ(a.bases[k].basis.columns, b.bases[k].basis.columns);
      EXPECT_EQ(a.bases[k].vertex, b.bases[k].vertex);
    }
    EXPECT_EQ(a.vertices, b.vertices);
    EXPECT_EQ(a.optimal_basis->columns, b.optimal_basis->columns);
  }
}

TEST(Oracle, UnboundedAndInfeasible) {
  GeneralLP u;
  u.add_column("x", Q(-1));
  u.add_column("y", Q(0));
  u.add_row("a", {1, -1}, Relation::kLessEqual, Q(1));
  EXPECT_EQ(enumerate_bases(standard(u)).status, SolveStatus::kUnbounded);
  EXPECT_EQ(oracle_optimum(standard(u)).status, SolveStatus::kUnbounded);

  GeneralLP inf;
  inf.add_column("x", Q(1));
  inf.add_row("a", {1}, Relation::kLessEqual, Q(1));
  inf.add_row("b", {1}, Relation::kGreaterEqual, Q(2));
  StandardLP<Q> lp = to_standard_form(inf);
  const Enumeration e = enumerate_bases(lp);
  EXPECT_EQ(e.status, SolveStatus::kInfeasible);
  EXPECT_TRUE(e.vertices.empty());
}

TEST(Oracle, OptimumMatchesEnumeration) {
  const StandardLP<Q> lp = standard(gen_named("lp_c").lp);
  const OracleOptimum o = oracle_optimum(lp);
  EXPECT_EQ(o.status, SolveStatus::kOptimal);
  EXPECT_EQ(o.value, Q(-20));
  EXPECT_EQ(lp.objective(o.vertex), Q(-20));
  EXPECT_TRUE(testing::reference_optimal_basis(lp, o.basis.columns));
}

TEST(Oracle, CapIsEnforced) {
  const StandardLP<Q> lp = standard(gen_degenerate_pyramid(4, 1).lp);
  const long long c = binomial_capped(lp.n, lp.m, 1'000'000);
  EXPECT_THROW(enumerate_bases(lp, c - 1), OracleError);
  EXPECT_NO_THROW(enumerate_bases(lp, c));
}

TEST(Oracle, BinomialCapped) {
  EXPECT_EQ(binomial_capped(5, 3, 100), 10);
  EXPECT_EQ(binomial_capped(10, 0, 100), 1);
  EXPECT_EQ(binomial_capped(40, 20, 1000), 1001);
  EXPECT_EQ(binomial_capped(200, 100, 1'000'000), 1'000'001);
}

}  // namespace
}  // namespace antistall
