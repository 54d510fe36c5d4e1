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

#include "core/basis_engine.hpp"
#include "core/lp_model.hpp"
#include "test_util.hpp"

namespace antistall {
namespace {

using testing::Q;

TEST(Scalar, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.1"), Q(1, 10));
  EXPECT_EQ(parse_rational("-2.50"), Q(-5, 2));
  EXPECT_EQ(parse_rational("3/4"), Q(3, 4));
  EXPECT_EQ(parse_rational("1e-3"), Q(1, 1000));
  EXPECT_EQ(parse_rational("1.5E2"), Q(150));
  // Leading zeros are decimal, not octal.
  EXPECT_EQ(parse_rational("0.25"), Q(1, 4));
  EXPECT_EQ(parse_rational("010/3"), Q(10, 3));
  EXPECT_EQ(parse_rational("0.0625"), Q(1, 16));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Scalar, PrintsCanonicalForms) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
  EXPECT_EQ(to_decimal_string(Q(1, 8)), "0.125");
}

TEST(Tolerance, ExactModeIsStrict) {
  Tolerance<Q> t;
  EXPECT_TRUE(t.zero(Q(0)));
  EXPECT_FALSE(t.zero(Q(1, 1000000000)));
  Tolerance<double> f(1e-9);
  EXPECT_TRUE(f.zero(1e-10));
  EXPECT_TRUE(f.positive(1e-8));
}

GeneralLP mixed_lp() {
  // max x + 2y  s.t.  x + y <= 4,  x - y >= -2,  x + 3y = 6,
  //                   1 <= x <= 3,  y <= 5 (lower 0)
  GeneralLP gp;
  gp.sense = Sense::kMaximize;
  gp.add_column("x", Q(1), Q(1), Q(3));
  gp.add_column("y", Q(2), Q(0), Q(5));
  gp.add_row("c1", {1, 1}, Relation::kLessEqual, Q(4));
  gp.add_row("c2", {1, -1}, Relation::kGreaterEqual, Q(-2));
  gp.add_row("c3", {1, 3}, Relation::kEqual, Q(6));
  return gp;
}

TEST(StandardForm, ShiftsSlacksAndBoundRows) {
  const GeneralLP gp = mixed_lp();
  const StandardLP<Q> lp = to_standard_form(gp);
  // Columns: x', y, c1 slack, c2 surplus, x_ub slack, y_ub slack.
  ASSERT_EQ(lp.n, 6);
  ASSERT_EQ(lp.m, 5);
  EXPECT_TRUE(lp.negated);
  EXPECT_EQ(lp.tags[0], ColumnKind::kShift);
  EXPECT_EQ(lp.tags[2], ColumnKind::kSlack);
  EXPECT_EQ(lp.tags[3], ColumnKind::kSurplus);
  // x = 1 + x' moves 1 * column x to the right-hand side.
  EXPECT_EQ(lp.b[0], Q(3));
  EXPECT_EQ(lp.b[1], Q(-3));
  EXPECT_EQ(lp.b[2], Q(5));
  EXPECT_EQ(lp.b[3], Q(2));  // x' <= 3 - 1
  EXPECT_EQ(lp.b[4], Q(5));
  EXPECT_EQ(lp.c[0], Q(-1));
  EXPECT_EQ(lp.c[1], Q(-2));
  EXPECT_EQ(lp.objective_offset, Q(-1));
}

TEST(StandardForm, RecoverAndEmbedRoundTrip) {
  const GeneralLP gp = mixed_lp();
  const StandardLP<Q> lp = to_standard_form(gp);
  const std::vector<Q> orig = {Q(3, 2), Q(3, 2)};  // x + 3y = 6
  const std::vector<Q> x = lp.embed(gp, orig);
  EXPECT_EQ(lp.A.multiply(x), lp.b);
  EXPECT_EQ(lp.recover(x), orig);
  EXPECT_EQ(lp.original_objective(x), Q(9, 2));
}

TEST(StandardForm, MirrorsUpperOnlyColumns) {
  GeneralLP gp;
  gp.add_column("z", Q(1), std::nullopt, Q(2));
  gp.add_row("r", {1}, Relation::kGreaterEqual, Q(-1));
  const StandardLP<Q> lp = to_standard_form(gp);
  EXPECT_TRUE(lp.variables[0].mirrored);
  // z = 2 - z': min z with z >= -1 gives z = -1, z' = 3.
  std::vector<Q> x(lp.n, Q(0));
  x[0] = 3;
  EXPECT_EQ(lp.recover(x)[0], Q(-1));
}

TEST(StandardForm, RejectsFreeVariables) {
  GeneralLP gp;
  gp.add_column("f", Q(1), std::nullopt, std::nullopt);
  gp.add_row("r", {1}, Relation::kLessEqual, Q(1));
  EXPECT_THROW(to_standard_form(gp), ModelError);
}

TEST(StandardForm, RejectsInconsistentModels) {
  GeneralLP gp;
  gp.add_column("x", Q(1), Q(2), Q(1));
  gp.add_row("r", {1}, Relation::kLessEqual, Q(1));
  EXPECT_THROW(validate_general(gp), ModelError);
  GeneralLP empty;
  EXPECT_THROW(to_standard_form(empty), ModelError);
}

TEST(Validate, RemovesDependentRowsAndDetectsInconsistency) {
  GeneralLP gp;
  gp.add_column("x", Q(1));
  gp.add_column("y", Q(1));
  gp.add_row("a", {1, 1}, Relation::kEqual, Q(2));
  gp.add_row("b", {2, 2}, Relation::kEqual, Q(4));
  StandardLP<Q> lp = to_standard_form(gp);
  ValidationReport r = validate(lp);
  EXPECT_EQ(lp.m, 1);
  EXPECT_EQ(r.removed_rows.size(), 1u);
  EXPECT_FALSE(r.infeasible);

  gp.rows[1].rhs = 5;
  StandardLP<Q> bad = to_standard_form(gp);
  EXPECT_TRUE(validate(bad).infeasible);
}

TEST(BasicSolution, SingularAndInfeasibleBases) {
  GeneralLP gp;
  gp.add_column("x", Q(1));
  gp.add_column("y", Q(1));
  gp.add_row("a", {1, 1}, Relation::kLessEqual, Q(2));
  gp.add_row("b", {1, -1}, Relation::kLessEqual, Q(-1));
  const StandardLP<Q> lp = to_standard_form(gp);
  EXPECT_THROW(basic_solution(lp, Basis{{2, 2}}), BasisError);
  const BasicSolution<Q> s = basic_solution(lp, Basis{{2, 3}});
  EXPECT_FALSE(s.feasible);
  const BasicSolution<Q> t = basic_solution(lp, Basis{{0, 1}});
  EXPECT_TRUE(t.feasible);
  EXPECT_EQ(t.x[0], Q(1, 2));
  EXPECT_EQ(t.x[1], Q(3, 2));
}

// Random nonsingular bases: the factorization agrees with Cramer's rule,
// also after a chain of column replacements.
template <class T>
void check_against_cramer(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  const int m = 4, n = 9;
  StandardLP<Q> exact;
  exact.m = m;
  exact.n = n;
  exact.A = DenseMatrix<Q>(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) exact.A(i, j) = d(rng);
  exact.b.resize(m);
  for (auto& v : exact.b) v = d(rng);
  exact.c.assign(n, Q(0));
  exact.tags.assign(n, ColumnKind::kOriginal);
  StandardLP<T> lp;
  if constexpr (ScalarTraits<T>::kExact) {
    lp = exact;
  } else {
    lp = to_float(exact);
  }

  std::vector<int> cur;
  for (const auto& s : testing::subsets(n, m)) {
    if (testing::det_laplace(testing::columns_of(exact, s)) != 0) {
      cur = s;
      break;
    }
  }
  ASSERT_FALSE(cur.empty());
  BasisFactorization<T> f(lp, Basis{cur});
  for (int step = 0; step < 30; ++step) {
    std::vector<Q> ref;
    ASSERT_TRUE(testing::cramer(testing::columns_of(exact, cur), exact.b, ref));
    const std::vector<T> got = f.solve(lp.b);
    for (int k = 0; k < m; ++k) {
      if constexpr (ScalarTraits<T>::kExact) {
        EXPECT_EQ(got[k], ref[k]);
      } else {
        EXPECT_NEAR(got[k], ref[k].get_d(), 1e-8 * (1 + std::fabs(ref[k].get_d())));
      }
    }
    // Replace a random position by a nonbasic column that keeps A_B nonsingular.
    const int pos = static_cast<int>(rng() % m);
    std::vector<int> cand;
    for (int j = 0; j < n; ++j) {
      if (f.is_basic(j)) continue;
      std::vector<int> next = cur;
      next[pos] = j;
      if (testing::det_laplace(testing::columns_of(exact, next)) != 0) cand.push_back(j);
    }
    if (cand.empty()) continue;
    const int j = cand[rng() % cand.size()];
    f.replace(pos, j, f.tableau_column(j));
    cur[pos] = j;
    EXPECT_EQ(f.basis().columns, cur);
  }
}

TEST(BasisFactorization, RationalMatchesCramer) {
  for (std::uint64_t s = 1; s <= 5; ++s) check_against_cramer<Q>(s);
}

TEST(BasisFactorization, FloatMatchesCramer) {
  for (std::uint64_t s = 1; s <= 5; ++s) check_against_cramer<double>(s);
}

TEST(BasisFactorization, RejectsSingularBasis) {
  StandardLP<Q> lp;
  lp.m = 2;
  lp.n = 3;
  lp.A = DenseMatrix<Q>(2, 3);
  lp.A(0, 0) = 1;
  lp.A(0, 1) = 2;
  lp.A(1, 0) = 2;
  lp.A(1, 1) = 4;
  lp.A(1, 2) = 1;
  lp.b = {Q(1), Q(1)};
  lp.c.assign(3, Q(0));
  lp.tags.assign(3, ColumnKind::kOriginal);
  EXPECT_THROW(BasisFactorization<Q>(lp, Basis{{0, 1}}), BasisError);
  EXPECT_NO_THROW(BasisFactorization<Q>(lp, Basis{{0, 2}}));
}

TEST(ReducedCosts, HandComputed) {
  // min -x - y, x + 2y + s1 = 4, 3x + y + s2 = 6 at basis {x, s1}:
  // x = 2, pi = (0, -1/3), cbar_y = -1 + 1/3 = -2/3, cbar_s2 = 1/3.
  GeneralLP gp;
  gp.add_column("x", Q(-1));
  gp.add_column("y", Q(-1));
  gp.add_row("a", {1, 2}, Relation::kLessEqual, Q(4));
  gp.add_row("b", {3, 1}, Relation::kLessEqual, Q(6));
  const StandardLP<Q> lp = to_standard_form(gp);
  BasisFactorization<Q> f(lp, Basis{{2, 0}});
  const ReducedCosts<Q> rc = reduced_costs(lp, f);
  EXPECT_EQ(rc.values[1], Q(-2, 3));
  EXPECT_EQ(rc.values[3], Q(1, 3));
  EXPECT_EQ(rc.values[0], Q(0));
  EXPECT_FALSE(rc.optimal);
}

}  // namespace
}  // namespace antistall
