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

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "core/generators.hpp"
#include "core/mps.hpp"
#include "core/pivot_rules.hpp"
#include "test_util.hpp"

namespace antistall {
namespace {

using testing::Q;

Q lp_optimum(const GeneralLP& gp) {
  StandardLP<Q> lp = to_standard_form(gp);
  validate(lp);
  ClassicRule<Q> rule(RuleKind::kBland);
  const SolveResult<Q> r = solve(lp, rule);
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  return r.original_objective;
}

// Recovers the edge list from x_l<u>_r<v> column names.
std::vector<Edge> matching_edges(const GeneralLP& gp) {
  std::vector<Edge> out;
  for (const auto& name : gp.column_names) {
    int u = 0, v = 0;
    EXPECT_EQ(std::sscanf(name.c_str(), "x_l%d_r%d", &u, &v), 2) << name;
    out.emplace_back(u, v);
  }
  return out;
}

int brute_max_matching(const std::vector<Edge>& edges) {
  const int e = static_cast<int>(edges.size());
  int best = 0;
  for (long mask = 0; mask < (1L << e); ++mask) {
    std::set<int> left, right;
    int size = 0;
    bool ok = true;
    for (int k = 0; k < e && ok; ++k) {
      if (!(mask >> k & 1)) continue;
      ok = left.insert(edges[k].first).second && right.insert(edges[k].second).second;
      ++size;
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

TEST(Generators, BipartiteMatchingAgreesWithBruteForce) {
  for (std::uint64_t s = 1; s <= 6; ++s) {
    const Generated g = gen_bipartite_matching(3, 4, 0.5, s);
    const int ref = brute_max_matching(matching_edges(g.lp));
    ASSERT_TRUE(g.known_optimum.has_value());
    EXPECT_EQ(*g.known_optimum, Q(ref)) << s;
    EXPECT_EQ(lp_optimum(g.lp), Q(ref)) << s;
  }
}

// Arcs from f_<u>_<v> column names.
std::vector<Edge> flow_arcs(const GeneralLP& gp) {
  std::vector<Edge> out;
  for (const auto& name : gp.column_names) {
    int u = 0, v = 0;
    EXPECT_EQ(std::sscanf(name.c_str(), "f_%d_%d", &u, &v), 2) << name;
    out.emplace_back(u, v);
  }
  return out;
}

// Unit capacities: max flow = min over s-t cuts of the arcs leaving S.
int brute_min_cut(int n, const std::vector<Edge>& arcs) {
  int best = std::numeric_limits<int>::max();
  const int inner = n - 2;
  for (long mask = 0; mask < (1L << inner); ++mask) {
    auto in_s = [&](int v) { return v == 0 || (v != n - 1 && (mask >> (v - 1) & 1)); };
    int cut = 0;
    for (auto [u, v] : arcs)
      if (in_s(u) && !in_s(v)) ++cut;
    best = std::min(best, cut);
  }
  return best;
}

TEST(Generators, MaxFlowAgreesWithMinCut) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Generated g = gen_unit_flow(FlowKind::kMaxFlow, 6, s, 0.4);
    const int ref = brute_min_cut(6, flow_arcs(g.lp));
    EXPECT_EQ(*g.known_optimum, Q(ref)) << s;
    EXPECT_EQ(lp_optimum(g.lp), Q(ref)) << s;
  }
}

TEST(Generators, MinCostFlowIsShortestSimplePath) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Generated g = gen_unit_flow(FlowKind::kMinCostFlow, 6, s);
    const auto arcs = flow_arcs(g.lp);
    long best = std::numeric_limits<long>::max();
    std::vector<char> on(6, 0);
    std::function<void(int, long)> dfs = [&](int u, long d) {
      if (u == 5) {
        best = std::min(best, d);
        return;
      }
      on[u] = 1;
      for (std::size_t k = 0; k < arcs.size(); ++k)
        if (arcs[k].first == u && !on[arcs[k].second]) dfs(arcs[k].second, d + g.lp.cost[k].get_num().get_si());
      on[u] = 0;
    };
    dfs(0, 0);
    EXPECT_EQ(*g.known_optimum, Q(best)) << s;
    EXPECT_EQ(lp_optimum(g.lp), Q(best)) << s;
  }
}

TEST(Generators, CirculationHasNonPositiveOptimum) {
  const Generated g = gen_unit_flow(FlowKind::kCirculation, 5, 3, 0.5);
  EXPECT_FALSE(g.known_optimum.has_value());
  EXPECT_LE(lp_optimum(g.lp), Q(0));
}

// Minimum men-rank sum over all stable matchings, by enumeration.
long brute_stable(const Preferences& p) {
  const int n = static_cast<int>(p.men.size());
  auto rank = [](const std::vector<int>& list, int who) {
    for (std::size_t k = 0; k < list.size(); ++k)
      if (list[k] == who) return static_cast<int>(k);
    return -1;
  };
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long best = std::numeric_limits<long>::max();
  do {
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      for (int j = 0; j < n && stable; ++j) {
        if (perm[i] == j) continue;
        int h = 0;
        while (perm[h] != j) ++h;
        if (rank(p.men[i], j) < rank(p.men[i], perm[i]) && rank(p.women[j], i) < rank(p.women[j], h)) stable = false;
      }
    }
    if (!stable) continue;
    long cost = 0;
    for (int i = 0; i < n; ++i) cost += rank(p.men[i], perm[i]) + 1;
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(Generators, StableMarriageMatchesEnumeration) {
  // Classic instance with two stable matchings.
  const Preferences two{{{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}};
  EXPECT_EQ(brute_stable(two), 2);
  const Generated g2 = gen_stable_marriage(two);
  EXPECT_EQ(*g2.known_optimum, Q(2));
  EXPECT_EQ(lp_optimum(g2.lp), Q(2));
  for (std::uint64_t s = 1; s <= 6; ++s) {
    const Preferences p = random_preferences(3, s);
    const Generated g = gen_stable_marriage(p);
    const long ref = brute_stable(p);
    EXPECT_EQ(*g.known_optimum, Q(ref)) << s;
    EXPECT_EQ(lp_optimum(g.lp), Q(ref)) << s;
  }
}

// Vertices of the fractional matching and vertex cover polytopes are
// half-integral.
TEST(Generators, FractionalVerticesAreHalfIntegral) {
  for (auto variant : {FractionalVariant::kMatching, FractionalVariant::kVertexCover}) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const Generated g = gen_fractional(5, 0.5, s, variant);
      StandardLP<Q> lp = to_standard_form(g.lp);
      validate(lp);
      const int orig = g.lp.num_cols();
      for (const auto& v : testing::reference_feasible_bases(lp)) {
        const std::vector<Q> x = lp.recover(v.x);
        for (int j = 0; j < orig; ++j) {
          const Q twice = 2 * x[j];
          EXPECT_EQ(twice.get_den(), 1) << fractional_variant_name(variant) << " seed " << s;
        }
      }
    }
  }
}

TEST(Generators, TriangleHasFractionalOptimum) {
  const std::vector<Edge> tri = {{0, 1}, {0, 2}, {1, 2}};
  EXPECT_EQ(lp_optimum(gen_fractional(3, tri, FractionalVariant::kMatching).lp), Q(3, 2));
  EXPECT_EQ(lp_optimum(gen_fractional(3, tri, FractionalVariant::kVertexCover).lp), Q(3, 2));
  EXPECT_EQ(lp_optimum(gen_fractional(3, tri, FractionalVariant::kEdgeCover).lp), Q(3, 2));
  EXPECT_EQ(lp_optimum(gen_fractional(3, tri, FractionalVariant::kStableSet).lp), Q(3, 2));
}

TEST(Generators, KleeMintyAndBealeOptima) {
  for (int d = 1; d <= 5; ++d) {
    const Generated g = gen_klee_minty(d);
    EXPECT_EQ(lp_optimum(g.lp), *g.known_optimum);
  }
  const Generated b = gen_beale_cycle();
  StandardLP<Q> lp = to_standard_form(b.lp);
  validate(lp);
  EXPECT_EQ(testing::reference_min(lp), Q(-5, 4));
  EXPECT_EQ(*b.known_optimum, Q(-5, 4));
}

TEST(Generators, PyramidApexIsHighlyDegenerate) {
  const Generated g = gen_degenerate_pyramid(4, 7);
  StandardLP<Q> lp = to_standard_form(g.lp);
  validate(lp);
  int apex_bases = 0;
  for (const auto& v : testing::reference_feasible_bases(lp)) {
    bool apex = true;
    for (int j = 0; j < 4; ++j) apex = apex && v.x[j] == 0;
    apex_bases += apex;
  }
  // x = 0: the cap slack is 1 and basic; any 4 of the 8 zero columns.
  EXPECT_GT(apex_bases, 1);
}

TEST(Generators, DeterministicPerSeed) {
  for (const auto& fam : generator_families()) {
    const std::map<std::string, std::string> p = fam == "named" ? std::map<std::string, std::string>{{"name", "lp_b"}}
                                                                : std::map<std::string, std::string>{};
    EXPECT_EQ(write_mps(generate(fam, p).lp), write_mps(generate(fam, p).lp)) << fam;
  }
  EXPECT_NE(write_mps(gen_degenerate_pyramid(5, 1).lp), write_mps(gen_degenerate_pyramid(5, 2).lp));
  EXPECT_NE(write_mps(gen_bipartite_matching(4, 4, 0.5, 1).lp), write_mps(gen_bipartite_matching(4, 4, 0.5, 2).lp));
}

TEST(Generators, ParametersAreRecorded) {
  const Generated g = generate("unit_flow", {{"kind", "min_cost_flow"}, {"nodes", "5"}, {"seed", "9"}});
  EXPECT_EQ(g.family, "unit_flow");
  EXPECT_EQ(g.seed, 9u);
  EXPECT_EQ(g.params.at("kind"), "min_cost_flow");
}

TEST(Generators, RejectsBadInput) {
  EXPECT_THROW(gen_bipartite_matching(2, 2, std::vector<Edge>{}), GeneratorError);
  EXPECT_THROW(gen_bipartite_matching(2, 2, std::vector<Edge>{{0, 0}, {0, 0}}), GeneratorError);
  EXPECT_THROW(gen_bipartite_matching(2, 2, 1.5, 1), GeneratorError);
  EXPECT_THROW(gen_fractional(3, std::vector<Edge>{{0, 1}, {1, 0}}, FractionalVariant::kMatching), GeneratorError);
  EXPECT_THROW(gen_fractional(3, std::vector<Edge>{{0, 1}}, FractionalVariant::kEdgeCover), GeneratorError);
  EXPECT_THROW(gen_unit_max_flow(3, {{1, 0}, {1, 2}}, 0, 2), GeneratorError);
  EXPECT_THROW(gen_klee_minty(0), GeneratorError);
  EXPECT_THROW(gen_degenerate_pyramid(1, 1), GeneratorError);
  EXPECT_THROW(gen_named("lp_z"), GeneratorError);
  EXPECT_THROW(gen_stable_marriage(Preferences{{{0, 0}}, {{0}}}), GeneratorError);
  EXPECT_THROW(generate("nope", {}), GeneratorError);
  EXPECT_THROW(generate("klee_minty", {{"dd", "3"}}), GeneratorError);
  EXPECT_THROW(generate("klee_minty", {{"d", "x"}}), GeneratorError);
  EXPECT_THROW(generate("unit_flow", {{"kind", "bogus"}}), GeneratorError);
}

}  // namespace
}  // namespace antistall
