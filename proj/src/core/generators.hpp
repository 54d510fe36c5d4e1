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

// Instance generators: combinatorial LPs (matching, covers, stable sets,
// stable marriage, unit-capacity flows) and classic simplex stress cases.
// All objective weights are unit unless stated; flow costs are small
// integers. Output depends only on the arguments.

#ifndef ANTISTALL_CORE_GENERATORS_HPP_
#define ANTISTALL_CORE_GENERATORS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/lp_model.hpp"

namespace antistall {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Edge = std::pair<int, int>;

struct Generated {
  GeneralLP lp;
  std::string family;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> params;
  // Optimal objective in the LP's own sense, when a combinatorial algorithm
  // provides it.
  std::optional<Rational> known_optimum;
};

// max 1'x s.t. one <= 1 row per node, one variable per edge (u in left,
// v in right). Throws GeneratorError on zero edges.
Generated gen_bipartite_matching(int n_left, int n_right, double edge_density, std::uint64_t seed);
Generated gen_bipartite_matching(int n_left, int n_right, const std::vector<Edge>& edges);

enum class FractionalVariant { kMatching, kVertexCover, kEdgeCover, kStableSet };
const char* fractional_variant_name(FractionalVariant v);
std::optional<FractionalVariant> parse_fractional_variant(const std::string& s);

// matching     max 1'x  s.t. A'x <= 1   (edge variables)
// vertex_cover min 1'y  s.t. A'^T y >= 1 (node variables)
// edge_cover   min 1'x  s.t. A'x >= 1   (edge variables; isolated node is an error)
// stable_set   max 1'y  s.t. A'^T y <= 1 (node variables; isolated nodes get y <= 1)
Generated gen_fractional(int n_nodes, double edge_density, std::uint64_t seed, FractionalVariant variant);
Generated gen_fractional(int n_nodes, const std::vector<Edge>& edges, FractionalVariant variant);

// men[i] lists women in decreasing preference, women[j] lists men. Pair
// (i, j) is an edge iff each appears on the other's list. Objective: minimize
// the sum of the men's ranks of their partners, whose optimum is the
// man-optimal stable matching.
struct Preferences {
  std::vector<std::vector<int>> men;
  std::vector<std::vector<int>> women;
};
Generated gen_stable_marriage(const Preferences& prefs);
Preferences random_preferences(int n, std::uint64_t seed);

enum class FlowKind { kMaxFlow, kMinCostFlow, kCirculation };
const char* flow_kind_name(FlowKind k);
std::optional<FlowKind> parse_flow_kind(const std::string& s);

// Random digraph on n_nodes with a backbone path 0 -> 1 -> ... -> n-1 plus
// arcs i -> j (i != j) drawn with the given density; capacities are upper
// bounds of 1. max_flow: source 0, sink n-1, maximize net outflow of the
// source, conservation at the other nodes. min_cost_flow: one unit from 0 to
// n-1, costs in [1, 10]. circulation: costs in [-10, 10]. The conservation
// row of node n-1 is omitted to keep full row rank.
Generated gen_unit_flow(FlowKind kind, int n_nodes, std::uint64_t seed, double arc_density = 0.3);
// Throws GeneratorError if t is unreachable from s.
Generated gen_unit_max_flow(int n_nodes, const std::vector<Edge>& arcs, int s, int t);

// max sum 10^(d-j) x_j s.t. 2 sum_{j<i} 10^(i-j) x_j + x_i <= 100^(i-1).
Generated gen_klee_minty(int d);
// Three equality rows, seven columns; cycles under the largest-coefficient
// rule with smallest-index ties from the basis {x1, x2, x3}.
Generated gen_beale_cycle();
// x >= 0, d x_k - 2 sum_j x_j <= 0 (k = 1..d), sum_j x_j <= 1,
// min -w'x with w in [1, 10]. The apex x = 0 lies on 2d facets.
Generated gen_degenerate_pyramid(int d, std::uint64_t seed);

// "lp_a", "lp_b", "lp_c".
Generated gen_named(const std::string& name);

// Dispatcher used by the command line: family names are bipartite_matching,
// fractional_matching, stable_marriage, unit_flow, klee_minty, beale_cycle,
// degenerate_pyramid, named. Unknown keys are rejected.
Generated generate(const std::string& family, const std::map<std::string, std::string>& params);
const std::vector<std::string>& generator_families();

}  // namespace antistall

#endif  // ANTISTALL_CORE_GENERATORS_HPP_
