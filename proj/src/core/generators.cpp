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

#include "core/generators.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace antistall {

namespace {

using Rng = std::mt19937_64;

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void require(bool ok, const std::string& what) {
  if (!ok) throw GeneratorError(what);
}

void check_density(double p) { require(p >= 0.0 && p <= 1.0, "edge density must lie in [0, 1]"); }

std::string num(long v) { return std::to_string(v); }

// Kuhn's augmenting paths.
int max_bipartite_matching(int n_left, int n_right, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n_left);
  for (auto [u, v] : edges) adj[u].push_back(v);
  std::vector<int> match_right(n_right, -1);
  int size = 0;
  for (int u = 0; u < n_left; ++u) {
    std::vector<char> seen(n_right, 0);
    auto augment = [&](auto&& self, int a) -> bool {
      for (int v : adj[a]) {
        if (seen[v]) continue;
        seen[v] = 1;
        if (match_right[v] < 0 || self(self, match_right[v])) {
          match_right[v] = a;
          return true;
        }
      }
      return false;
    };
    if (augment(augment, u)) ++size;
  }
  return size;
}

// Edmonds-Karp on unit capacities.
int unit_max_flow_value(int n, const std::vector<Edge>& arcs, int s, int t) {
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (auto [u, v] : arcs) cap[u][v] += 1;
  int flow = 0;
  while (true) {
    std::vector<int> parent(n, -1);
    parent[s] = s;
    std::deque<int> q{s};
    while (!q.empty() && parent[t] < 0) {
      const int u = q.front();
      q.pop_front();
      for (int v = 0; v < n; ++v) {
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          q.push_back(v);
        }
      }
    }
    if (parent[t] < 0) return flow;
    for (int v = t; v != s; v = parent[v]) {
      cap[parent[v]][v] -= 1;
      cap[v][parent[v]] += 1;
    }
    ++flow;
  }
}

bool reachable(int n, const std::vector<Edge>& arcs, int s, int t) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : arcs) adj[u].push_back(v);
  std::vector<char> seen(n, 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  return seen[t];
}

std::vector<Rational> zeros(int n) { return std::vector<Rational>(n, Rational(0)); }

void check_edges(int n_a, int n_b, const std::vector<Edge>& edges, bool self_loops_forbidden) {
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    require(u >= 0 && u < n_a && v >= 0 && v < n_b, "edge endpoint out of range");
    require(!self_loops_forbidden || u != v, "self loops are not allowed");
    require(seen.insert({u, v}).second, "duplicate edge");
  }
}

}  // namespace

Generated gen_bipartite_matching(int n_left, int n_right, const std::vector<Edge>& edges) {
  require(n_left >= 1 && n_right >= 1, "bipartite sides need at least one node");
  require(!edges.empty(), "graph has zero edges");
  check_edges(n_left, n_right, edges, false);
  Generated g;
  g.family = "bipartite_matching";
  g.params = {{"left", num(n_left)}, {"right", num(n_right)}, {"edges", num(static_cast<long>(edges.size()))}};
  GeneralLP& lp = g.lp;
  lp.name = "matching_" + num(n_left) + "x" + num(n_right);
  lp.sense = Sense::kMaximize;
  for (auto [u, v] : edges) lp.add_column("x_l" + num(u) + "_r" + num(v), Rational(1));
  const int e = static_cast<int>(edges.size());
  for (int u = 0; u < n_left; ++u) {
    auto row = zeros(e);
    for (int k = 0; k < e; ++k)
      if (edges[k].first == u) row[k] = 1;
    lp.add_row("left_" + num(u), row, Relation::kLessEqual, Rational(1));
  }
  for (int v = 0; v < n_right; ++v) {
    auto row = zeros(e);
    for (int k = 0; k < e; ++k)
      if (edges[k].second == v) row[k] = 1;
    lp.add_row("right_" + num(v), row, Relation::kLessEqual, Rational(1));
  }
  g.known_optimum = Rational(max_bipartite_matching(n_left, n_right, edges));
  return g;
}

Generated gen_bipartite_matching(int n_left, int n_right, double edge_density, std::uint64_t seed) {
  require(n_left >= 1 && n_right >= 1, "bipartite sides need at least one node");
  check_density(edge_density);
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n_left; ++u)
    for (int v = 0; v < n_right; ++v)
      if (coin(rng, edge_density)) edges.emplace_back(u, v);
  Generated g = gen_bipartite_matching(n_left, n_right, edges);
  g.seed = seed;
  g.params["density"] = to_string(edge_density);
  g.params["seed"] = std::to_string(seed);
  return g;
}

const char* fractional_variant_name(FractionalVariant v) {
  switch (v) {
    case FractionalVariant::kMatching: return "matching";
    case FractionalVariant::kVertexCover: return "vertex_cover";
    case FractionalVariant::kEdgeCover: return "edge_cover";
    case FractionalVariant::kStableSet: return "stable_set";
  }
  return "?";
}

std::optional<FractionalVariant> parse_fractional_variant(const std::string& s) {
  for (auto v : {FractionalVariant::kMatching, FractionalVariant::kVertexCover, FractionalVariant::kEdgeCover,
                 FractionalVariant::kStableSet}) {
    if (s == fractional_variant_name(v)) return v;
  }
  return std::nullopt;
}

Generated gen_fractional(int n_nodes, const std::vector<Edge>& edges, FractionalVariant variant) {
  require(n_nodes >= 2, "graph needs at least two nodes");
  require(!edges.empty(), "graph has zero edges");
  check_edges(n_nodes, n_nodes, edges, true);
  std::set<Edge> undirected;
  for (auto [u, v] : edges) require(undirected.insert({std::min(u, v), std::max(u, v)}).second, "duplicate edge");
  std::vector<int> degree(n_nodes, 0);
  for (auto [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }

  Generated g;
  g.family = "fractional_matching";
  g.params = {{"nodes", num(n_nodes)}, {"edges", num(static_cast<long>(edges.size()))},
              {"variant", fractional_variant_name(variant)}};
  GeneralLP& lp = g.lp;
  lp.name = std::string(fractional_variant_name(variant)) + "_" + num(n_nodes);
  const int e = static_cast<int>(edges.size());
  auto edge_name = [&](int k) { return "x_" + num(edges[k].first) + "_" + num(edges[k].second); };

  switch (variant) {
    case FractionalVariant::kMatching:
    case FractionalVariant::kEdgeCover: {
      const bool cover = variant == FractionalVariant::kEdgeCover;
      if (cover) {
        for (int v = 0; v < n_nodes; ++v) require(degree[v] > 0, "edge cover: node " + num(v) + " is isolated");
      }
      lp.sense = cover ? Sense::kMinimize : Sense::kMaximize;
      for (int k = 0; k < e; ++k) lp.add_column(edge_name(k), Rational(1));
      for (int v = 0; v < n_nodes; ++v) {
        auto row = zeros(e);
        for (int k = 0; k < e; ++k)
          if (edges[k].first == v || edges[k].second == v) row[k] = 1;
        lp.add_row("node_" + num(v), row, cover ? Relation::kGreaterEqual : Relation::kLessEqual, Rational(1));
      }
      break;
    }
    case FractionalVariant::kVertexCover:
    case FractionalVariant::kStableSet: {
      const bool cover = variant == FractionalVariant::kVertexCover;
      lp.sense = cover ? Sense::kMinimize : Sense::kMaximize;
      for (int v = 0; v < n_nodes; ++v) {
        std::optional<Rational> up;
        if (!cover && degree[v] == 0) up = Rational(1);
        lp.add_column("y_" + num(v), Rational(1), Rational(0), up);
      }
      for (int k = 0; k < e; ++k) {
        auto row = zeros(n_nodes);
        row[edges[k].first] = 1;
        row[edges[k].second] = 1;
        lp.add_row("edge_" + num(edges[k].first) + "_" + num(edges[k].second), row,
                   cover ? Relation::kGreaterEqual : Relation::kLessEqual, Rational(1));
      }
      break;
    }
  }
  return g;
}

Generated gen_fractional(int n_nodes, double edge_density, std::uint64_t seed, FractionalVariant variant) {
  require(n_nodes >= 2, "graph needs at least two nodes");
  check_density(edge_density);
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<int> degree(n_nodes, 0);
  for (int u = 0; u < n_nodes; ++u)
    for (int v = u + 1; v < n_nodes; ++v)
      if (coin(rng, edge_density)) {
        edges.emplace_back(u, v);
        ++degree[u];
        ++degree[v];
      }
  // No isolated nodes: tie each one to its successor on the cycle 0..n-1.
  for (int v = 0; v < n_nodes; ++v) {
    if (degree[v] > 0) continue;
    const int w = (v + 1) % n_nodes;
    const Edge e{std::min(v, w), std::max(v, w)};
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
      edges.push_back(e);
      ++degree[v];
      ++degree[w];
    }
  }
  std::sort(edges.begin(), edges.end());
  Generated g = gen_fractional(n_nodes, edges, variant);
  g.seed = seed;
  g.params["density"] = to_string(edge_density);
  g.params["seed"] = std::to_string(seed);
  return g;
}

Generated gen_stable_marriage(const Preferences& prefs) {
  const int nm = static_cast<int>(prefs.men.size());
  const int nw = static_cast<int>(prefs.women.size());
  require(nm >= 1 && nw >= 1, "need at least one man and one woman");
  // rank[i][j] = position of j on i's list, or -1.
  std::vector<std::vector<int>> rank_m(nm, std::vector<int>(nw, -1)), rank_w(nw, std::vector<int>(nm, -1));
  for (int i = 0; i < nm; ++i) {
    for (std::size_t k = 0; k < prefs.men[i].size(); ++k) {
      const int j = prefs.men[i][k];
      require(j >= 0 && j < nw, "preference list of man " + num(i) + " names an unknown woman");
      require(rank_m[i][j] < 0, "preferences of man " + num(i) + " are not strict");
      rank_m[i][j] = static_cast<int>(k);
    }
  }
  for (int j = 0; j < nw; ++j) {
    for (std::size_t k = 0; k < prefs.women[j].size(); ++k) {
      const int i = prefs.women[j][k];
      require(i >= 0 && i < nm, "preference list of woman " + num(j) + " names an unknown man");
      require(rank_w[j][i] < 0, "preferences of woman " + num(j) + " are not strict");
      rank_w[j][i] = static_cast<int>(k);
    }
  }
  std::vector<Edge> edges;
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nw; ++j)
      if (rank_m[i][j] >= 0 && rank_w[j][i] >= 0) edges.emplace_back(i, j);
  require(!edges.empty(), "no mutually acceptable pair");
  const int e = static_cast<int>(edges.size());

  Generated g;
  g.family = "stable_marriage";
  g.params = {{"men", num(nm)}, {"women", num(nw)}};
  GeneralLP& lp = g.lp;
  lp.name = "marriage_" + num(nm) + "x" + num(nw);
  lp.sense = Sense::kMinimize;
  for (auto [i, j] : edges) lp.add_column("x_m" + num(i) + "_w" + num(j), Rational(rank_m[i][j] + 1));
  for (int i = 0; i < nm; ++i) {
    auto row = zeros(e);
    for (int k = 0; k < e; ++k)
      if (edges[k].first == i) row[k] = 1;
    lp.add_row("man_" + num(i), row, Relation::kLessEqual, Rational(1));
  }
  for (int j = 0; j < nw; ++j) {
    auto row = zeros(e);
    for (int k = 0; k < e; ++k)
      if (edges[k].second == j) row[k] = 1;
    lp.add_row("woman_" + num(j), row, Relation::kLessEqual, Rational(1));
  }
  for (int k = 0; k < e; ++k) {
    const auto [i, j] = edges[k];
    auto row = zeros(e);
    for (int q = 0; q < e; ++q) {
      const auto [a, b] = edges[q];
      const bool same = q == k;
      const bool man_prefers = a == i && rank_m[i][b] < rank_m[i][j];
      const bool woman_prefers = b == j && rank_w[j][a] < rank_w[j][i];
      if (same || man_prefers || woman_prefers) row[q] = 1;
    }
    lp.add_row("block_m" + num(i) + "_w" + num(j), row, Relation::kGreaterEqual, Rational(1));
  }

  // Men-proposing deferred acceptance over the mutually acceptable pairs.
  std::vector<int> next(nm, 0), wife(nm, -1), husband(nw, -1);
  std::deque<int> free_men;
  for (int i = 0; i < nm; ++i) free_men.push_back(i);
  while (!free_men.empty()) {
    const int i = free_men.front();
    free_men.pop_front();
    while (next[i] < static_cast<int>(prefs.men[i].size())) {
      const int j = prefs.men[i][next[i]++];
      if (rank_w[j][i] < 0) continue;
      if (husband[j] < 0) {
        husband[j] = i;
        wife[i] = j;
        break;
      }
      if (rank_w[j][i] < rank_w[j][husband[j]]) {
        const int old = husband[j];
        wife[old] = -1;
        free_men.push_back(old);
        husband[j] = i;
        wife[i] = j;
        break;
      }
    }
  }
  long cost = 0;
  for (int i = 0; i < nm; ++i)
    if (wife[i] >= 0) cost += rank_m[i][wife[i]] + 1;
  g.known_optimum = Rational(cost);
  return g;
}

Preferences random_preferences(int n, std::uint64_t seed) {
  require(n >= 1, "need at least one man and one woman");
  Rng rng(seed);
  Preferences p;
  auto list = [&]() {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    // Fisher-Yates with our own draws so the order is library independent.
    for (int k = n - 1; k > 0; --k) std::swap(v[k], v[uniform(rng, 0, k)]);
    return v;
  };
  for (int i = 0; i < n; ++i) p.men.push_back(list());
  for (int j = 0; j < n; ++j) p.women.push_back(list());
  return p;
}

const char* flow_kind_name(FlowKind k) {
  switch (k) {
    case FlowKind::kMaxFlow: return "max_flow";
    case FlowKind::kMinCostFlow: return "min_cost_flow";
    case FlowKind::kCirculation: return "circulation";
  }
  return "?";
}

std::optional<FlowKind> parse_flow_kind(const std::string& s) {
  for (auto k : {FlowKind::kMaxFlow, FlowKind::kMinCostFlow, FlowKind::kCirculation})
    if (s == flow_kind_name(k)) return k;
  return std::nullopt;
}

namespace {

// Flow LP on the given arcs: unit capacities, conservation rows for every
// node except `skip_row`, net supply `supply[v]` (out - in).
GeneralLP flow_lp(const std::string& name, int n, const std::vector<Edge>& arcs, const std::vector<Rational>& cost,
                  Sense sense, const std::vector<int>& conservation_nodes, const std::vector<Rational>& supply) {
  GeneralLP lp;
  lp.name = name;
  lp.sense = sense;
  const int a = static_cast<int>(arcs.size());
  for (int k = 0; k < a; ++k) {
    lp.add_column("f_" + num(arcs[k].first) + "_" + num(arcs[k].second), cost[k], Rational(0), Rational(1));
  }
  for (int v : conservation_nodes) {
    auto row = zeros(a);
    for (int k = 0; k < a; ++k) {
      if (arcs[k].first == v) row[k] += 1;
      if (arcs[k].second == v) row[k] -= 1;
    }
    lp.add_row("node_" + num(v), row, Relation::kEqual, supply[v]);
  }
  (void)n;
  return lp;
}

}  // namespace

Generated gen_unit_max_flow(int n_nodes, const std::vector<Edge>& arcs, int s, int t) {
  require(n_nodes >= 2, "flow network needs at least two nodes");
  require(s >= 0 && s < n_nodes && t >= 0 && t < n_nodes && s != t, "invalid source or sink");
  require(!arcs.empty(), "network has no arcs");
  check_edges(n_nodes, n_nodes, arcs, true);
  require(reachable(n_nodes, arcs, s, t), "sink is not reachable from the source");
  std::vector<Rational> cost;
  for (auto [u, v] : arcs) cost.push_back(Rational((u == s ? 1 : 0) - (v == s ? 1 : 0)));
  std::vector<int> nodes;
  for (int v = 0; v < n_nodes; ++v)
    if (v != s && v != t) nodes.push_back(v);
  Generated g;
  g.family = "unit_flow";
  g.params = {{"kind", "max_flow"}, {"nodes", num(n_nodes)}, {"arcs", num(static_cast<long>(arcs.size()))}};
  g.lp = flow_lp("maxflow_" + num(n_nodes), n_nodes, arcs, cost, Sense::kMaximize, nodes,
                 std::vector<Rational>(n_nodes, Rational(0)));
  g.known_optimum = Rational(unit_max_flow_value(n_nodes, arcs, s, t));
  return g;
}

Generated gen_unit_flow(FlowKind kind, int n_nodes, std::uint64_t seed, double arc_density) {
  require(n_nodes >= 2, "flow network needs at least two nodes");
  check_density(arc_density);
  Rng rng(seed);
  const int s = 0, t = n_nodes - 1;
  std::vector<Edge> arcs;
  std::set<Edge> have;
  for (int v = 0; v + 1 < n_nodes; ++v) {
    arcs.emplace_back(v, v + 1);
    have.insert({v, v + 1});
  }
  for (int u = 0; u < n_nodes; ++u) {
    for (int v = 0; v < n_nodes; ++v) {
      if (u == v || have.count({u, v})) continue;
      const bool draw = coin(rng, arc_density);
      if (kind == FlowKind::kMaxFlow && (v == s || u == t)) continue;
      if (draw) {
        arcs.emplace_back(u, v);
        have.insert({u, v});
      }
    }
  }
  std::sort(arcs.begin(), arcs.end());

  Generated g;
  if (kind == FlowKind::kMaxFlow) {
    g = gen_unit_max_flow(n_nodes, arcs, s, t);
  } else {
    std::vector<Rational> cost;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      cost.push_back(kind == FlowKind::kMinCostFlow ? Rational(uniform(rng, 1, 10)) : Rational(uniform(rng, -10, 10)));
    }
    std::vector<Rational> supply(n_nodes, Rational(0));
    if (kind == FlowKind::kMinCostFlow) supply[s] = 1;
    std::vector<int> nodes(n_nodes - 1);
    std::iota(nodes.begin(), nodes.end(), 0);
    g.family = "unit_flow";
    g.lp = flow_lp(std::string(flow_kind_name(kind)) + "_" + num(n_nodes), n_nodes, arcs, cost, Sense::kMinimize,
                   nodes, supply);
    if (kind == FlowKind::kMinCostFlow) {
      // One unit, unit capacities, positive costs: a shortest path.
      const long inf = std::numeric_limits<long>::max() / 4;
      std::vector<long> dist(n_nodes, inf);
      dist[s] = 0;
      for (int round = 0; round < n_nodes; ++round)
        for (std::size_t k = 0; k < arcs.size(); ++k) {
          const auto [u, v] = arcs[k];
          if (dist[u] < inf) dist[v] = std::min(dist[v], dist[u] + cost[k].get_num().get_si());
        }
      g.known_optimum = Rational(dist[t]);
    }
  }
  g.seed = seed;
  g.params = {{"kind", flow_kind_name(kind)}, {"nodes", num(n_nodes)}, {"seed", std::to_string(seed)},
              {"density", to_string(arc_density)}, {"arcs", num(static_cast<long>(arcs.size()))}};
  return g;
}

Generated gen_klee_minty(int d) {
  require(d >= 1 && d <= 12, "klee_minty needs 1 <= d <= 12");
  Generated g;
  g.family = "klee_minty";
  g.params = {{"d", num(d)}};
  GeneralLP& lp = g.lp;
  lp.name = "klee_minty_" + num(d);
  lp.sense = Sense::kMaximize;
  auto pow10 = [](int k) {
    mpz_class p = 1;
    for (int i = 0; i < k; ++i) p *= 10;
    return Rational(p);
  };
  for (int j = 1; j <= d; ++j) lp.add_column("x" + num(j), pow10(d - j));
  for (int i = 1; i <= d; ++i) {
    auto row = zeros(d);
    for (int j = 1; j < i; ++j) row[j - 1] = 2 * pow10(i - j);
    row[i - 1] = 1;
    lp.add_row("r" + num(i), row, Relation::kLessEqual, pow10(2 * (i - 1)));
  }
  g.known_optimum = pow10(2 * (d - 1));
  return g;
}

Generated gen_beale_cycle() {
  Generated g;
  g.family = "beale_cycle";
  GeneralLP& lp = g.lp;
  lp.name = "beale_cycle";
  const Rational c[] = {0, 0, 0, Rational(-3, 4), 20, Rational(-1, 2), 6};
  for (int j = 0; j < 7; ++j) lp.add_column("x" + num(j + 1), c[j]);
  lp.add_row("r1", {1, 0, 0, Rational(1, 4), -8, -1, 9}, Relation::kEqual, Rational(0));
  lp.add_row("r2", {0, 1, 0, Rational(1, 2), -12, Rational(-1, 2), 3}, Relation::kEqual, Rational(0));
  lp.add_row("r3", {0, 0, 1, 0, 0, 1, 0}, Relation::kEqual, Rational(1));
  g.known_optimum = Rational(-5, 4);
  return g;
}

Generated gen_degenerate_pyramid(int d, std::uint64_t seed) {
  require(d >= 2 && d <= 12, "degenerate_pyramid needs 2 <= d <= 12");
  Rng rng(seed);
  Generated g;
  g.family = "degenerate_pyramid";
  g.seed = seed;
  g.params = {{"d", num(d)}, {"seed", std::to_string(seed)}};
  GeneralLP& lp = g.lp;
  lp.name = "pyramid_" + num(d);
  for (int j = 0; j < d; ++j) lp.add_column("x" + num(j + 1), Rational(-uniform(rng, 1, 10)));
  for (int k = 0; k < d; ++k) {
    std::vector<Rational> row(d, Rational(-2));
    row[k] += d;
    lp.add_row("facet_" + num(k + 1), row, Relation::kLessEqual, Rational(0));
  }
  lp.add_row("cap", std::vector<Rational>(d, Rational(1)), Relation::kLessEqual, Rational(1));
  return g;
}

Generated gen_named(const std::string& name) {
  Generated g;
  g.family = "named";
  g.params = {{"name", name}};
  GeneralLP& lp = g.lp;
  lp.name = name;
  if (name == "lp_a") {
    lp.add_column("x1", Rational(-1));
    lp.add_column("x2", Rational(0));
    lp.add_row("r1", {1, 1}, Relation::kEqual, Rational(1));
    g.known_optimum = Rational(-1);
  } else if (name == "lp_b") {
    lp.add_column("x1", Rational(0));
    lp.add_column("x2", Rational(-1));
    lp.add_row("r1", {1, 0}, Relation::kLessEqual, Rational(1));
    lp.add_row("r2", {1, 1}, Relation::kLessEqual, Rational(2));
    lp.add_row("r3", {1, -1}, Relation::kLessEqual, Rational(1));
    g.known_optimum = Rational(-2);
  } else if (name == "lp_c") {
    // From the slack basis x = 0 is degenerate (s1 = s3 = 0). With
    // y = x* - x = (0,4,2 | 2,-2,0) the entering x3 is blocked only by s1,
    // which has y > 0, so the direction is rerouted before pivoting.
    lp.add_column("x1", Rational(-2));
    lp.add_column("x2", Rational(-3));
    lp.add_column("x3", Rational(-4));
    lp.add_row("r1", {2, -1, 1}, Relation::kLessEqual, Rational(0));
    lp.add_row("r2", {0, 0, 1}, Relation::kLessEqual, Rational(2));
    lp.add_row("r3", {1, 1, -2}, Relation::kLessEqual, Rational(0));
    g.known_optimum = Rational(-20);
  } else {
    throw GeneratorError("unknown named instance '" + name + "'");
  }
  return g;
}

namespace {

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& p) : p_(p) {}

  std::string str(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    auto it = p_.find(key);
    return it == p_.end() ? fallback : it->second;
  }
  long integer(const std::string& key, long fallback) {
    const std::string s = str(key, std::to_string(fallback));
    try {
      std::size_t pos = 0;
      const long v = std::stol(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw GeneratorError("parameter '" + key + "' is not an integer: " + s);
    }
  }
  double real(const std::string& key, double fallback) {
    const std::string s = str(key, to_string(fallback));
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw GeneratorError("parameter '" + key + "' is not a number: " + s);
    }
  }
  void finish() const {
    for (const auto& [k, v] : p_)
      if (!used_.count(k)) throw GeneratorError("unknown parameter '" + k + "'");
  }

 private:
  const std::map<std::string, std::string>& p_;
  std::set<std::string> used_;
};

}  // namespace

const std::vector<std::string>& generator_families() {
  static const std::vector<std::string> kFamilies = {"bipartite_matching", "fractional_matching", "stable_marriage",
                                                     "unit_flow",          "klee_minty",          "beale_cycle",
                                                     "degenerate_pyramid", "named"};
  return kFamilies;
}

Generated generate(const std::string& family, const std::map<std::string, std::string>& params) {
  Params p(params);
  Generated g;
  if (family == "bipartite_matching") {
    const int l = static_cast<int>(p.integer("left", 3));
    const int r = static_cast<int>(p.integer("right", 3));
    const double dens = p.real("density", 0.5);
    const auto seed = static_cast<std::uint64_t>(p.integer("seed", 1));
    p.finish();
    g = gen_bipartite_matching(l, r, dens, seed);
  } else if (family == "fractional_matching") {
    const int n = static_cast<int>(p.integer("nodes", 5));
    const double dens = p.real("density", 0.5);
    const auto seed = static_cast<std::uint64_t>(p.integer("seed", 1));
    const std::string vs = p.str("variant", "matching");
    p.finish();
    const auto v = parse_fractional_variant(vs);
    if (!v) throw GeneratorError("unknown variant '" + vs + "'");
    g = gen_fractional(n, dens, seed, *v);
  } else if (family == "stable_marriage") {
    const int n = static_cast<int>(p.integer("n", 3));
    const auto seed = static_cast<std::uint64_t>(p.integer("seed", 1));
    p.finish();
    g = gen_stable_marriage(random_preferences(n, seed));
    g.seed = seed;
    g.params["n"] = std::to_string(n);
    g.params["seed"] = std::to_string(seed);
  } else if (family == "unit_flow") {
    const std::string ks = p.str("kind", "max_flow");
    const int n = static_cast<int>(p.integer("nodes", 4));
    const auto seed = static_cast<std::uint64_t>(p.integer("seed", 1));
    const double dens = p.real("density", 0.3);
    p.finish();
    const auto k = parse_flow_kind(ks);
    if (!k) throw GeneratorError("unknown flow kind '" + ks + "'");
    g = gen_unit_flow(*k, n, seed, dens);
  } else if (family == "klee_minty") {
    const int d = static_cast<int>(p.integer("d", 3));
    p.finish();
    g = gen_klee_minty(d);
  } else if (family == "beale_cycle") {
    p.finish();
    g = gen_beale_cycle();
  } else if (family == "degenerate_pyramid") {
    const int d = static_cast<int>(p.integer("d", 3));
    const auto seed = static_cast<std::uint64_t>(p.integer("seed", 1));
    p.finish();
    g = gen_degenerate_pyramid(d, seed);
  } else if (family == "named") {
    const std::string name = p.str("name", "lp_a");
    p.finish();
    g = gen_named(name);
  } else {
    throw GeneratorError("unknown family '" + family + "'");
  }
  return g;
}

}  // namespace antistall
