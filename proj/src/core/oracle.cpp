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

#include "core/oracle.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace antistall {

long long binomial_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<long long>(c + 0.5L);
}

namespace {

std::vector<std::vector<int>> all_subsets(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(m);
  for (int i = 0; i < m; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int p = m - 1;
    while (p >= 0 && s[p] == n - m + p) --p;
    if (p < 0) break;
    ++s[p];
    for (int q = p + 1; q < m; ++q) s[q] = s[q - 1] + 1;
  }
  return out;
}

// Evaluates one subset; returns nullopt if A_B is singular.
std::optional<BasisEntry> evaluate(const StandardLP<Rational>& lp, const std::vector<int>& cols) {
  const DenseMatrix<Rational> ab = lp.A.select_columns(cols);
  DenseLU<Rational> lu(ab);
  if (!lu.ok()) return std::nullopt;
  BasisEntry e;
  e.basis.columns = cols;
  const std::vector<Rational> xb = lu.solve(lp.b);
  e.x.assign(lp.n, Rational(0));
  e.feasible = true;
  for (int k = 0; k < lp.m; ++k) {
    e.x[cols[k]] = xb[k];
    if (xb[k] < 0) e.feasible = false;
    if (xb[k] == 0) e.degenerate = true;
  }
  e.objective = lp.objective(e.x);
  if (!e.feasible) return e;

  std::vector<Rational> cb(lp.m);
  for (int k = 0; k < lp.m; ++k) cb[k] = lp.c[cols[k]];
  const std::vector<Rational> pi = lu.solve_transpose(cb);
  std::vector<char> basic(lp.n, 0);
  for (int j : cols) basic[j] = 1;
  e.optimal_basis = true;
  for (int j = 0; j < lp.n; ++j) {
    if (basic[j]) continue;
    Rational rc = lp.c[j];
    for (int i = 0; i < lp.m; ++i) rc -= pi[i] * lp.A(i, j);
    if (rc >= 0) continue;
    e.optimal_basis = false;
    const std::vector<Rational> d = lu.solve(lp.A.column(j));
    if (std::all_of(d.begin(), d.end(), [](const Rational& v) { return v <= 0; })) e.unbounded_ray = true;
  }
  return e;
}

}  // namespace

Enumeration enumerate_bases(const StandardLP<Rational>& lp, long long cap, unsigned threads) {
  if (lp.m < 1 || lp.n < lp.m) throw OracleError("oracle needs n >= m >= 1");
  const long long count = binomial_capped(lp.n, lp.m, cap);
  if (count > cap) {
    throw OracleError("C(" + std::to_string(lp.n) + ", " + std::to_string(lp.m) + ") exceeds the enumeration cap of " +
                      std::to_string(cap));
  }
  Enumeration out;
  out.n = lp.n;
  out.m = lp.m;
  out.subsets = count;

  const std::vector<std::vector<int>> subsets = all_subsets(lp.n, lp.m);
  std::vector<std::optional<BasisEntry>> slots(subsets.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, subsets.size()));
  if (threads <= 1) {
    for (std::size_t k = 0; k < subsets.size(); ++k) slots[k] = evaluate(lp, subsets[k]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t k = t; k < subsets.size(); k += threads) slots[k] = evaluate(lp, subsets[k]);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::map<std::vector<Rational>, int> vertex_index;
  bool unbounded = false;
  for (auto& slot : slots) {
    if (!slot) continue;
    BasisEntry& e = *slot;
    if (e.feasible) {
      auto [it, inserted] = vertex_index.emplace(e.x, static_cast<int>(out.vertices.size()));
      if (inserted) {
        out.vertices.push_back(e.x);
        out.bases_per_vertex.push_back(0);
      }
      e.vertex = it->second;
      ++out.bases_per_vertex[e.vertex];
      unbounded = unbounded || e.unbounded_ray;
      if (!out.optimum || e.objective < *out.optimum) out.optimum = e.objective;
      for (const Rational& v : e.x) {
        if (v == 0) continue;
        if (!out.delta_max || v > *out.delta_max) out.delta_max = v;
        if (!out.delta_min || v < *out.delta_min) out.delta_min = v;
      }
    }
    out.bases.push_back(std::move(e));
  }

  if (out.vertices.empty()) {
    out.status = SolveStatus::kInfeasible;
    out.optimum.reset();
    return out;
  }
  if (unbounded) {
    out.status = SolveStatus::kUnbounded;
    out.optimum.reset();
    return out;
  }
  out.status = SolveStatus::kOptimal;
  for (BasisEntry& e : out.bases) {
    if (!e.feasible || e.objective != *out.optimum) continue;
    e.optimal_vertex = true;
    if (out.optimal_vertex < 0) out.optimal_vertex = e.vertex;
    if (e.optimal_basis && !out.optimal_basis) out.optimal_basis = e.basis;
  }
  return out;
}

OracleOptimum oracle_optimum(const StandardLP<Rational>& lp, long long cap) {
  const Enumeration e = enumerate_bases(lp, cap, 1);
  OracleOptimum o;
  o.status = e.status;
  if (e.status != SolveStatus::kOptimal) return o;
  o.value = *e.optimum;
  if (!e.optimal_basis) throw OracleError("bounded LP without an optimal basis");
  o.basis = *e.optimal_basis;
  for (const BasisEntry& b : e.bases) {
    if (b.basis == o.basis) {
      o.vertex = b.x;
      break;
    }
  }
  return o;
}

}  // namespace antistall
