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

#include "core/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace antistall {

namespace {

constexpr long double kCeilGuard = 1e-12L;
constexpr long long kSaturated = std::numeric_limits<long long>::max();

void require_dims(int n, int m) {
  if (m < 1 || n <= m) {
    throw std::invalid_argument("bounds need n > m >= 1 (got n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  }
}

long long saturating_ceil(long double v) {
  long double c = std::ceil(v - kCeilGuard);
  if (c < 0) c = 0;
  if (c >= static_cast<long double>(kSaturated)) return kSaturated;
  return static_cast<long long>(c);
}

long long saturating_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

// (n-m) ceil((n-m) r ln(m r)) with r = Delta/delta.
long long vertex_cap_from_ratio(int n, int m, long double ratio) {
  const long double k = n - m;
  const long double inner = k * ratio * std::log(static_cast<long double>(m) * ratio);
  return saturating_mul(n - m, saturating_ceil(inner));
}

long double checked_ratio(const Rational& delta_max, const Rational& delta_min) {
  if (delta_min <= 0) throw std::invalid_argument("delta must be positive");
  if (delta_max < delta_min) throw std::invalid_argument("Delta must be at least delta");
  Rational r = delta_max / delta_min;
  return static_cast<long double>(r.get_d());
}

bool is_integer(const Rational& v) { return v.get_den() == 1; }

}  // namespace

long long degenerate_pivot_cap(int n, int m, bool guided) {
  require_dims(n, m);
  const long long unguided = n - m - 1;
  return guided ? std::min<long long>(unguided, m - 1) : unguided;
}

long long distinct_vertex_cap(int n, int m, const Rational& delta_max, const Rational& delta_min) {
  require_dims(n, m);
  return vertex_cap_from_ratio(n, m, checked_ratio(delta_max, delta_min));
}

long long total_pivot_cap(int n, int m, const Rational& delta_max, const Rational& delta_min) {
  require_dims(n, m);
  const long long vertices = vertex_cap_from_ratio(n, m, checked_ratio(delta_max, delta_min));
  return saturating_mul(std::min(n - m, m), vertices);
}

long long total_pivot_cap(int n, int m, double delta_max, double delta_min) {
  require_dims(n, m);
  if (!(delta_min > 0)) throw std::invalid_argument("delta must be positive");
  if (delta_max < delta_min) throw std::invalid_argument("Delta must be at least delta");
  const long double ratio = static_cast<long double>(delta_max) / delta_min;
  return saturating_mul(std::min(n - m, m), vertex_cap_from_ratio(n, m, ratio));
}

long long integral_pivot_cap(int n, int m, const Rational& delta_a, const Rational& b_l1) {
  require_dims(n, m);
  if (!is_integer(delta_a) || !is_integer(b_l1)) throw std::invalid_argument("Delta_A and |b|_1 must be integral");
  if (delta_a < 1 || b_l1 < 1) throw std::invalid_argument("Delta_A and |b|_1 must be at least 1");
  Rational r = delta_a * delta_a * b_l1;
  return saturating_mul(std::min(n - m, m), vertex_cap_from_ratio(n, m, static_cast<long double>(r.get_d())));
}

bool contraction_check(const Rational& gap_before, const Rational& gap_after, const Rational& lambda) {
  Rational bound = (1 - 1 / lambda) * gap_before;
  return gap_after <= bound;
}

bool contraction_check(double gap_before, double gap_after, double lambda) {
  const double bound = (1.0 - 1.0 / lambda) * gap_before;
  return gap_after <= bound + 1e-9 * std::max(1.0, std::fabs(gap_before));
}

std::optional<Rational> max_abs_subdeterminant(const DenseMatrix<Rational>& a, long long budget) {
  const int rows = a.rows(), cols = a.cols();
  const int kmax = std::min(rows, cols);

  auto choose = [](int n, int k) {
    long double c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
  };
  long double total = 0;
  for (int k = 1; k <= kmax; ++k) total += choose(rows, k) * choose(cols, k);
  if (total > static_cast<long double>(budget)) return std::nullopt;

  Rational best = 0;
  for (int k = 1; k <= kmax; ++k) {
    std::vector<int> ri(k), ci(k);
    for (int i = 0; i < k; ++i) ri[i] = i;
    while (true) {
      for (int i = 0; i < k; ++i) ci[i] = i;
      while (true) {
        DenseMatrix<Rational> sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub(i, j) = a(ri[i], ci[j]);
        Rational d = abs(DenseLU<Rational>(sub).determinant());
        if (d > best) best = d;
        int p = k - 1;
        while (p >= 0 && ci[p] == cols - k + p) --p;
        if (p < 0) break;
        ++ci[p];
        for (int q = p + 1; q < k; ++q) ci[q] = ci[q - 1] + 1;
      }
      int p = k - 1;
      while (p >= 0 && ri[p] == rows - k + p) --p;
      if (p < 0) break;
      ++ri[p];
      for (int q = p + 1; q < k; ++q) ri[q] = ri[q - 1] + 1;
    }
  }
  return best;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kNotApplicable: return "n/a";
  }
  return "?";
}

void BoundReport::compute_caps() {
  if (m < 1 || n <= m) {
    theorem1_cap = remark1_cap = 0;
    return;
  }
  theorem1_cap = degenerate_pivot_cap(n, m, false);
  remark1_cap = degenerate_pivot_cap(n, m, true);
  if (delta_max && delta_min && *delta_min > 0 && *delta_max >= *delta_min) {
    lemma1_vertices = distinct_vertex_cap(n, m, *delta_max, *delta_min);
    theorem2_total = total_pivot_cap(n, m, *delta_max, *delta_min);
    theorem2_with_finisher = *theorem2_total == kSaturated ? kSaturated : *theorem2_total + (n - m);
  }
  if (delta_a && b_l1 && delta_a->get_den() == 1 && b_l1->get_den() == 1 && *delta_a >= 1 && *b_l1 >= 1) {
    corollary1_total = integral_pivot_cap(n, m, *delta_a, *b_l1);
  }
}

void BoundReport::evaluate() {
  verdicts.clear();
  auto add = [&](const char* name, std::optional<long long> cap, long long observed) {
    Verdict v = Verdict::kNotApplicable;
    if (antistalling && cap) v = observed <= *cap ? Verdict::kPass : Verdict::kFail;
    verdicts.emplace_back(name, v);
  };
  const bool dims_ok = m >= 1 && n > m;
  add("theorem1", dims_ok ? std::optional<long long>(theorem1_cap) : std::nullopt, observed_max_consecutive_degenerate);
  add("remark1", dims_ok && guided ? std::optional<long long>(remark1_cap) : std::nullopt,
      observed_max_consecutive_degenerate);
  add("finisher", dims_ok ? std::optional<long long>(n - m) : std::nullopt, observed_finisher_pivots);
  add("lemma1", guided ? lemma1_vertices : std::nullopt, observed_distinct_vertices);
  add("theorem2", guided ? theorem2_total : std::nullopt, observed_total_pivots);
  add("corollary1", guided ? corollary1_total : std::nullopt, observed_total_pivots);
}

bool BoundReport::all_pass() const {
  return std::none_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.second == Verdict::kFail; });
}

std::string BoundReport::verdict_string() const {
  std::string s;
  for (const auto& [name, v] : verdicts) {
    if (!s.empty()) s += ';';
    s += name;
    s += '=';
    s += verdict_name(v);
  }
  return s;
}

}  // namespace antistall
