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

#include "core/pivot_rules.hpp"

#include <algorithm>
#include <cmath>

#include "core/bounds.hpp"

namespace antistall {

const char* rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::kDantzig: return "dantzig";
    case RuleKind::kBland: return "bland";
    case RuleKind::kLifo: return "lifo";
    case RuleKind::kMostFrequent: return "most_frequent";
    case RuleKind::kSteepestEdge: return "steepest_edge";
    case RuleKind::kAntistalling: return "antistalling";
  }
  return "?";
}

std::optional<RuleKind> parse_rule(const std::string& s) {
  for (RuleKind k : all_rules())
    if (s == rule_name(k)) return k;
  if (s == "most-frequent") return RuleKind::kMostFrequent;
  if (s == "steepest-edge") return RuleKind::kSteepestEdge;
  return std::nullopt;
}

const std::vector<RuleKind>& all_rules() {
  static const std::vector<RuleKind> kAll = {RuleKind::kDantzig,      RuleKind::kBland,
                                             RuleKind::kLifo,         RuleKind::kMostFrequent,
                                             RuleKind::kSteepestEdge, RuleKind::kAntistalling};
  return kAll;
}

void RuleMemory::record(int entering, int leaving, long iteration) {
  const std::size_t need = static_cast<std::size_t>(std::max(entering, leaving) + 1);
  if (last_left.size() < need) {
    last_left.resize(need, -1);
    entered_count.resize(need, 0);
  }
  ++entered_count[entering];
  last_left[leaving] = iteration;
}

namespace {

template <class T>
std::vector<int> candidates(const SimplexState<T>& state) {
  std::vector<int> s;
  const auto& rc = state.reduced_costs();
  for (int j = 0; j < state.lp().n; ++j)
    if (!state.is_basic(j) && state.tol().negative(rc[j])) s.push_back(j);
  return s;
}

template <class T>
long memory_value(const std::vector<long>& v, int j, long fallback) {
  return j < static_cast<int>(v.size()) ? v[j] : fallback;
}

}  // namespace

template <class T>
std::optional<int> select_classic(RuleKind kind, SimplexState<T>& state, const RuleMemory& memory) {
  const std::vector<int> s = candidates(state);
  if (s.empty()) return std::nullopt;
  const auto& rc = state.reduced_costs();
  int best = s.front();
  switch (kind) {
    case RuleKind::kBland:
      break;
    case RuleKind::kDantzig:
    case RuleKind::kAntistalling:
      for (int j : s)
        if (rc[j] < rc[best]) best = j;
      break;
    case RuleKind::kLifo:
      for (int j : s)
        if (memory_value<T>(memory.last_left, j, -1) > memory_value<T>(memory.last_left, best, -1)) best = j;
      break;
    case RuleKind::kMostFrequent:
      for (int j : s)
        if (memory_value<T>(memory.entered_count, j, 0) > memory_value<T>(memory.entered_count, best, 0)) best = j;
      break;
    case RuleKind::kSteepestEdge: {
      // -c'z / |z|_1 with z the basic direction of j; c'z = cbar_j.
      T best_score = 0;
      bool have = false;
      for (int j : s) {
        const std::vector<T> d = state.tableau_column(j);
        T norm = 1;
        for (const T& v : d) norm += ScalarTraits<T>::abs(v);
        T score = -rc[j] / norm;
        if (!have || score > best_score) {
          best = j;
          best_score = score;
          have = true;
        }
      }
      break;
    }
  }
  return best;
}

template <class T>
StepOutcome ClassicRule<T>::step(SimplexState<T>& state) {
  const std::optional<int> f = select_classic(kind_, state, memory_);
  if (!f) return StepOutcome::kOptimal;
  const RatioTest<T> rt = ratio_test(state, *f);
  if (rt.unbounded) return StepOutcome::kUnbounded;
  const long iteration = state.total_pivots();
  pivot(state, *f, rt.leaving, CaseLabel::kClassic);
  memory_.record(*f, rt.leaving, iteration);
  return StepOutcome::kPivoted;
}

template <class T>
void ImprovingDirection<T>::refresh(const SimplexState<T>& state) {
  const auto& tol = state.tol();
  cost = dot(state.lp().c, y);
  q1.clear();
  q2.clear();
  for (int i : state.zero_basics())
    if (tol.positive(y[i])) q1.push_back(i);
  for (int j = 0; j < state.lp().n; ++j)
    if (!state.is_basic(j) && tol.positive(y[j])) q2.push_back(j);
}

namespace {

template <class T>
T residual(const StandardLP<T>& lp, const std::vector<T>& y) {
  T worst = 0;
  for (int i = 0; i < lp.m; ++i) {
    T r = 0;
    for (int j = 0; j < lp.n; ++j) r += lp.A(i, j) * y[j];
    r = ScalarTraits<T>::abs(r);
    if (r > worst) worst = r;
  }
  return worst;
}

template <class T>
bool residual_ok(const SimplexState<T>& state, const std::vector<T>& y) {
  if constexpr (ScalarTraits<T>::kExact) {
    return residual(state.lp(), y) == 0;
  } else {
    const auto& a = state.lp().A;
    double amax = 0;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) amax = std::max(amax, std::fabs(a(i, j)));
    const double scale = 1.0 + max_abs(y) * (1.0 + amax);
    return residual(state.lp(), y) <= 1e-9 * scale;
  }
}

}  // namespace

template <class T>
ImprovingDirection<T> make_direction(const SimplexState<T>& state, std::vector<T> y) {
  const auto& lp = state.lp();
  if (static_cast<int>(y.size()) != lp.n) {
    throw InvalidDirection("direction has " + std::to_string(y.size()) + " entries, expected " + std::to_string(lp.n));
  }
  if (!residual_ok(state, y)) throw InvalidDirection("direction violates A y = 0");
  ImprovingDirection<T> dir;
  dir.y = std::move(y);
  dir.refresh(state);
  if (!state.tol().negative(dir.cost)) throw InvalidDirection("direction is not improving (c'y >= 0)");
  for (int i : state.zero_basics())
    if (!state.tol().nonnegative(dir.y[i])) throw InvalidDirection("direction leaves the feasible region at column " + std::to_string(i));
  for (int j : state.nonbasic())
    if (!state.tol().nonnegative(dir.y[j])) throw InvalidDirection("direction leaves the feasible region at column " + std::to_string(j));
  return dir;
}

template <class T>
ImprovingDirection<T> guided_direction(const SimplexState<T>& state, const std::vector<T>& target, bool target_is_vertex) {
  const auto& lp = state.lp();
  if (static_cast<int>(target.size()) != lp.n) throw InvalidDirection("target has the wrong dimension");
  if (!state.tol().less(lp.objective(target), state.objective())) {
    throw InvalidDirection("target is not better than the current vertex");
  }
  std::vector<T> y(lp.n);
  for (int j = 0; j < lp.n; ++j) y[j] = target[j] - state.x()[j];
  ImprovingDirection<T> dir = make_direction(state, std::move(y));
  if (target_is_vertex && static_cast<int>(dir.q2.size()) > lp.m) {
    throw InternalContradiction("|Q2| = " + std::to_string(dir.q2.size()) + " exceeds m for a vertex target");
  }
  return dir;
}

template <class T>
std::vector<T> compute_ray(SimplexState<T>& state, int f) {
  std::vector<T> z(state.lp().n, T(0));
  const std::vector<T> d = state.tableau_column(f);
  const auto& cols = state.basis().columns;
  for (std::size_t k = 0; k < cols.size(); ++k) z[cols[k]] = -d[k];
  z[f] = 1;
  return z;
}

template <class T>
Reroute<T> reroute_direction(SimplexState<T>& state, const ImprovingDirection<T>& dir, int f) {
  const auto& tol = state.tol();
  const std::vector<T> z = compute_ray(state, f);
  Reroute<T> out;
  bool have = false;
  for (int i : dir.q1) {  // ascending, so strict comparison keeps the smallest attainer
    if (!tol.negative(z[i])) continue;
    T ratio = dir.y[i] / -z[i];
    if (!have || ratio < out.alpha) {
      out.alpha = ratio;
      out.leaving = i;
      have = true;
    }
  }
  if (!have) throw std::invalid_argument("reroute: no index of Q1 blocks column " + std::to_string(f));

  std::vector<T> y = dir.y;
  for (int j = 0; j < state.lp().n; ++j) y[j] += out.alpha * z[j];
  if constexpr (!ScalarTraits<T>::kExact) {
    for (int i : dir.q1)
      if (tol.negative(z[i]) && tol.equal(dir.y[i] / -z[i], out.alpha)) y[i] = 0;
  }
  out.direction.y = std::move(y);
  out.direction.refresh(state);

  const int g = out.leaving;
  if (out.direction.y[g] != 0) throw InternalContradiction("reroute: y'_g is not zero");
  if (!tol.negative(z[g])) throw InternalContradiction("reroute: Abar_gf is not positive");
  if (!residual_ok(state, out.direction.y)) throw InternalContradiction("reroute: A y' != 0");
  if (!(out.direction.cost < dir.cost) || !tol.negative(out.direction.cost)) {
    throw InternalContradiction("reroute: c'y did not decrease");
  }
  if (out.direction.q2 != dir.q2) throw InternalContradiction("reroute: Q2 changed");
  if (!tol.positive(out.direction.y[f])) throw InternalContradiction("reroute: y'_f is not positive");
  for (int i : state.zero_basics())
    if (!tol.nonnegative(out.direction.y[i])) throw InternalContradiction("reroute: y' negative on Z(B)");
  return out;
}

namespace {

enum class Classification { kCaseI, kCaseII, kCaseIII };

template <class T>
int entering_in_support(const SimplexState<T>& state, const ImprovingDirection<T>& dir) {
  const auto& rc = state.reduced_costs();
  int f = -1;
  for (int j : dir.q2)
    if (state.tol().negative(rc[j]) && (f < 0 || rc[j] < rc[f])) f = j;
  if (f < 0) {
    throw InternalContradiction("no column of Q2 has a negative reduced cost although c'y < 0");
  }
  return f;
}

// Returns the class and, for Case II, the leaving index.
template <class T>
std::pair<Classification, int> classify(SimplexState<T>& state, const ImprovingDirection<T>& dir, int f) {
  const auto& tol = state.tol();
  const std::vector<T> d = state.tableau_column(f);
  bool blocked = false;
  int case2 = -1;
  for (int i : state.zero_basics()) {
    if (!tol.positive(d[state.position(i)])) continue;
    blocked = true;
    if (!std::binary_search(dir.q1.begin(), dir.q1.end(), i)) {
      case2 = i;
      break;  // zero_basics is ascending
    }
  }
  if (!blocked) return {Classification::kCaseI, -1};
  if (case2 >= 0) return {Classification::kCaseII, case2};
  return {Classification::kCaseIII, -1};
}

}  // namespace

template <class T>
AntistallingDecision<T> antistalling_step(SimplexState<T>& state, const ImprovingDirection<T>& dir) {
  AntistallingDecision<T> out;
  const int f = entering_in_support(state, dir);
  out.entering = f;
  out.direction = dir;
  auto [cls, leaving] = classify(state, dir, f);
  if (cls == Classification::kCaseI) {
    out.label = CaseLabel::kCaseI;
    const RatioTest<T> rt = ratio_test(state, f);
    if (rt.unbounded) {
      out.unbounded = true;
    } else {
      out.leaving = rt.leaving;
    }
    return out;
  }
  if (cls == Classification::kCaseII) {
    out.label = CaseLabel::kCaseII;
    out.leaving = leaving;
    return out;
  }

  Reroute<T> r = reroute_direction(state, dir, f);
  if (entering_in_support(state, r.direction) != f) throw InternalContradiction("reroute changed the entering column");
  auto [cls2, leaving2] = classify(state, r.direction, f);
  if (cls2 != Classification::kCaseII) throw InternalContradiction("reroute did not lead to Case II");
  out.label = CaseLabel::kCaseIIIThenII;
  out.leaving = leaving2;
  out.direction = r.direction;
  out.reroute = std::move(r);
  return out;
}

template <class T>
std::vector<std::pair<int, int>> finish_at_optimum(SimplexState<T>& state, const Basis& optimal_basis) {
  const auto& lp = state.lp();
  const auto& tol = state.tol();
  std::vector<char> in_star(lp.n, 0);
  for (int j : optimal_basis.columns) in_star[j] = 1;
  std::vector<char> excluded(lp.n, 0);
  std::vector<std::pair<int, int>> pivots;
  while (true) {
    const auto& rc = state.reduced_costs();
    int f = -1;
    for (int j = 0; j < lp.n; ++j) {
      if (state.is_basic(j) || excluded[j] || !tol.negative(rc[j])) continue;
      if (f < 0 || rc[j] < rc[f]) f = j;
    }
    if (f < 0) break;
    const std::vector<T> d = state.tableau_column(f);
    int leave = -1;
    for (int i : state.basis().sorted()) {
      if (in_star[i] || !tol.zero(state.x()[i]) || !tol.positive(d[state.position(i)])) continue;
      leave = i;
      break;
    }
    if (leave < 0) {
      throw InternalContradiction("finisher: no zero basic column outside the optimal basis blocks column " +
                                  std::to_string(f));
    }
    pivot(state, f, leave, CaseLabel::kFinisher);
    excluded[leave] = 1;
    pivots.emplace_back(f, leave);
  }
  return pivots;
}

template <class T>
std::optional<std::vector<T>> OptimalGuide<T>::direction(const SimplexState<T>& state) {
  if (!state.tol().less(state.lp().objective(x_star_), state.objective())) return std::nullopt;
  std::vector<T> y(x_star_.size());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = x_star_[j] - state.x()[j];
  return y;
}

template <class T>
std::optional<Basis> OptimalGuide<T>::optimal_basis_for(const std::vector<T>& x) const {
  if (x.size() != x_star_.size()) return std::nullopt;
  const T eps = ScalarTraits<T>::kExact ? T(0) : T(1e-7);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (ScalarTraits<T>::abs(x[j] - x_star_[j]) > eps) return std::nullopt;
  return b_star_;
}

template <class T>
std::optional<std::vector<T>> CentroidGuide<T>::direction(const SimplexState<T>& state) {
  const auto& lp = state.lp();
  std::vector<T> centroid(lp.n, T(0));
  int count = 0;
  for (const auto& p : points_) {
    if (static_cast<int>(p.size()) != lp.n || !state.tol().less(lp.objective(p), state.objective())) continue;
    for (int j = 0; j < lp.n; ++j) centroid[j] += p[j];
    ++count;
  }
  if (count == 0) return std::nullopt;
  for (int j = 0; j < lp.n; ++j) centroid[j] = centroid[j] / T(count) - state.x()[j];
  return centroid;
}

template <class T>
void AntistallingRule<T>::start_vertex(SimplexState<T>& state, std::vector<T> y) {
  ImprovingDirection<T> dir = make_direction(state, std::move(y));
  if (source_->guided() && static_cast<int>(dir.q2.size()) > state.lp().m) {
    throw InternalContradiction("|Q2| exceeds m for a guided direction");
  }
  vertex_ = state.vertex_id();
  y_at_arrival_ = dir.y;
  last_cost_ = dir.cost;
  dir_ = std::move(dir);
}

template <class T>
StepOutcome AntistallingRule<T>::finish(SimplexState<T>& state) {
  std::optional<Basis> target = source_->optimal_basis_for(state.x());
  if (!target) {
    // Bland's rule on a scratch state: at an optimal vertex every pivot is
    // degenerate, and it terminates with an optimal basis of that vertex.
    SimplexState<T> scratch(state.lp(), state.basis(), false);
    const T start = scratch.objective();
    RuleMemory unused;
    while (auto f = select_classic(RuleKind::kBland, scratch, unused)) {
      const RatioTest<T> rt = ratio_test(scratch, *f);
      if (rt.unbounded || !scratch.tol().zero(rt.step)) {
        throw InvalidDirection("direction source declared a non-optimal vertex optimal");
      }
      pivot(scratch, *f, rt.leaving, CaseLabel::kClassic);
    }
    if (scratch.objective() != start && !scratch.tol().equal(scratch.objective(), start)) {
      throw InternalContradiction("objective moved while searching for an optimal basis");
    }
    target = scratch.basis();
  }
  const long before = state.finisher_pivots();
  finish_at_optimum(state, *target);
  if (!state.is_optimal()) {
    // Only excluded columns still price out negatively; finish with Bland.
    state.violations().push_back({state.total_pivots(), "finisher",
                                  "negative reduced cost left on an excluded column; completed with Bland"});
    RuleMemory unused;
    while (auto f = select_classic(RuleKind::kBland, state, unused)) {
      const RatioTest<T> rt = ratio_test(state, *f);
      if (rt.unbounded) return StepOutcome::kUnbounded;
      pivot(state, *f, rt.leaving, CaseLabel::kFinisher);
    }
  }
  const long used = state.finisher_pivots() - before;
  if (used > state.lp().n - state.lp().m) {
    state.violations().push_back({state.total_pivots(), "finisher",
                                  std::to_string(used) + " finishing pivots exceed n - m"});
  }
  dir_.reset();
  return StepOutcome::kOptimal;
}

template <class T>
StepOutcome AntistallingRule<T>::step(SimplexState<T>& state) {
  if (state.is_optimal()) return StepOutcome::kOptimal;
  if (!dir_ || vertex_ != state.vertex_id()) {
    std::optional<std::vector<T>> y = source_->direction(state);
    if (!y) return finish(state);
    start_vertex(state, std::move(*y));
  }

  const ImprovingDirection<T> used = *dir_;
  AntistallingDecision<T> d = antistalling_step(state, used);
  if (d.unbounded) return StepOutcome::kUnbounded;

  const bool detail = state.detail_log();
  const T obj = state.objective();
  if (d.reroute) {
    PivotRecord<T> rr;
    rr.iteration = state.total_pivots();
    rr.is_pivot = false;
    rr.entering = d.entering;
    rr.leaving = d.reroute->leaving;
    rr.label = CaseLabel::kCaseIII;
    rr.objective_before = obj;
    rr.objective_after = obj;
    rr.q2_before = static_cast<int>(used.q2.size());
    rr.q2_after = static_cast<int>(d.reroute->direction.q2.size());
    // The reroute record carries the direction before the change; the
    // pivot record that follows carries the rerouted one.
    rr.direction_cost = used.cost;
    rr.direction_at_leaving = used.y[d.reroute->leaving];
    rr.alpha = d.reroute->alpha;
    if (detail) {
      rr.direction = used.y;
      rr.basis_before = state.basis().sorted();
    }
    state.log().records.push_back(std::move(rr));
  }

  const std::vector<int> nonbasic_before = state.nonbasic();
  PivotRecord<T>& rec = pivot(state, d.entering, d.leaving, d.label);
  rec.q2_before = static_cast<int>(d.direction.q2.size());
  rec.direction_cost = d.direction.cost;
  rec.direction_at_leaving = d.direction.y[d.leaving];
  if (detail) rec.direction = d.direction.y;

  dir_ = std::move(d.direction);
  if (rec.degenerate) {
    dir_->refresh(state);
    rec.q2_after = static_cast<int>(dir_->q2.size());
  }
  const PivotRecord<T> copy = rec;
  check_pivot(state, copy, *dir_, nonbasic_before);
  last_cost_ = dir_->cost;
  return StepOutcome::kPivoted;
}

template <class T>
void AntistallingRule<T>::check_pivot(SimplexState<T>& state, const PivotRecord<T>& rec,
                                      const ImprovingDirection<T>& used, const std::vector<int>& nonbasic_before) {
  const auto& lp = state.lp();
  const auto& tol = state.tol();
  auto fail = [&](const char* claim, std::string detail) {
    state.violations().push_back({rec.iteration, claim, std::move(detail)});
  };

  if (rec.degenerate) {
    if (rec.q2_after && rec.q2_before && *rec.q2_after != *rec.q2_before - 1) {
      fail("q2_descent", "|Q2| went from " + std::to_string(*rec.q2_before) + " to " + std::to_string(*rec.q2_after));
    }
    if (lp.n > lp.m) {
      if (state.consecutive_degenerate() > degenerate_pivot_cap(lp.n, lp.m, false)) {
        fail("theorem1", std::to_string(state.consecutive_degenerate()) + " consecutive degenerate pivots");
      }
      if (source_->guided() && state.consecutive_degenerate() > degenerate_pivot_cap(lp.n, lp.m, true)) {
        fail("remark1", std::to_string(state.consecutive_degenerate()) + " consecutive degenerate pivots");
      }
    }
    if (tol.less(last_cost_, used.cost)) fail("lemma2a", "c'y increased during a degenerate run");
    return;
  }

  // Non-degenerate pivot: y on N cap supp(y) must equal its value on arrival.
  if (static_cast<int>(y_at_arrival_.size()) == lp.n) {
    for (int i : nonbasic_before) {
      if (!tol.positive(used.y[i]) || i == rec.entering) continue;
      if (!tol.equal(used.y[i], y_at_arrival_[i])) {
        fail("lemma2b", "y_" + std::to_string(i) + " changed during the degenerate run");
        break;
      }
    }
  }
  if (tol.less(last_cost_, used.cost)) fail("lemma2a", "c'y increased before the vertex change");

  if (hook_ && source_->guided() && lp.n > lp.m && hook_->delta_min > 0) {
    const T gap_before = rec.objective_before - hook_->optimal_objective;
    const T gap_after = rec.objective_after - hook_->optimal_objective;
    const T lambda = T(lp.n - lp.m) * hook_->delta_max / hook_->delta_min;
    if (!contraction_check(gap_before, gap_after, lambda)) fail("lemma3", "optimality gap contracted too little");
  }
}

#define ANTISTALL_INSTANTIATE(T)                                                                              \
  template std::optional<int> select_classic(RuleKind, SimplexState<T>&, const RuleMemory&);                  \
  template class ClassicRule<T>;                                                                              \
  template struct ImprovingDirection<T>;                                                                      \
  template ImprovingDirection<T> make_direction(const SimplexState<T>&, std::vector<T>);                      \
  template ImprovingDirection<T> guided_direction(const SimplexState<T>&, const std::vector<T>&, bool);       \
  template std::vector<T> compute_ray(SimplexState<T>&, int);                                                 \
  template Reroute<T> reroute_direction(SimplexState<T>&, const ImprovingDirection<T>&, int);                 \
  template AntistallingDecision<T> antistalling_step(SimplexState<T>&, const ImprovingDirection<T>&);         \
  template std::vector<std::pair<int, int>> finish_at_optimum(SimplexState<T>&, const Basis&);                \
  template class OptimalGuide<T>;                                                                             \
  template class CentroidGuide<T>;                                                                            \
  template class AntistallingRule<T>;

ANTISTALL_INSTANTIATE(double)
ANTISTALL_INSTANTIATE(Rational)

#undef ANTISTALL_INSTANTIATE

}  // namespace antistall
