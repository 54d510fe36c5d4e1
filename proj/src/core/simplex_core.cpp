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

#include "core/simplex_core.hpp"

#include <algorithm>
#include <set>

namespace antistall {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kUnbounded: return "Unbounded";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kIterationLimit: return "IterationLimit";
    case SolveStatus::kCycled: return "Cycled";
    case SolveStatus::kTimeLimit: return "TimeLimit";
  }
  return "?";
}

const char* case_label_name(CaseLabel l) {
  switch (l) {
    case CaseLabel::kCaseI: return "I";
    case CaseLabel::kCaseII: return "II";
    case CaseLabel::kCaseIII: return "III";
    case CaseLabel::kCaseIIIThenII: return "III->II";
    case CaseLabel::kClassic: return "classic";
    case CaseLabel::kFinisher: return "finisher";
  }
  return "?";
}

std::optional<CaseLabel> parse_case_label(const std::string& s) {
  for (auto l : {CaseLabel::kCaseI, CaseLabel::kCaseII, CaseLabel::kCaseIII, CaseLabel::kCaseIIIThenII,
                 CaseLabel::kClassic, CaseLabel::kFinisher}) {
    if (s == case_label_name(l)) return l;
  }
  return std::nullopt;
}

template <class T>
SimplexState<T>::SimplexState(const StandardLP<T>& lp, const Basis& basis, bool detail_log)
    : lp_(&lp), tol_(lp.tolerance()), factor_(lp, basis), detail_log_(detail_log) {
  std::vector<T> xb = factor_.solve(lp.b);
  x_.assign(lp.n, T(0));
  for (int k = 0; k < lp.m; ++k) x_[basis.columns[k]] = xb[k];
  rc_ = antistall::reduced_costs(lp, factor_);
  log_.n = lp.n;
  log_.m = lp.m;
  log_.initial_objective = objective();
}

template <class T>
std::vector<int> SimplexState<T>::nonbasic() const {
  std::vector<int> out;
  for (int j = 0; j < lp_->n; ++j)
    if (!is_basic(j)) out.push_back(j);
  return out;
}

template <class T>
std::vector<int> SimplexState<T>::zero_basics() const {
  std::vector<int> z;
  for (int j : basis().columns)
    if (tol_.zero(x_[j])) z.push_back(j);
  std::sort(z.begin(), z.end());
  return z;
}

template <class T>
BasicSolution<T> SimplexState<T>::solution() const {
  return classify_solution(*lp_, basis(), x_);
}

template <class T>
PivotRecord<T>& SimplexState<T>::apply_pivot(int f, int g, CaseLabel label) {
  if (f < 0 || f >= lp_->n || is_basic(f)) throw InvalidPivot("entering column " + std::to_string(f) + " is not nonbasic");
  if (g < 0 || g >= lp_->n || !is_basic(g)) throw InvalidPivot("leaving column " + std::to_string(g) + " is not basic");
  const std::vector<T> d = factor_.tableau_column(f);
  const int p = factor_.position(g);
  if (tol_.zero(d[p])) {
    throw InvalidPivot("pivot element Abar(" + std::to_string(g) + "," + std::to_string(f) + ") is zero");
  }
  T step = tol_.zero(x_[g]) ? T(0) : T(x_[g] / d[p]);
  if (step < 0) throw InvalidPivot("pivot on column " + std::to_string(g) + " would take a negative step");

  PivotRecord<T> rec;
  rec.iteration = total_pivots_;
  rec.entering = f;
  rec.leaving = g;
  rec.label = label;
  rec.step = step;
  rec.degenerate = step == 0;
  rec.objective_before = objective();
  rec.pivot_element = d[p];
  if (detail_log_) rec.basis_before = basis().sorted();

  const Basis old_basis = basis();
  factor_.replace(p, f, d);
  if constexpr (ScalarTraits<T>::kExact) {
    if (step != 0) {
      for (int k = 0; k < lp_->m; ++k) x_[old_basis.columns[k]] -= step * d[k];
    }
    x_[g] = 0;
    x_[f] = step;
  } else {
    std::vector<T> xb = factor_.solve(lp_->b);
    x_.assign(lp_->n, T(0));
    for (int k = 0; k < lp_->m; ++k) x_[basis().columns[k]] = xb[k];
    if (step == 0) {
      // Degenerate: the vertex does not move; keep it bitwise identical.
      for (int k = 0; k < lp_->m; ++k) {
        const int j = basis().columns[k];
        if (tol_.zero(x_[j])) x_[j] = 0;
      }
    }
  }
  rc_ = antistall::reduced_costs(*lp_, factor_);

  rec.objective_after = objective();
  rec.feasible_after = true;
  for (int j : basis().columns)
    if (!tol_.nonnegative(x_[j])) rec.feasible_after = false;

  ++total_pivots_;
  if (label == CaseLabel::kFinisher) ++finisher_pivots_;
  if (rec.degenerate) {
    ++degenerate_pivots_;
    if (label != CaseLabel::kFinisher) {
      ++consecutive_degenerate_;
      max_consecutive_degenerate_ = std::max(max_consecutive_degenerate_, consecutive_degenerate_);
    }
  } else {
    consecutive_degenerate_ = 0;
    ++distinct_vertices_;
  }
  log_.records.push_back(std::move(rec));
  return log_.records.back();
}

template <class T>
RatioTest<T> ratio_test(SimplexState<T>& state, int f) {
  const auto& tol = state.tol();
  const std::vector<T> d = state.tableau_column(f);
  const auto& cols = state.basis().columns;
  RatioTest<T> best;
  best.unbounded = true;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (!tol.positive(d[k])) continue;
    const int j = cols[k];
    T ratio = tol.zero(state.x()[j]) ? T(0) : T(state.x()[j] / d[k]);
    if (best.unbounded || tol.less(ratio, best.step) || (!tol.less(best.step, ratio) && j < best.leaving)) {
      best.unbounded = false;
      best.leaving = j;
      best.step = ratio;
    }
  }
  return best;
}

template <class T>
PivotRecord<T>& pivot(SimplexState<T>& state, int f, int g, CaseLabel label) {
  return state.apply_pivot(f, g, label);
}

namespace {

// Bland's rule on a state; used by phase one, which must not depend on the
// rule implementations layered above this module.
template <class T>
StepOutcome bland_step(SimplexState<T>& state) {
  const auto& rc = state.reduced_costs();
  for (int j = 0; j < state.lp().n; ++j) {
    if (state.is_basic(j) || !state.tol().negative(rc[j])) continue;
    RatioTest<T> rt = ratio_test(state, j);
    if (rt.unbounded) return StepOutcome::kUnbounded;
    pivot(state, j, rt.leaving, CaseLabel::kClassic);
    return StepOutcome::kPivoted;
  }
  return StepOutcome::kOptimal;
}

// Singleton column j in row i: A(i,j) != 0 and the rest of column j is 0.
template <class T>
int singleton_row(const StandardLP<T>& lp, int j) {
  int row = -1;
  for (int i = 0; i < lp.m; ++i) {
    if (lp.A(i, j) == 0) continue;
    if (row >= 0) return -1;
    row = i;
  }
  return row;
}

}  // namespace

template <class T>
PhaseOneResult<T> phase_one(const StandardLP<T>& lp, long max_iterations) {
  PhaseOneResult<T> result;
  std::vector<int> crash(lp.m, -1);
  // Highest-index singleton per row, so appended slacks win over originals.
  for (int j = lp.n - 1; j >= 0; --j) {
    const int i = singleton_row(lp, j);
    if (i < 0 || crash[i] >= 0) continue;
    const bool ok = lp.b[i] == 0 || ((lp.b[i] > 0) == (lp.A(i, j) > 0));
    if (ok) crash[i] = j;
  }
  if (std::all_of(crash.begin(), crash.end(), [](int j) { return j >= 0; })) {
    result.feasible = true;
    result.basis.columns = crash;
    return result;
  }

  StandardLP<T> aux = lp;
  for (int i = 0; i < aux.m; ++i) {
    if (crash[i] >= 0 || aux.b[i] >= 0) continue;
    for (int j = 0; j < aux.n; ++j) aux.A(i, j) = -aux.A(i, j);
    aux.b[i] = -aux.b[i];
  }
  aux.c.assign(aux.n, T(0));
  Basis start;
  start.columns.resize(lp.m);
  for (int i = 0; i < lp.m; ++i) {
    if (crash[i] >= 0) {
      start.columns[i] = crash[i];
      continue;
    }
    std::vector<T> e(aux.m, T(0));
    e[i] = 1;
    aux.A.append_column(e);
    aux.c.push_back(T(1));
    aux.tags.push_back(ColumnKind::kArtificial);
    aux.sources.push_back({i, -1});
    aux.column_names.push_back("artificial_" + std::to_string(i));
    start.columns[i] = aux.n;
    ++aux.n;
    ++result.artificials;
  }

  SimplexState<T> state(aux, start);
  const long limit = max_iterations > 0 ? max_iterations : default_iteration_limit(aux);
  while (state.total_pivots() < limit) {
    if (bland_step(state) != StepOutcome::kPivoted) break;
  }
  result.pivots = state.total_pivots();
  if (state.tol().positive(state.objective())) {
    result.feasible = false;
    return result;
  }

  // Drive zero-level artificials out of the basis.
  for (int p = 0; p < aux.m; ++p) {
    const int art = state.basis().columns[p];
    if (art < lp.n) continue;
    std::vector<T> e(aux.m, T(0));
    e[p] = 1;
    const std::vector<T> row = state.factorization().solve_transpose(e);
    int entering = -1;
    for (int j = 0; j < lp.n && entering < 0; ++j) {
      if (state.is_basic(j)) continue;
      T v = 0;
      for (int i = 0; i < aux.m; ++i) v += row[i] * aux.A(i, j);
      if (!state.tol().zero(v)) entering = j;
    }
    if (entering < 0) throw ModelError("phase one: row " + std::to_string(p) + " is redundant; validate the LP first");
    // Abar may be negative here; the step is zero because the artificial is at zero.
    state.apply_pivot(entering, art, CaseLabel::kClassic);
    ++result.pivots;
  }
  result.feasible = true;
  result.basis = state.basis();
  return result;
}

template <class T>
SolveResult<T> solve(const StandardLP<T>& lp, PivotRule<T>& rule, const SolveOptions<T>& options) {
  SolveResult<T> result;
  Basis start;
  if (options.initial_basis) {
    start = *options.initial_basis;
  } else {
    PhaseOneResult<T> p1 = phase_one(lp, options.max_iterations);
    result.phase_one_pivots = p1.pivots;
    if (!p1.feasible) {
      result.status = SolveStatus::kInfeasible;
      result.message = "phase one optimum is positive";
      return result;
    }
    start = p1.basis;
  }

  const bool detail = options.detail_log.value_or(lp.n <= 200);
  SimplexState<T> state(lp, start, detail);
  if (!state.solution().feasible) throw BasisError("initial basis is not feasible", -1);
  state.log().rule = rule.name();
  state.log().guided = rule.guided();

  const long limit = options.max_iterations > 0 ? options.max_iterations : default_iteration_limit(lp);
  const bool track_cycles = options.detect_cycles && ScalarTraits<T>::kExact && lp.n <= 30;
  std::set<std::vector<int>> seen;
  if (track_cycles) seen.insert(state.basis().sorted());

  while (true) {
    if (state.total_pivots() >= limit) {
      result.status = SolveStatus::kIterationLimit;
      break;
    }
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
      result.status = SolveStatus::kTimeLimit;
      break;
    }
    const long before = state.total_pivots();
    const StepOutcome out = rule.step(state);
    if (out == StepOutcome::kOptimal) {
      result.status = SolveStatus::kOptimal;
      break;
    }
    if (out == StepOutcome::kUnbounded) {
      result.status = SolveStatus::kUnbounded;
      break;
    }
    if (state.total_pivots() == before) throw std::logic_error("pivot rule made no progress");
    if (track_cycles && !seen.insert(state.basis().sorted()).second) {
      result.status = SolveStatus::kCycled;
      result.message = "basis repeated after pivot " + std::to_string(state.total_pivots());
      break;
    }
  }

  result.basis = state.basis();
  result.x = state.x();
  result.objective = state.objective();
  result.original_objective = lp.original_objective(state.x());
  result.pivots = state.total_pivots();
  result.degenerate_pivots = state.degenerate_pivots();
  result.finisher_pivots = state.finisher_pivots();
  result.max_consecutive_degenerate = state.max_consecutive_degenerate();
  result.distinct_vertices = state.distinct_vertices();
  result.violations = state.violations();
  result.log = std::move(state.log());
  return result;
}

template class SimplexState<double>;
template class SimplexState<Rational>;
template RatioTest<double> ratio_test(SimplexState<double>&, int);
template RatioTest<Rational> ratio_test(SimplexState<Rational>&, int);
template PivotRecord<double>& pivot(SimplexState<double>&, int, int, CaseLabel);
template PivotRecord<Rational>& pivot(SimplexState<Rational>&, int, int, CaseLabel);
template PhaseOneResult<double> phase_one(const StandardLP<double>&, long);
template PhaseOneResult<Rational> phase_one(const StandardLP<Rational>&, long);
template SolveResult<double> solve(const StandardLP<double>&, PivotRule<double>&, const SolveOptions<double>&);
template SolveResult<Rational> solve(const StandardLP<Rational>&, PivotRule<Rational>&, const SolveOptions<Rational>&);

}  // namespace antistall
