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

#include "core/lp_model.hpp"

#include <algorithm>
#include <set>

namespace antistall {

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "=";
    case Relation::kGreaterEqual: return ">=";
  }
  return "?";
}

const char* column_kind_name(ColumnKind k) {
  switch (k) {
    case ColumnKind::kOriginal: return "original";
    case ColumnKind::kSlack: return "slack";
    case ColumnKind::kSurplus: return "surplus";
    case ColumnKind::kShift: return "shift";
    case ColumnKind::kArtificial: return "artificial";
  }
  return "?";
}

int GeneralLP::add_column(std::string col_name, Rational obj, std::optional<Rational> lo,
                          std::optional<Rational> up) {
  column_names.push_back(std::move(col_name));
  cost.push_back(std::move(obj));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(up));
  for (auto& r : rows) r.coeffs.emplace_back(0);
  return num_cols() - 1;
}

void GeneralLP::add_row(std::string row_name, std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  rows.push_back(Constraint{std::move(row_name), std::move(coeffs), rel, std::move(rhs)});
}

void validate_general(const GeneralLP& gp) {
  const auto n = static_cast<std::size_t>(gp.num_cols());
  if (gp.column_names.size() != n || gp.lower.size() != n || gp.upper.size() != n) {
    throw ModelError("column metadata width does not match the cost vector");
  }
  std::set<std::string> names;
  for (const auto& name : gp.column_names) {
    if (!names.insert(name).second) throw ModelError("duplicate column name '" + name + "'");
  }
  names.clear();
  for (const auto& row : gp.rows) {
    if (row.coeffs.size() != n) {
      throw ModelError("row '" + row.name + "' has " + std::to_string(row.coeffs.size()) +
                       " coefficients, expected " + std::to_string(n));
    }
    if (!names.insert(row.name).second) throw ModelError("duplicate row name '" + row.name + "'");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (gp.lower[j] && gp.upper[j] && *gp.lower[j] > *gp.upper[j]) {
      throw ModelError("variable '" + gp.column_names[j] + "' has lower bound above upper bound");
    }
  }
}

bool same_data(const GeneralLP& a, const GeneralLP& b) {
  if (a.sense != b.sense || a.cost != b.cost || a.lower != b.lower || a.upper != b.upper) return false;
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& ra = a.rows[i];
    const auto& rb = b.rows[i];
    if (ra.coeffs != rb.coeffs || ra.relation != rb.relation || ra.rhs != rb.rhs) return false;
  }
  return true;
}

template <>
Tolerance<Rational> StandardLP<Rational>::tolerance() const {
  return Tolerance<Rational>();
}

template <>
Tolerance<double> StandardLP<double>::tolerance() const {
  if (tolerance_override) return Tolerance<double>(*tolerance_override);
  return Tolerance<double>(1e-9 * (1.0 + max_abs(b)));
}

template <class T>
T StandardLP<T>::original_objective(const std::vector<T>& x) const {
  T v = objective(x) + objective_offset;
  return negated ? T(-v) : v;
}

template <class T>
std::vector<T> StandardLP<T>::recover(const std::vector<T>& x) const {
  std::vector<T> out;
  out.reserve(variables.size());
  for (const auto& vm : variables) {
    T offset = ScalarTraits<T>::from_rational(vm.offset);
    out.push_back(vm.mirrored ? T(offset - x[vm.column]) : T(offset + x[vm.column]));
  }
  return out;
}

template <class T>
std::vector<T> StandardLP<T>::embed(const GeneralLP& gp, const std::vector<T>& original) const {
  std::vector<T> x(n, T(0));
  for (std::size_t j = 0; j < variables.size(); ++j) {
    const auto& vm = variables[j];
    T offset = ScalarTraits<T>::from_rational(vm.offset);
    x[vm.column] = vm.mirrored ? T(offset - original[j]) : T(original[j] - offset);
  }
  for (int k = 0; k < n; ++k) {
    const auto& src = sources[k];
    if (tags[k] == ColumnKind::kSlack && src.row >= 0) {
      const auto& row = gp.rows[src.row];
      T activity = 0;
      for (std::size_t j = 0; j < original.size(); ++j) activity += ScalarTraits<T>::from_rational(row.coeffs[j]) * original[j];
      x[k] = ScalarTraits<T>::from_rational(row.rhs) - activity;
    } else if (tags[k] == ColumnKind::kSurplus) {
      const auto& row = gp.rows[src.row];
      T activity = 0;
      for (std::size_t j = 0; j < original.size(); ++j) activity += ScalarTraits<T>::from_rational(row.coeffs[j]) * original[j];
      x[k] = activity - ScalarTraits<T>::from_rational(row.rhs);
    } else if (tags[k] == ColumnKind::kSlack && src.var >= 0) {
      x[k] = ScalarTraits<T>::from_rational(*gp.upper[src.var]) - original[src.var];
    }
  }
  return x;
}

StandardLP<Rational> to_standard_form(const GeneralLP& gp) {
  validate_general(gp);
  const int n0 = gp.num_cols();
  if (n0 == 0) throw ModelError("empty LP: no columns");

  StandardLP<Rational> lp;
  lp.negated = gp.sense == Sense::kMaximize;

  // Rows of the equality system under construction.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& r : gp.rows) {
    rows.push_back(r.coeffs);
    rhs.push_back(r.rhs);
    lp.row_names.push_back(r.name);
  }
  std::vector<Rational> cost;
  for (const auto& cj : gp.cost) cost.push_back(lp.negated ? Rational(-cj) : cj);

  lp.variables.resize(n0);
  std::vector<ColumnKind> tags(n0, ColumnKind::kOriginal);
  std::vector<StandardLP<Rational>::Source> sources(n0);
  std::vector<std::string> names = gp.column_names;
  Rational offset = 0;

  // Substitute x = l + x' or x = u - x' so every column is >= 0.
  for (int j = 0; j < n0; ++j) {
    auto& vm = lp.variables[j];
    vm.column = j;
    sources[j].var = j;
    if (gp.lower[j]) {
      const Rational& l = *gp.lower[j];
      if (l != 0) {
        vm.offset = l;
        tags[j] = ColumnKind::kShift;
        for (std::size_t i = 0; i < rows.size(); ++i) rhs[i] -= rows[i][j] * l;
        offset += cost[j] * l;
      }
    } else if (gp.upper[j]) {
      const Rational& u = *gp.upper[j];
      vm.offset = u;
      vm.mirrored = true;
      tags[j] = ColumnKind::kShift;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        rhs[i] -= rows[i][j] * u;
        rows[i][j] = -rows[i][j];
      }
      offset += cost[j] * u;
      cost[j] = -cost[j];
    } else {
      throw ModelError("free variable unsupported: '" + gp.column_names[j] + "'");
    }
  }

  auto add_column = [&](ColumnKind kind, StandardLP<Rational>::Source src, std::string name) {
    for (auto& r : rows) r.emplace_back(0);
    cost.emplace_back(0);
    tags.push_back(kind);
    sources.push_back(src);
    names.push_back(std::move(name));
    return static_cast<int>(cost.size()) - 1;
  };

  for (int i = 0; i < gp.num_rows(); ++i) {
    const auto rel = gp.rows[i].relation;
    if (rel == Relation::kEqual) continue;
    const bool le = rel == Relation::kLessEqual;
    int k = add_column(le ? ColumnKind::kSlack : ColumnKind::kSurplus, {i, -1},
                       gp.rows[i].name + (le ? "_slack" : "_surplus"));
    rows[i][k] = le ? 1 : -1;
  }

  for (int j = 0; j < n0; ++j) {
    if (!gp.lower[j] || !gp.upper[j]) continue;
    std::vector<Rational> r(cost.size(), Rational(0));
    r[j] = 1;
    rows.push_back(std::move(r));
    rhs.push_back(*gp.upper[j] - *gp.lower[j]);
    lp.row_names.push_back(gp.column_names[j] + "_ub");
    int k = add_column(ColumnKind::kSlack, {-1, j}, gp.column_names[j] + "_ubslack");
    rows.back()[k] = 1;
  }

  if (rows.empty()) throw ModelError("empty LP: no constraints");

  lp.m = static_cast<int>(rows.size());
  lp.n = static_cast<int>(cost.size());
  lp.A = DenseMatrix<Rational>(lp.m, lp.n);
  for (int i = 0; i < lp.m; ++i)
    for (int j = 0; j < lp.n; ++j) lp.A(i, j) = rows[i][j];
  lp.b = std::move(rhs);
  lp.c = std::move(cost);
  lp.tags = std::move(tags);
  lp.sources = std::move(sources);
  lp.column_names = std::move(names);
  lp.objective_offset = offset;
  return lp;
}

StandardLP<double> to_float(const StandardLP<Rational>& lp) {
  StandardLP<double> out;
  out.m = lp.m;
  out.n = lp.n;
  out.A = DenseMatrix<double>(lp.m, lp.n);
  for (int i = 0; i < lp.m; ++i)
    for (int j = 0; j < lp.n; ++j) out.A(i, j) = lp.A(i, j).get_d();
  out.b = convert_vector<double>(lp.b);
  out.c = convert_vector<double>(lp.c);
  out.tags = lp.tags;
  for (const auto& s : lp.sources) out.sources.push_back({s.row, s.var});
  out.column_names = lp.column_names;
  out.row_names = lp.row_names;
  out.negated = lp.negated;
  out.objective_offset = lp.objective_offset.get_d();
  out.variables = lp.variables;
  return out;
}

template <class T>
ValidationReport validate(StandardLP<T>& lp) {
  ValidationReport report;
  auto dim = [&](const std::string& what) {
    report.dimension_error = true;
    report.findings.push_back("dimension mismatch: " + what);
  };
  if (lp.A.rows() != lp.m || lp.A.cols() != lp.n) dim("A is not m x n");
  if (static_cast<int>(lp.b.size()) != lp.m) dim("b length differs from m");
  if (static_cast<int>(lp.c.size()) != lp.n) dim("c length differs from n");
  if (static_cast<int>(lp.tags.size()) != lp.n) dim("provenance tags do not cover every column");
  if (report.dimension_error) return report;

  for (int i = 0; i < lp.m; ++i) {
    if (lp.b[i] < 0) report.findings.push_back("row " + std::to_string(i) + " has negative right-hand side");
  }

  // Incremental elimination on [A | b]: a row is kept when it is independent
  // of the rows kept before it.
  const T scale = std::max(max_abs(lp.b), T(1));
  T amax = 0;
  for (int i = 0; i < lp.m; ++i)
    for (int j = 0; j < lp.n; ++j) amax = std::max(amax, ScalarTraits<T>::abs(lp.A(i, j)));
  const T tol = ScalarTraits<T>::kExact ? T(0) : T(1e-9 * ScalarTraits<T>::to_double(std::max(amax, scale)));

  std::vector<std::vector<T>> kept;  // reduced rows of length n + 1
  std::vector<int> pivot_col;
  std::vector<int> keep_index;
  for (int i = 0; i < lp.m; ++i) {
    std::vector<T> r = lp.A.row(i);
    r.push_back(lp.b[i]);
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const int p = pivot_col[k];
      if (r[p] == 0) continue;
      const T factor = r[p] / kept[k][p];
      for (int j = 0; j <= lp.n; ++j) r[j] -= factor * kept[k][j];
      r[p] = 0;
    }
    int best = -1;
    T best_abs = tol;
    for (int j = 0; j < lp.n; ++j) {
      T a = ScalarTraits<T>::abs(r[j]);
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    if (best < 0) {
      if (ScalarTraits<T>::abs(r[lp.n]) > tol) {
        report.infeasible = true;
        report.findings.push_back("row " + std::to_string(i) +
                                  " is a combination of earlier rows with an inconsistent right-hand side");
      } else {
        report.findings.push_back("row " + std::to_string(i) + " is linearly dependent and was removed");
      }
      report.removed_rows.push_back(i);
      continue;
    }
    kept.push_back(std::move(r));
    pivot_col.push_back(best);
    keep_index.push_back(i);
  }

  if (report.infeasible) return report;
  for (auto it = report.removed_rows.rbegin(); it != report.removed_rows.rend(); ++it) {
    lp.A.erase_row(*it);
    lp.b.erase(lp.b.begin() + *it);
    if (*it < static_cast<int>(lp.row_names.size())) lp.row_names.erase(lp.row_names.begin() + *it);
  }
  lp.m = lp.A.rows();
  return report;
}

std::vector<int> Basis::sorted() const {
  std::vector<int> s = columns;
  std::sort(s.begin(), s.end());
  return s;
}

template <class T>
BasicSolution<T> classify_solution(const StandardLP<T>& lp, const Basis& basis, std::vector<T> x) {
  const auto tol = lp.tolerance();
  BasicSolution<T> sol;
  sol.x = std::move(x);
  sol.basis = basis;
  sol.feasible = true;
  for (int j : basis.columns) {
    if (tol.zero(sol.x[j])) sol.zero_basics.push_back(j);
    if (!tol.nonnegative(sol.x[j])) sol.feasible = false;
  }
  std::sort(sol.zero_basics.begin(), sol.zero_basics.end());
  return sol;
}

template <class T>
BasicSolution<T> basic_solution(const StandardLP<T>& lp, const Basis& basis) {
  if (basis.size() != lp.m) {
    throw BasisError("basis has " + std::to_string(basis.size()) + " columns, expected " + std::to_string(lp.m), -1);
  }
  const T sing = ScalarTraits<T>::kExact ? T(0) : T(1e-11);
  DenseLU<T> lu(lp.A.select_columns(basis.columns), sing);
  if (!lu.ok()) {
    const int col = basis.columns[lu.singular_column()];
    throw BasisError("singular basis matrix (column " + std::to_string(col) + " is dependent)", col);
  }
  std::vector<T> xb = lu.solve(lp.b);
  std::vector<T> x(lp.n, T(0));
  for (int k = 0; k < lp.m; ++k) x[basis.columns[k]] = xb[k];
  return classify_solution(lp, basis, std::move(x));
}

template struct StandardLP<double>;
template struct StandardLP<Rational>;
template ValidationReport validate(StandardLP<double>&);
template ValidationReport validate(StandardLP<Rational>&);
template BasicSolution<double> basic_solution(const StandardLP<double>&, const Basis&);
template BasicSolution<Rational> basic_solution(const StandardLP<Rational>&, const Basis&);
template BasicSolution<double> classify_solution(const StandardLP<double>&, const Basis&, std::vector<double>);
template BasicSolution<Rational> classify_solution(const StandardLP<Rational>&, const Basis&, std::vector<Rational>);

}  // namespace antistall
