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

// LP representations: the general form read from files and generators, and
// the standard equality form min c'x, Ax = b, x >= 0 the solver works on.

#ifndef ANTISTALL_CORE_LP_MODEL_HPP_
#define ANTISTALL_CORE_LP_MODEL_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/matrix.hpp"
#include "core/scalar.hpp"

namespace antistall {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

const char* relation_symbol(Relation r);

struct Constraint {
  std::string name;
  std::vector<Rational> coeffs;  // dense, one entry per column
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

// General-form LP with exact data. Lower bound nullopt means -inf, upper
// nullopt means +inf.
struct GeneralLP {
  std::string name = "LP";
  Sense sense = Sense::kMinimize;
  std::string objective_name = "obj";
  std::vector<std::string> column_names;
  std::vector<Rational> cost;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<Constraint> rows;

  int num_cols() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Appends a column with bounds [lower, upper]; existing rows get a zero.
  int add_column(std::string col_name, Rational obj, std::optional<Rational> lo = Rational(0),
                 std::optional<Rational> up = std::nullopt);
  void add_row(std::string row_name, std::vector<Rational> coeffs, Relation rel, Rational rhs);
};

// Throws ModelError when widths disagree, lower > upper, or names repeat.
void validate_general(const GeneralLP& gp);

// Equality of all numeric data, sense and bounds; names are ignored.
bool same_data(const GeneralLP& a, const GeneralLP& b);

enum class ColumnKind { kOriginal, kSlack, kSurplus, kShift, kArtificial };

const char* column_kind_name(ColumnKind k);

// How an original variable is recovered from the standard-form point:
// original = offset + (mirrored ? -1 : +1) * x[column].
struct VariableMap {
  int column = -1;
  Rational offset;
  bool mirrored = false;
};

template <class T>
struct StandardLP {
  int m = 0;
  int n = 0;
  DenseMatrix<T> A;
  std::vector<T> b;
  std::vector<T> c;
  std::vector<ColumnKind> tags;
  // For slack/surplus columns the general-form row they belong to, or for
  // upper-bound slacks the variable they bound (row = -1 then).
  struct Source {
    int row = -1;
    int var = -1;
  };
  std::vector<Source> sources;
  std::vector<std::string> column_names;
  std::vector<std::string> row_names;

  // Recovery data for the general form this LP came from.
  bool negated = false;     // original objective was maximized
  T objective_offset = 0;   // constant dropped by bound shifts, min-sense
  std::vector<VariableMap> variables;

  // Float runs only: replaces the default zero threshold.
  std::optional<double> tolerance_override;

  // Zero threshold: exact zero for rationals, 1e-9 (1 + |b|_inf) for floats.
  Tolerance<T> tolerance() const;

  T objective(const std::vector<T>& x) const { return dot(c, x); }
  // Objective of the original problem at the standard-form point x.
  T original_objective(const std::vector<T>& x) const;
  // Original variable values at the standard-form point x.
  std::vector<T> recover(const std::vector<T>& x) const;
  // Image of an original point (assumed within bounds) in standard form:
  // slacks and surpluses are filled from the rows.
  std::vector<T> embed(const GeneralLP& gp, const std::vector<T>& original) const;
};

StandardLP<Rational> to_standard_form(const GeneralLP& gp);

StandardLP<double> to_float(const StandardLP<Rational>& lp);

struct ValidationReport {
  std::vector<std::string> findings;
  std::vector<int> removed_rows;  // indices into the rows before removal
  bool dimension_error = false;
  bool infeasible = false;

  bool clean() const { return findings.empty(); }
};

// Checks dimensions, removes linearly dependent rows in place so A has full
// row rank, and diagnoses inconsistent dependent rows as infeasible.
template <class T>
ValidationReport validate(StandardLP<T>& lp);

// Ordered basic index set; position k holds the variable basic in row k.
struct Basis {
  std::vector<int> columns;

  int size() const { return static_cast<int>(columns.size()); }
  std::vector<int> sorted() const;
  friend bool operator==(const Basis&, const Basis&) = default;
};

class BasisError : public std::runtime_error {
 public:
  BasisError(const std::string& what, int dependent_column)
      : std::runtime_error(what), dependent_column_(dependent_column) {}
  int dependent_column() const { return dependent_column_; }

 private:
  int dependent_column_;
};

template <class T>
struct BasicSolution {
  std::vector<T> x;
  Basis basis;
  std::vector<int> zero_basics;  // Z: basic variables at value zero
  bool feasible = false;
};

// x_B = A_B^{-1} b, x_N = 0. Throws BasisError if A_B is singular.
template <class T>
BasicSolution<T> basic_solution(const StandardLP<T>& lp, const Basis& basis);

// Wraps x and classifies its basic entries.
template <class T>
BasicSolution<T> classify_solution(const StandardLP<T>& lp, const Basis& basis, std::vector<T> x);

}  // namespace antistall

#endif  // ANTISTALL_CORE_LP_MODEL_HPP_
