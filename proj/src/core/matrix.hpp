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

#ifndef ANTISTALL_CORE_MATRIX_HPP_
#define ANTISTALL_CORE_MATRIX_HPP_

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "core/scalar.hpp"

namespace antistall {

// Row-major dense matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, T(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<T> column(int j) const {
    std::vector<T> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<T> row(int i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                          data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
  }

  // Columns `cols` gathered into a rows() x cols.size() matrix.
  DenseMatrix<T> select_columns(const std::vector<int>& cols) const {
    DenseMatrix<T> out(rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) out(i, static_cast<int>(k)) = (*this)(i, cols[k]);
    return out;
  }

  std::vector<T> multiply(const std::vector<T>& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    std::vector<T> out(rows_, T(0));
    for (int i = 0; i < rows_; ++i) {
      T s = 0;
      for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
      out[i] = s;
    }
    return out;
  }

  void erase_row(int i) {
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
    --rows_;
  }

  void append_row(const std::vector<T>& r) {
    assert(static_cast<int>(r.size()) == cols_);
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void append_column(const std::vector<T>& col) {
    assert(static_cast<int>(col.size()) == rows_);
    std::vector<T> next;
    next.reserve(static_cast<std::size_t>(rows_) * (cols_ + 1));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) next.push_back((*this)(i, j));
      next.push_back(col[i]);
    }
    data_ = std::move(next);
    ++cols_;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// LU factorization with partial (row) pivoting: P M = L U.
template <class T>
class DenseLU {
 public:
  // Factors the square matrix `m`. On failure `singular_column()` names the
  // first column that is linearly dependent on the columns before it.
  explicit DenseLU(const DenseMatrix<T>& m, const T& zero_tol = T(0)) : n_(m.rows()), lu_(m), perm_(n_) {
    assert(m.rows() == m.cols());
    for (int i = 0; i < n_; ++i) perm_[i] = i;
    for (int k = 0; k < n_; ++k) {
      int piv = -1;
      T best = 0;
      for (int i = k; i < n_; ++i) {
        T a = ScalarTraits<T>::abs(lu_(i, k));
        if (a > best) {
          best = a;
          piv = i;
        }
      }
      if (piv < 0 || best <= zero_tol) {
        singular_column_ = k;
        return;
      }
      if (piv != k) {
        for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(piv, j));
        std::swap(perm_[k], perm_[piv]);
      }
      for (int i = k + 1; i < n_; ++i) {
        if (lu_(i, k) == 0) continue;
        lu_(i, k) /= lu_(k, k);
        const T factor = lu_(i, k);
        for (int j = k + 1; j < n_; ++j) lu_(i, j) -= factor * lu_(k, j);
      }
    }
  }

  bool ok() const { return singular_column_ < 0; }
  int singular_column() const { return singular_column_; }
  int size() const { return n_; }

  // Solves M x = rhs.
  std::vector<T> solve(const std::vector<T>& rhs) const {
    assert(ok());
    std::vector<T> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = rhs[perm_[i]];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j)
        if (lu_(i, j) != 0) x[i] -= lu_(i, j) * x[j];
    for (int i = n_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < n_; ++j)
        if (lu_(i, j) != 0) x[i] -= lu_(i, j) * x[j];
      x[i] /= lu_(i, i);
    }
    return x;
  }

  // Solves M^T y = rhs.
  std::vector<T> solve_transpose(const std::vector<T>& rhs) const {
    assert(ok());
    // M^T = U^T L^T P, so solve U^T w = rhs, L^T v = w, y = P^T v.
    std::vector<T> w(rhs);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < i; ++j)
        if (lu_(j, i) != 0) w[i] -= lu_(j, i) * w[j];
      w[i] /= lu_(i, i);
    }
    for (int i = n_ - 1; i >= 0; --i)
      for (int j = i + 1; j < n_; ++j)
        if (lu_(j, i) != 0) w[i] -= lu_(j, i) * w[j];
    std::vector<T> y(n_);
    for (int i = 0; i < n_; ++i) y[perm_[i]] = w[i];
    return y;
  }

  T determinant() const {
    if (!ok()) return T(0);
    T d = 1;
    for (int i = 0; i < n_; ++i) d *= lu_(i, i);
    // Sign of the permutation.
    std::vector<int> p = perm_;
    int swaps = 0;
    for (int i = 0; i < n_; ++i) {
      while (p[i] != i) {
        std::swap(p[i], p[p[i]]);
        ++swaps;
      }
    }
    return swaps % 2 ? T(-d) : d;
  }

 private:
  int n_;
  DenseMatrix<T> lu_;
  std::vector<int> perm_;
  int singular_column_ = -1;
};

}  // namespace antistall

#endif  // ANTISTALL_CORE_MATRIX_HPP_
