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

#include "core/basis_engine.hpp"

#include <stdexcept>
#include <string>

namespace antistall {

namespace {

template <class T>
T singular_threshold() {
  if constexpr (ScalarTraits<T>::kExact) {
    return T(0);
  } else {
    return T(1e-11);
  }
}

}  // namespace

template <class T>
BasisFactorization<T>::BasisFactorization(const StandardLP<T>& lp, Basis basis)
    : lp_(&lp), basis_(std::move(basis)), position_(lp.n, -1) {
  if (basis_.size() != lp.m) {
    throw BasisError("basis has " + std::to_string(basis_.size()) + " columns, expected " + std::to_string(lp.m),
                     -1);
  }
  for (int k = 0; k < basis_.size(); ++k) {
    const int j = basis_.columns[k];
    if (j < 0 || j >= lp.n) throw BasisError("basis column " + std::to_string(j) + " out of range", j);
    if (position_[j] >= 0) throw BasisError("column " + std::to_string(j) + " appears twice in the basis", j);
    position_[j] = k;
  }
  refactorize();
  refactorizations_ = 0;
}

template <class T>
void BasisFactorization<T>::refactorize() {
  etas_.clear();
  lu_ = std::make_unique<DenseLU<T>>(lp_->A.select_columns(basis_.columns), singular_threshold<T>());
  ++refactorizations_;
  if (!lu_->ok()) {
    const int col = basis_.columns[lu_->singular_column()];
    throw BasisError("singular basis matrix (column " + std::to_string(col) + " is dependent)", col);
  }
}

template <class T>
std::vector<T> BasisFactorization<T>::solve(const std::vector<T>& v) const {
  std::vector<T> x = lu_->solve(v);
  // B_k = B_0 E_1 ... E_k, so B_k^{-1} = E_k^{-1} ... E_1^{-1} B_0^{-1}.
  for (const auto& eta : etas_) {
    const int p = eta.position;
    if (x[p] == 0) continue;
    x[p] /= eta.column[p];
    const T xp = x[p];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (static_cast<int>(i) != p) x[i] -= eta.column[i] * xp;
    }
  }
  return x;
}

template <class T>
std::vector<T> BasisFactorization<T>::solve_transpose(const std::vector<T>& v) const {
  // B_k^T y = v  <=>  E_k^T ... E_1^T B_0^T y = v; peel the etas from the left.
  std::vector<T> u = v;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    const int p = it->position;
    T s = u[p];
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (static_cast<int>(i) != p) s -= it->column[i] * u[i];
    }
    u[p] = s / it->column[p];
  }
  return lu_->solve_transpose(u);
}

template <class T>
std::vector<T> BasisFactorization<T>::tableau_column(int f) {
  if (f < 0 || f >= lp_->n) throw std::invalid_argument("column index " + std::to_string(f) + " out of range");
  if (is_basic(f)) {
    throw std::invalid_argument("tableau_column: column " + std::to_string(f) + " is basic");
  }
  const std::vector<T> a = lp_->A.column(f);
  std::vector<T> d = solve(a);
  if constexpr (!ScalarTraits<T>::kExact) {
    if (!etas_.empty()) {
      double resid = 0;
      double scale = 1.0;
      for (int i = 0; i < lp_->m; ++i) {
        T s = 0;
        for (int k = 0; k < lp_->m; ++k) s += lp_->A(i, basis_.columns[k]) * d[k];
        resid = std::max(resid, std::fabs(s - a[i]));
        scale = std::max(scale, std::fabs(a[i]) + 1.0);
      }
      if (resid > kDriftLimit * scale) {
        refactorize();
        d = solve(a);
      }
    }
  }
  return d;
}

template <class T>
void BasisFactorization<T>::replace(int position, int entering, const std::vector<T>& column) {
  const int leaving = basis_.columns[position];
  basis_.columns[position] = entering;
  position_[leaving] = -1;
  position_[entering] = position;
  if (ScalarTraits<T>::kExact || age() + 1 > kRefactorCap) {
    refactorize();
    return;
  }
  etas_.push_back(Eta{position, column});
}

template <class T>
ReducedCosts<T> reduced_costs(const StandardLP<T>& lp, const BasisFactorization<T>& factor) {
  const auto tol = lp.tolerance();
  std::vector<T> cb(lp.m);
  for (int k = 0; k < lp.m; ++k) cb[k] = lp.c[factor.basis().columns[k]];
  const std::vector<T> pi = factor.solve_transpose(cb);
  ReducedCosts<T> rc;
  rc.values.assign(lp.n, T(0));
  rc.optimal = true;
  for (int j = 0; j < lp.n; ++j) {
    if (factor.is_basic(j)) continue;
    T v = lp.c[j];
    for (int i = 0; i < lp.m; ++i) {
      if (lp.A(i, j) != 0) v -= pi[i] * lp.A(i, j);
    }
    if (tol.negative(v)) rc.optimal = false;
    rc.values[j] = std::move(v);
  }
  return rc;
}

template class BasisFactorization<double>;
template class BasisFactorization<Rational>;
template ReducedCosts<double> reduced_costs(const StandardLP<double>&, const BasisFactorization<double>&);
template ReducedCosts<Rational> reduced_costs(const StandardLP<Rational>&, const BasisFactorization<Rational>&);

}  // namespace antistall
