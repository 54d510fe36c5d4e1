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

#ifndef ANTISTALL_CORE_BASIS_ENGINE_HPP_
#define ANTISTALL_CORE_BASIS_ENGINE_HPP_

#include <memory>
#include <vector>

#include "core/lp_model.hpp"
#include "core/matrix.hpp"

namespace antistall {

// Factorization of the basis matrix A_B: an LU factorization with partial
// pivoting followed by a journal of eta column replacements (float mode).
// Rational mode refactorizes on every replacement, so the journal stays empty.
template <class T>
class BasisFactorization {
 public:
  static constexpr int kRefactorCap = 50;
  static constexpr double kDriftLimit = 1e-6;

  // Throws BasisError when A_B is singular or |B| != m.
  BasisFactorization(const StandardLP<T>& lp, Basis basis);

  const Basis& basis() const { return basis_; }
  int age() const { return static_cast<int>(etas_.size()); }
  int refactorizations() const { return refactorizations_; }

  // Position of variable j in the basis, or -1 if nonbasic.
  int position(int j) const { return position_[j]; }
  bool is_basic(int j) const { return position_[j] >= 0; }

  // A_B^{-1} v and A_B^{-T} v.
  std::vector<T> solve(const std::vector<T>& v) const;
  std::vector<T> solve_transpose(const std::vector<T>& v) const;

  // Column f of A_B^{-1} A, indexed by basis position. Precondition: f is
  // nonbasic (std::invalid_argument otherwise). In float mode the result is
  // checked against A_f and the factorization is rebuilt on drift.
  std::vector<T> tableau_column(int f);

  // Swaps the variable at `position` for `entering`; `column` must be
  // tableau_column(entering).
  void replace(int position, int entering, const std::vector<T>& column);

  void refactorize();

 private:
  struct Eta {
    int position;
    std::vector<T> column;
  };

  const StandardLP<T>* lp_;
  Basis basis_;
  std::vector<int> position_;
  std::unique_ptr<DenseLU<T>> lu_;
  std::vector<Eta> etas_;
  int refactorizations_ = 0;
};

template <class T>
BasisFactorization<T> factorize(const StandardLP<T>& lp, const Basis& basis) {
  return BasisFactorization<T>(lp, basis);
}

template <class T>
struct ReducedCosts {
  std::vector<T> values;  // length n; basic entries are 0
  bool optimal = false;   // every nonbasic entry >= -tol
};

// cbar_N' = c_N' - (c_B' A_B^{-1}) A_N.
template <class T>
ReducedCosts<T> reduced_costs(const StandardLP<T>& lp, const BasisFactorization<T>& factor);

}  // namespace antistall

#endif  // ANTISTALL_CORE_BASIS_ENGINE_HPP_
