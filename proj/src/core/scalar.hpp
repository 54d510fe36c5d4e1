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

#ifndef ANTISTALL_CORE_SCALAR_HPP_
#define ANTISTALL_CORE_SCALAR_HPP_

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace antistall {

// Exact arbitrary-precision rational.
using Rational = mpq_class;

// Parses a decimal literal ("-12", "1.5", "2.5e-3", "1/3") into the exact
// rational it denotes. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// Shortest exact rendering: integers as "12", other values as "p/q".
std::string to_string(const Rational& v);
// Round-trippable rendering of a double (%.17g).
std::string to_string(double v);

// Decimal rendering that is exact whenever the denominator only has the
// prime factors 2 and 5; otherwise falls back to 17 significant digits.
std::string to_decimal_string(const Rational& v);

// Inverse of to_string for either backend.
template <class T>
T parse_scalar(std::string_view text);
template <>
double parse_scalar<double>(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);

// Compile-time description of a scalar backend.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static constexpr const char* kName = "float";
  static double from_rational(const Rational& v) { return v.get_d(); }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static constexpr const char* kName = "rational";
  static Rational from_rational(const Rational& v) { return v; }
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational abs(const Rational& v) { return ::abs(v); }
};

// Sign tests against a zero threshold. In exact mode the threshold is 0 and
// every comparison is exact.
template <class T>
class Tolerance {
 public:
  Tolerance() : eps_(0) {}
  explicit Tolerance(T eps) : eps_(std::move(eps)) {}

  const T& eps() const { return eps_; }
  bool zero(const T& v) const { return ScalarTraits<T>::abs(v) <= eps_; }
  bool positive(const T& v) const { return v > eps_; }
  bool negative(const T& v) const { return v < -eps_; }
  bool nonnegative(const T& v) const { return v >= -eps_; }
  // a < b beyond the threshold.
  bool less(const T& a, const T& b) const { return a < b - eps_; }
  bool equal(const T& a, const T& b) const { return zero(a - b); }

 private:
  T eps_;
};

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T max_abs(const std::vector<T>& v) {
  T m = 0;
  for (const T& e : v) {
    T a = ScalarTraits<T>::abs(e);
    if (a > m) m = a;
  }
  return m;
}

template <class T>
std::vector<T> convert_vector(const std::vector<Rational>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(ScalarTraits<T>::from_rational(e));
  return out;
}

}  // namespace antistall

#endif  // ANTISTALL_CORE_SCALAR_HPP_
