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

#include "core/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace antistall {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&]() {
    return std::invalid_argument("malformed number '" + std::string(text) + "'");
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw fail();

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    const mpz_class n_val(std::string(num), 10), d_val(std::string(den), 10);
    if (d_val == 0) throw fail();
    Rational r{n_val, d_val};
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eEdD"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_neg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) throw fail();
    exponent = std::stol(std::string(exp_part));
    if (exp_neg) exponent = -exponent;
  }

  std::string digits;
  std::string_view int_part = s, frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw fail();
  if (!int_part.empty() && !all_digits(int_part)) throw fail();
  if (!frac_part.empty() && !all_digits(frac_part)) throw fail();
  digits.append(int_part);
  digits.append(frac_part);
  exponent -= static_cast<long>(frac_part.size());

  Rational r{mpz_class(digits, 10)};
  if (exponent > 0) {
    r *= Rational(pow10(exponent));
  } else if (exponent < 0) {
    r /= Rational(pow10(-exponent));
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_str();
}

std::string to_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_decimal_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  mpz_class den = v.get_den();
  long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return to_string(v.get_d());
  long places = std::max(twos, fives);
  mpz_class scaled = v.get_num() * pow10(places) / v.get_den();
  bool neg = scaled < 0;
  std::string digits = mpz_class(abs(scaled)).get_str();
  if (static_cast<long>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
  }
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return (neg ? "-" : "") + digits;
}

template <>
double parse_scalar<double>(std::string_view text) {
  std::string s(text);
  if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("malformed number '" + s + "'");
  }
  return v;
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  return parse_rational(text);
}

}  // namespace antistall
