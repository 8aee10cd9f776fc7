/* Copyright 2026 The hhorder Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "hhorder/errors.hpp"

namespace hhorder {

/// Exact arbitrary-precision rational, always in lowest terms with a
/// positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
  return Rational(Integer(num), Integer(den));
}

inline int sign(const Rational& r) {
  return r.sign();
}

inline Rational abs(const Rational& r) {
  return r.sign() < 0 ? Rational(-r) : r;
}

inline Integer floor_int(const Rational& r) {
  Integer n = boost::multiprecision::numerator(r);
  Integer d = boost::multiprecision::denominator(r);
  Integer q = n / d;
  if (n.sign() < 0 && q * d != n) {
    --q;
  }
  return q;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const Integer d = boost::multiprecision::denominator(r);
  std::string s = boost::multiprecision::numerator(r).str();
  if (d != 1) {
    s += '/';
    s += d.str();
  }
  return s;
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

} // namespace detail

/// Parses "p", "p/q" or a finite decimal such as "0.9" exactly.
namespace detail {

/// Base-10 digits to an integer; leading zeros do not switch to octal.
inline Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') {
    digits.remove_prefix(1);
  }
  return Integer{std::string(digits.empty() ? "0" : digits)};
}

} // namespace detail

inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto fail = [&]() -> ParseError {
    return ParseError("not a rational number: '" + std::string(text) + "'");
  };

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
      throw fail();
    }
    const Integer d = detail::decimal_integer(den);
    if (d == 0) {
      throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    value = Rational(detail::decimal_integer(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) ||
        (!whole.empty() && !detail::all_digits(whole)) ||
        (!frac.empty() && !detail::all_digits(frac))) {
      throw fail();
    }
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      scale *= 10;
    }
    const Integer digits =
        detail::decimal_integer(std::string(whole) + std::string(frac));
    value = Rational(digits, scale);
  } else {
    if (!detail::all_digits(s)) {
      throw fail();
    }
    value = Rational(detail::decimal_integer(s));
  }
  return negative ? Rational(-value) : value;
}

/// Fraction with the smallest denominator in the closed interval [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
  if (hi < lo) {
    std::swap(lo, hi);
  }
  if (lo.sign() <= 0 && hi.sign() >= 0) {
    return Rational(0);
  }
  if (hi.sign() < 0) {
    return -simplest_between(-hi, -lo);
  }
  const Rational fl(floor_int(lo));
  if (fl == lo) {
    return fl;
  }
  if (fl + 1 <= hi) {
    return fl + 1;
  }
  return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl));
}

} // namespace hhorder
