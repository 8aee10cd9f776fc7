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

#include <array>
#include <string>
#include <utility>

#include "hhorder/errors.hpp"
#include "hhorder/functional.hpp"
#include "hhorder/rational.hpp"

// Closed-form characterisations of three families of Hermite-Hadamard type
// inequalities on [0,1], where the term a f(alpha x + (1 - alpha) y) becomes
// a node at 1 - alpha. Each case is transcribed as stated, including the
// overlaps between cases; holds is the disjunction.

namespace hhorder::theorems {

/// Three nodes below the integral mean:
/// sum a_i f(alpha_i x + (1 - alpha_i) y) <= mean of f.
struct ThlHParams {
  std::array<Rational, 3> a;
  std::array<Rational, 3> alpha;
};

/// Endpoints plus two interior nodes above the integral mean, with
/// alpha_1 = 1 and alpha_4 = 0 fixed.
struct ThrHParams {
  std::array<Rational, 4> a;
  Rational alpha2;
  Rational alpha3;
};

/// a f(alpha_1 ..) + (1 - a) f(alpha_2 ..) <= b1 f(x) + b2 f(beta ..) + b3 f(y)
struct ThqoParams {
  Rational a;
  Rational alpha1;
  Rational alpha2;
  Rational beta;
  std::array<Rational, 3> b;
};

struct CheckResult {
  bool holds = false;
  bool mean_ok = false;
  /// First satisfied case (1-based), 0 when none is.
  int case_index = 0;

  std::string case_label() const {
    static constexpr const char* kRoman[] = {"none", "i",  "ii",  "iii", "iv",
                                             "v",    "vi", "vii", "viii"};
    return kRoman[case_index];
  }
};

namespace detail {

inline bool in_open_unit(const Rational& x) {
  return x.sign() > 0 && x < 1;
}

/// x in the open interval (lo, hi)
inline bool between(const Rational& x, const Rational& lo, const Rational& hi) {
  return lo < x && x < hi;
}

inline void require(bool ok, const char* what) {
  if (!ok) {
    throw InvalidParameters(what);
  }
}

template <std::size_t N>
CheckResult first_case(bool mean_ok, const std::array<bool, N>& cases) {
  CheckResult r;
  r.mean_ok = mean_ok;
  for (std::size_t i = 0; i < N; ++i) {
    if (cases[i]) {
      r.case_index = static_cast<int>(i) + 1;
      break;
    }
  }
  r.holds = mean_ok && r.case_index != 0;
  return r;
}

} // namespace detail

inline void validate(const ThlHParams& p) {
  for (const auto& v : p.a) {
    detail::require(detail::in_open_unit(v), "weights must lie in (0,1)");
  }
  for (const auto& v : p.alpha) {
    detail::require(detail::in_open_unit(v), "coefficients must lie in (0,1)");
  }
  detail::require(p.a[0] + p.a[1] + p.a[2] == 1, "weights must sum to 1");
  detail::require(p.alpha[0] > p.alpha[1] && p.alpha[1] > p.alpha[2],
                  "coefficients must decrease strictly");
}

inline void validate(const ThrHParams& p) {
  for (const auto& v : p.a) {
    detail::require(detail::in_open_unit(v), "weights must lie in (0,1)");
  }
  detail::require(p.a[0] + p.a[1] + p.a[2] + p.a[3] == 1,
                  "weights must sum to 1");
  detail::require(1 > p.alpha2 && p.alpha2 > p.alpha3 && p.alpha3.sign() > 0,
                  "need 1 > alpha2 > alpha3 > 0");
}

inline void validate(const ThqoParams& p) {
  for (const Rational* v : {&p.a, &p.alpha1, &p.alpha2, &p.beta}) {
    detail::require(detail::in_open_unit(*v), "parameters must lie in (0,1)");
  }
  for (const auto& v : p.b) {
    detail::require(detail::in_open_unit(v), "weights must lie in (0,1)");
  }
  detail::require(p.b[0] + p.b[1] + p.b[2] == 1, "weights must sum to 1");
  detail::require(p.alpha1 > p.alpha2, "need alpha1 > alpha2");
}

inline CheckResult check_thlH(const ThlHParams& p) {
  validate(p);
  const auto& [a1, a2, a3] = p.a;
  const auto& [al1, al2, al3] = p.alpha;
  const Rational q1 = 1 - al1;
  const Rational q2 = 1 - al2;
  const Rational q3 = 1 - al3;
  const Rational s2 = a1 + a2;

  const bool mean_ok = a1 * q1 + a2 * q2 + a3 * q3 == rat(1, 2);
  using detail::between;
  const std::array<bool, 8> cases{
      a1 <= q1 && s2 >= q3,
      a1 >= q2 && s2 >= q3,
      a1 <= q1 && s2 <= q2,
      a1 <= q1 && between(s2, q2, q3) && 2 * al3 >= a3,
      a1 >= q2 && s2 < q3 && 2 * al3 >= a3,
      a1 > q1 && s2 <= q2 && q1 >= a1 / 2,
      between(a1, q1, q2) && s2 >= q3 && q1 >= a1 / 2,
      between(a1, q1, q2) && between(s2, q2, q3) && q1 >= a1 / 2 &&
          2 * a1 * q1 + 2 * a2 * q2 >= s2 * s2,
  };
  return detail::first_case(mean_ok, cases);
}

inline CheckResult check_thrH(const ThrHParams& p) {
  validate(p);
  const auto& [a1, a2, a3, a4] = p.a;
  const Rational& al2 = p.alpha2;
  const Rational& al3 = p.alpha3;
  const Rational q2 = 1 - al2;
  const Rational q3 = 1 - al3;
  const Rational s2 = a1 + a2;
  const Rational s3 = a1 + a2 + a3;

  const bool mean_ok = a2 * q2 + a3 * q3 + a4 == rat(1, 2);
  using detail::between;
  const std::array<bool, 8> cases{
      a1 >= q2 && s2 >= q3,
      s2 <= q2 && s3 <= q3,
      q2 <= a1 && q3 >= s3,
      q2 <= a1 && between(q3, s2, s3) && al3 <= 2 * a4,
      q2 >= s2 && s3 > q3 && al3 <= 2 * a4,
      a1 < q2 && s2 >= q3 && 2 * a1 + al2 >= 1,
      a1 < q2 && s2 > q2 && s3 <= q3 && 2 * a1 + al2 >= 1,
      between(q2, a1, s2) && between(q3, s2, s3) && 2 * a1 + al2 >= 1 &&
          2 * a1 * q3 + 2 * a2 * (al2 - al3) >= q3 * q3,
  };
  return detail::first_case(mean_ok, cases);
}

inline CheckResult check_thqo(const ThqoParams& p) {
  validate(p);
  const auto& [b1, b2, b3] = p.b;
  const bool mean_ok = b2 * (1 - p.beta) + b3 ==
                       p.a * (1 - p.alpha1) + (1 - p.a) * (1 - p.alpha2);
  const std::array<bool, 4> cases{
      p.a <= b1,
      p.a >= b1 + b2,
      p.alpha2 >= p.beta,
      detail::between(p.a, b1, b1 + b2) && p.alpha2 < p.beta &&
          (1 - p.alpha1) * b1 >= (p.alpha1 - p.beta) * (p.a - b1),
  };
  return detail::first_case(mean_ok, cases);
}

/// The (left, right) functionals whose convex-order comparison each
/// theorem characterises.
inline std::pair<Functional, Functional> functional_pair_of(
    const ThlHParams& p) {
  validate(p);
  return {from_paper_convention({{p.a[0], p.alpha[0]},
                                 {p.a[1], p.alpha[1]},
                                 {p.a[2], p.alpha[2]}},
                                Rational(0)),
          presets::uniform()};
}

inline std::pair<Functional, Functional> functional_pair_of(
    const ThrHParams& p) {
  validate(p);
  return {presets::uniform(),
          from_paper_convention({{p.a[0], Rational(1)},
                                 {p.a[1], p.alpha2},
                                 {p.a[2], p.alpha3},
                                 {p.a[3], Rational(0)}},
                                Rational(0))};
}

inline std::pair<Functional, Functional> functional_pair_of(
    const ThqoParams& p) {
  validate(p);
  return {from_paper_convention({{p.a, p.alpha1}, {1 - p.a, p.alpha2}},
                                Rational(0)),
          from_paper_convention({{p.b[0], Rational(1)},
                                 {p.b[1], p.beta},
                                 {p.b[2], Rational(0)}},
                                Rational(0))};
}

} // namespace hhorder::theorems
