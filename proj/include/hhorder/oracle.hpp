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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "hhorder/functional.hpp"
#include "hhorder/rational.hpp"

// A deliberately plain second opinion: evaluates both functionals on hinge
// functions and a few polynomials straight from their atoms. Shares nothing
// with the ordering module beyond the Functional type.

namespace hhorder::oracle {

struct OracleReport {
  std::size_t tested_functions = 0;
  /// Largest A(f) - B(f) over all tested f, or 0.
  Rational max_violation;
  /// Largest A(h_s) - B(h_s) over the grid, or 0.
  Rational max_hinge_violation;
  std::optional<Rational> worst_s;
};

namespace detail {

inline Rational hinge_expectation(const Functional& f, const Rational& s) {
  Rational sum;
  for (const auto& a : f.atoms()) {
    if (a.position > s) {
      sum += a.weight * (a.position - s);
    }
  }
  if (f.uniform_weight().sign() != 0) {
    Rational part;
    if (s.sign() <= 0) {
      part = rat(1, 2) - s;
    } else if (s < 1) {
      part = (1 - s) * (1 - s) / 2;
    }
    sum += f.uniform_weight() * part;
  }
  return sum;
}

inline Rational moment(const Functional& f, int k) {
  Rational sum = f.uniform_weight() / (k + 1);
  for (const auto& a : f.atoms()) {
    Rational p(1);
    for (int i = 0; i < k; ++i) {
      p *= a.position;
    }
    sum += a.weight * p;
  }
  return sum;
}

inline Rational mass_up_to(const Functional& f, const Rational& t) {
  Rational m;
  for (const auto& a : f.atoms()) {
    if (a.position <= t) {
      m += a.weight;
    }
  }
  return m;
}

} // namespace detail

inline OracleReport oracle_decide(const Functional& a, const Functional& b,
                                  const std::vector<Rational>& s_grid) {
  OracleReport rep;
  for (const auto& s : s_grid) {
    const Rational gap =
        detail::hinge_expectation(a, s) - detail::hinge_expectation(b, s);
    ++rep.tested_functions;
    if (gap > rep.max_hinge_violation) {
      rep.max_hinge_violation = gap;
      rep.worst_s = s;
    }
  }
  rep.max_violation = rep.max_hinge_violation;

  const Rational mean_gap = detail::moment(a, 1) - detail::moment(b, 1);
  const Rational square_gap = detail::moment(a, 2) - detail::moment(b, 2);
  for (const Rational& gap : {mean_gap, Rational(-mean_gap), square_gap}) {
    ++rep.tested_functions;
    rep.max_violation = std::max(rep.max_violation, gap);
  }
  return rep;
}

/// Finite set of hinge positions that contains a violating one whenever the
/// pair is not ordered: every node, each segment midpoint, and every point
/// inside a segment where the two distribution functions meet.
inline std::vector<Rational> refine_grid(const Functional& a,
                                         const Functional& b) {
  if (a == b) {
    return {Rational(0), Rational(1)};
  }
  std::vector<Rational> nodes{Rational(0), Rational(1)};
  for (const auto* f : {&a, &b}) {
    for (const auto& atom : f->atoms()) {
      nodes.push_back(atom.position);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<Rational> grid = nodes;
  const Rational slope = a.uniform_weight() - b.uniform_weight();
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const Rational& lo = nodes[j];
    const Rational& hi = nodes[j + 1];
    grid.push_back((lo + hi) / 2);
    if (slope.sign() != 0) {
      const Rational offset = detail::mass_up_to(a, lo) - detail::mass_up_to(b, lo);
      const Rational root = -offset / slope;
      if (lo <= root && root <= hi) {
        grid.push_back(root);
      }
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

} // namespace hhorder::oracle
