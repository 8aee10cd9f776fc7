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
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hhorder/functional.hpp"
#include "hhorder/ordering.hpp"

// Test-only helpers: deterministic random functionals and a floating-point
// quadrature oracle that never touches the exact code paths under test.

namespace hhorder::testing {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  long long below(long long n) {
    return static_cast<long long>(engine_() % static_cast<std::uint64_t>(n));
  }
  long long between(long long lo, long long hi) { return lo + below(hi - lo + 1); }
  bool coin() { return below(2) == 0; }

private:
  std::mt19937_64 engine_;
};

inline Rational random_node(Rng& rng) {
  const long long d = rng.between(1, 12);
  return rat(rng.between(0, d), d);
}

/// 2-6 atoms, optionally with a uniform component.
inline Functional random_functional(Rng& rng, bool allow_uniform = true,
                                    int min_atoms = 2, int max_atoms = 6) {
  const int k = static_cast<int>(rng.between(min_atoms, max_atoms));
  std::vector<long long> w;
  long long total = 0;
  for (int i = 0; i < k; ++i) {
    w.push_back(rng.between(1, 6));
    total += w.back();
  }
  const long long u = allow_uniform && rng.coin() ? rng.between(1, 6) : 0;
  total += u;
  std::vector<Atom> atoms;
  for (int i = 0; i < k; ++i) {
    atoms.push_back({random_node(rng), rat(w[i], total)});
  }
  return make_functional(std::move(atoms), rat(u, total));
}

/// A second functional with the same barycenter as `a`, obtained by solving
/// for the position of its last atom.
inline Functional random_partner(Rng& rng, const Functional& a,
                                 bool allow_uniform = true) {
  const Rational target = barycenter(a);
  for (;;) {
    Functional draft = random_functional(rng, allow_uniform);
    std::vector<Atom> atoms = draft.atoms();
    if (atoms.empty()) {
      continue;
    }
    Atom last = atoms.back();
    atoms.pop_back();
    Rational rest = draft.uniform_weight() / 2;
    for (const auto& x : atoms) {
      rest += x.weight * x.position;
    }
    last.position = (target - rest) / last.weight;
    if (last.position.sign() < 0 || last.position > 1) {
      continue;
    }
    atoms.push_back(last);
    return make_functional(std::move(atoms), draft.uniform_weight());
  }
}

/// Random pair with equal barycenters that are not the same functional.
inline std::pair<Functional, Functional> random_equal_mean_pair(Rng& rng) {
  for (;;) {
    Functional a = random_functional(rng);
    Functional b = random_partner(rng, a);
    if (!(a == b)) {
      return {a, b};
    }
  }
}

// Floating-point reference, computed straight from the atoms.

inline double cdf_double(const Functional& f, double t) {
  double v = to_double(f.uniform_weight()) * std::clamp(t, 0.0, 1.0);
  for (const auto& a : f.atoms()) {
    if (to_double(a.position) <= t) {
      v += to_double(a.weight);
    }
  }
  return v;
}

/// Composite midpoint rule with n panels on [lo, hi].
inline double quadrature(const std::function<double(double)>& g, double lo,
                         double hi, int n = 200000) {
  const double h = (hi - lo) / n;
  double s = 0;
  for (int i = 0; i < n; ++i) {
    s += g(lo + (i + 0.5) * h);
  }
  return s * h;
}

/// int_lo^hi |F_A - F_B| by quadrature.
inline double numeric_abs_area(const Functional& a, const Functional& b,
                               double lo, double hi) {
  return quadrature(
      [&](double t) { return std::abs(cdf_double(a, t) - cdf_double(b, t)); },
      lo, hi);
}

inline double numeric_g(const Functional& a, const Functional& b, double s) {
  return quadrature(
      [&](double t) { return cdf_double(a, t) - cdf_double(b, t); }, 0.0, s);
}

} // namespace hhorder::testing
