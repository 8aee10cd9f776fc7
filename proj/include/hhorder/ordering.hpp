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

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "hhorder/errors.hpp"
#include "hhorder/functional.hpp"
#include "hhorder/rational.hpp"

namespace hhorder {

/// s -> c2 s^2 + c1 s + c0
struct Quadratic {
  Rational c2;
  Rational c1;
  Rational c0;

  Rational at(const Rational& s) const { return (c2 * s + c1) * s + c0; }
  Affine derivative() const { return {2 * c2, c1}; }
};

/// D = F_A - F_B together with its exact antiderivative G(s) = int_0^s D.
///
/// For probability functionals A(h_s) - B(h_s) = G(s) - G(1), so A is below
/// B in the convex order iff G(1) = 0 and G <= 0 on [0,1].
class DiffFunction {
public:
  explicit DiffFunction(PLFunction d) : d_(std::move(d)) {
    const auto& b = d_.breakpoints();
    g_at_breaks_.reserve(b.size());
    g_at_breaks_.push_back(Rational(0));
    antiderivative_.reserve(d_.segments());
    for (std::size_t j = 0; j < d_.segments(); ++j) {
      const Affine& p = d_.pieces()[j];
      Quadratic q{p.slope / 2, p.intercept, Rational(0)};
      q.c0 = g_at_breaks_.back() - q.at(b[j]);
      antiderivative_.push_back(q);
      g_at_breaks_.push_back(q.at(b[j + 1]));
    }
  }

  const PLFunction& d() const { return d_; }
  const std::vector<Quadratic>& antiderivative_pieces() const {
    return antiderivative_;
  }
  const std::vector<Rational>& g_at_breakpoints() const {
    return g_at_breaks_;
  }

  /// G(s) for s in [0,1].
  Rational g(const Rational& s) const {
    if (s.sign() <= 0) {
      return Rational(0);
    }
    if (s >= 1) {
      return g_at_breaks_.back();
    }
    return antiderivative_[d_.segment_of(s)].at(s);
  }

  const Rational& total() const { return g_at_breaks_.back(); }

  bool is_zero() const { return d_.is_zero_ae(); }

  /// Breakpoints plus interior roots of D, in increasing order. The
  /// maximum of G over [0,1] is attained on this set.
  std::vector<Rational> critical_points() const {
    const auto& b = d_.breakpoints();
    std::vector<Rational> out;
    for (std::size_t j = 0; j < d_.segments(); ++j) {
      out.push_back(b[j]);
      if (auto r = interior_root(j)) {
        out.push_back(*r);
      }
    }
    out.push_back(b.back());
    return out;
  }

  /// Root of piece j strictly inside (b_j, b_{j+1}), if D changes sign there.
  std::optional<Rational> interior_root(std::size_t j) const {
    const Affine& p = d_.pieces()[j];
    if (p.slope.sign() == 0) {
      return std::nullopt;
    }
    Rational r = -p.intercept / p.slope;
    const auto& b = d_.breakpoints();
    if (b[j] < r && r < b[j + 1]) {
      return r;
    }
    return std::nullopt;
  }

  /// Maximiser of G; the smallest one under ties.
  std::pair<Rational, Rational> argmax() const {
    const auto& b = d_.breakpoints();
    Rational best_s = b.front();
    Rational best = g_at_breaks_.front();
    auto consider = [&](const Rational& s, const Rational& v) {
      if (v > best) {
        best = v;
        best_s = s;
      }
    };
    for (std::size_t j = 0; j < d_.segments(); ++j) {
      consider(b[j], g_at_breaks_[j]);
      // Only a decreasing piece of D gives an interior maximum of G.
      if (d_.pieces()[j].slope.sign() < 0) {
        if (auto r = interior_root(j)) {
          consider(*r, antiderivative_[j].at(*r));
        }
      }
    }
    consider(b.back(), g_at_breaks_.back());
    return {best_s, best};
  }

private:
  PLFunction d_;
  std::vector<Quadratic> antiderivative_;
  std::vector<Rational> g_at_breaks_;
};

inline DiffFunction difference(const Functional& a, const Functional& b) {
  return DiffFunction(cdf(a) - cdf(b));
}

/// Sign changes of F_A - F_B between stretches of nonzero area.
///
/// Interval i runs from crossing i to crossing i+1 (with 0 and 1 at the
/// ends); D has sign initial_sign * (-1)^i on it and areas[i] = |int D|.
struct CrossingProfile {
  std::vector<Rational> points;
  std::vector<Rational> areas;
  int initial_sign = -1;

  std::size_t n() const { return points.size(); }

  int sign_of(std::size_t interval) const {
    return interval % 2 == 0 ? initial_sign : -initial_sign;
  }

  friend bool operator==(const CrossingProfile&,
                         const CrossingProfile&) = default;
};

inline CrossingProfile crossing_profile(const DiffFunction& diff) {
  if (diff.is_zero()) {
    throw DegenerateDifference("the distribution functions coincide");
  }
  const auto& b = diff.d().breakpoints();
  const auto& pieces = diff.d().pieces();

  CrossingProfile prof;
  int current = 0;
  Rational signed_area;
  Rational last_nonzero_end;

  auto push = [&](const Rational& from, const Rational& to, int s) {
    if (s == 0) {
      return; // absorbed into the next stretch of nonzero sign
    }
    const Rational area = diff.g(to) - diff.g(from);
    if (current == 0) {
      current = s;
      prof.initial_sign = s;
    } else if (s != current) {
      prof.points.push_back(last_nonzero_end);
      prof.areas.push_back(abs(signed_area));
      signed_area = 0;
      current = s;
    }
    signed_area += area;
    last_nonzero_end = to;
  };

  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const Affine& p = pieces[j];
    if (auto r = diff.interior_root(j)) {
      push(b[j], *r, sign(p.at((b[j] + *r) / 2)));
      push(*r, b[j + 1], sign(p.at((*r + b[j + 1]) / 2)));
    } else {
      push(b[j], b[j + 1], sign(p.at((b[j] + b[j + 1]) / 2)));
    }
  }
  prof.areas.push_back(abs(signed_area));
  return prof;
}

enum class Outcome { Holds, Fails, Equal };

/// Barycenters differ: f(t) = direction * t separates the functionals.
struct LinearWitness {
  int direction = 1;
  Rational gap;

  friend bool operator==(const LinearWitness&, const LinearWitness&) = default;
};

/// A(h_s) - B(h_s) = gap > 0 for the hinge h_s(t) = max(t - s, 0).
struct HingeWitness {
  Rational s;
  Rational gap;

  friend bool operator==(const HingeWitness&, const HingeWitness&) = default;
};

using Witness = std::variant<std::monostate, LinearWitness, HingeWitness>;

struct Verdict {
  Outcome outcome = Outcome::Holds;
  Witness witness;
  std::optional<CrossingProfile> crossings;

  bool holds() const { return outcome != Outcome::Fails; }
};

/// Re-checks a failure witness against direct evaluation of both sides.
inline bool witness_is_sound(const Functional& a, const Functional& b,
                             const Witness& w) {
  if (const auto* h = std::get_if<HingeWitness>(&w)) {
    return h->gap.sign() > 0 &&
           evaluate(a, Hinge{h->s}) - evaluate(b, Hinge{h->s}) == h->gap;
  }
  if (const auto* l = std::get_if<LinearWitness>(&w)) {
    const Linear f{Rational(l->direction), Rational(0)};
    return l->gap.sign() > 0 && evaluate(a, f) - evaluate(b, f) == l->gap;
  }
  return false;
}

/// Decides A(f) <= B(f) for every convex f via the cumulative criterion on
/// G = int_0^s (F_A - F_B).
inline Verdict decide_cumulative(const Functional& a, const Functional& b) {
  const DiffFunction diff = difference(a, b);
  Verdict v;
  if (diff.is_zero()) {
    v.outcome = Outcome::Equal;
    return v;
  }
  v.crossings = crossing_profile(diff);

  const Rational& total = diff.total();
  if (total.sign() != 0) {
    // A(t) - B(t) = -G(1)
    v.outcome = Outcome::Fails;
    v.witness = LinearWitness{total.sign() < 0 ? 1 : -1, abs(total)};
    return v;
  }
  auto [s, peak] = diff.argmax();
  if (peak.sign() > 0) {
    v.outcome = Outcome::Fails;
    v.witness = HingeWitness{s, peak};
  } else {
    v.outcome = Outcome::Holds;
  }
  return v;
}

/// Decides the same question from the crossing count and the alternating
/// area sums. Requires equal barycenters and distinct functionals.
inline Verdict decide_lemma(const Functional& a, const Functional& b) {
  const DiffFunction diff = difference(a, b);
  if (diff.is_zero()) {
    throw DegenerateDifference("the distribution functions coincide");
  }
  if (diff.total().sign() != 0) {
    throw MeansDiffer("barycenters differ by " + to_string(diff.total()));
  }
  CrossingProfile prof = crossing_profile(diff);

  Verdict v;
  v.outcome = Outcome::Fails;
  const std::size_t n = prof.n();
  if (prof.initial_sign > 0) {
    // F_A > F_B first: G rises to A_0 at the first crossing.
    v.witness = HingeWitness{prof.points.front(), prof.areas.front()};
  } else if (n % 2 == 0) {
    // Ends with F_A < F_B, so G falls by A_n to G(1) = 0.
    v.witness = HingeWitness{prof.points.back(), prof.areas.back()};
  } else {
    v.outcome = Outcome::Holds;
    // A_0 - A_1 + ... + A_{2m-2} >= A_{2m-1}, m = 1..(n-1)/2
    Rational running;
    for (std::size_t m = 1; 2 * m <= n - 1; ++m) {
      running += prof.areas[2 * m - 2];
      const Rational& rising = prof.areas[2 * m - 1];
      if (running < rising) {
        v.outcome = Outcome::Fails;
        v.witness = HingeWitness{prof.points[2 * m - 1], rising - running};
        break;
      }
      running -= rising;
    }
  }
  v.crossings = std::move(prof);
  return v;
}

struct DecideOptions {
  /// Also run the crossing-count path and require identical outcomes.
  bool diagnose = false;
};

inline Verdict decide(const Functional& a, const Functional& b,
                      DecideOptions opts = {}) {
  Verdict v = decide_cumulative(a, b);
  if (opts.diagnose && v.outcome != Outcome::Equal &&
      !std::holds_alternative<LinearWitness>(v.witness)) {
    const Verdict lemma = decide_lemma(a, b);
    if (lemma.outcome != v.outcome) {
      throw InternalDisagreement(
          "cumulative and crossing-count paths disagree");
    }
  }
  return v;
}

} // namespace hhorder
