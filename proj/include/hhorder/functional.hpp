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
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hhorder/errors.hpp"
#include "hhorder/rational.hpp"

namespace hhorder {

/// Point evaluation f(position) carrying the given weight.
struct Atom {
  Rational position;
  Rational weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A quadrature functional on [0,1]: finitely many point evaluations plus
/// a multiple of the integral mean. Its weights form a probability measure.
///
/// Instances are only created through make_functional() and friends, which
/// merge coincident nodes, drop zero weights and sort, so two functionals
/// describe the same measure iff they compare equal.
class Functional {
public:
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Rational& uniform_weight() const { return uniform_; }

  friend bool operator==(const Functional&, const Functional&) = default;

private:
  Functional(std::vector<Atom> atoms, Rational uniform)
      : atoms_(std::move(atoms)), uniform_(std::move(uniform)) {}

  friend Functional make_functional(std::vector<Atom> atoms,
                                    Rational uniform_weight);

  std::vector<Atom> atoms_;
  Rational uniform_;
};

inline Functional make_functional(std::vector<Atom> atoms,
                                  Rational uniform_weight) {
  if (uniform_weight.sign() < 0) {
    throw NegativeWeight("negative uniform weight " +
                         to_string(uniform_weight));
  }
  Rational total = uniform_weight;
  for (const auto& a : atoms) {
    if (a.position.sign() < 0 || a.position > 1) {
      throw DomainError("node " + to_string(a.position) +
                        " lies outside [0,1]");
    }
    if (a.weight.sign() < 0) {
      throw NegativeWeight("negative weight " + to_string(a.weight) +
                           " at node " + to_string(a.position));
    }
    total += a.weight;
  }
  if (total != 1) {
    throw MassError("total mass is " + to_string(total) + ", expected 1");
  }

  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& l, const Atom& r) {
                     return l.position < r.position;
                   });
  std::vector<Atom> merged;
  for (auto& a : atoms) {
    if (!merged.empty() && merged.back().position == a.position) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(std::move(a));
    }
  }
  std::erase_if(merged, [](const Atom& a) { return a.weight.sign() == 0; });
  return Functional(std::move(merged), std::move(uniform_weight));
}

/// Builds a functional from terms a_i f(alpha_i x + (1 - alpha_i) y);
/// on [0,1] the node of each term is 1 - alpha_i.
struct PaperTerm {
  Rational weight;
  Rational alpha;
};

inline Functional from_paper_convention(const std::vector<PaperTerm>& terms,
                                        Rational uniform_weight) {
  std::vector<Atom> atoms;
  atoms.reserve(terms.size());
  for (const auto& term : terms) {
    atoms.push_back({1 - term.alpha, term.weight});
  }
  return make_functional(std::move(atoms), std::move(uniform_weight));
}

/// lambda * f + (1 - lambda) * g, for lambda in [0,1].
inline Functional mix(const Functional& f, const Functional& g,
                      const Rational& lambda) {
  std::vector<Atom> atoms;
  for (const auto& a : f.atoms()) {
    atoms.push_back({a.position, lambda * a.weight});
  }
  for (const auto& a : g.atoms()) {
    atoms.push_back({a.position, (1 - lambda) * a.weight});
  }
  return make_functional(std::move(atoms),
                         lambda * f.uniform_weight() +
                             (1 - lambda) * g.uniform_weight());
}

namespace presets {

inline Functional uniform() { return make_functional({}, Rational(1)); }

inline Functional midpoint() {
  return make_functional({{rat(1, 2), Rational(1)}}, Rational(0));
}

inline Functional trapezoid() {
  return make_functional({{Rational(0), rat(1, 2)}, {Rational(1), rat(1, 2)}},
                         Rational(0));
}

inline Functional simpson() {
  return make_functional({{Rational(0), rat(1, 6)},
                          {rat(1, 2), rat(2, 3)},
                          {Rational(1), rat(1, 6)}},
                         Rational(0));
}

} // namespace presets

/// Affine map t -> slope * t + intercept.
struct Affine {
  Rational slope;
  Rational intercept;

  Rational at(const Rational& t) const { return slope * t + intercept; }
  bool is_zero() const {
    return slope.sign() == 0 && intercept.sign() == 0;
  }

  friend Affine operator-(const Affine& l, const Affine& r) {
    return {l.slope - r.slope, l.intercept - r.intercept};
  }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// Right-continuous piecewise-affine function on [0,1].
///
/// Breakpoints b_0 = 0 < ... < b_k = 1. Piece j is valid on [b_j, b_{j+1});
/// the value at 1 and the value to the left of 0 are stored separately so
/// that jumps at both endpoints are representable.
class PLFunction {
public:
  PLFunction(std::vector<Rational> breakpoints, std::vector<Affine> pieces,
             Rational before_zero, Rational at_one)
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)),
        before_(std::move(before_zero)), end_(std::move(at_one)) {
    if (breaks_.size() < 2 || breaks_.front() != 0 || breaks_.back() != 1 ||
        pieces_.size() + 1 != breaks_.size()) {
      throw DomainError("malformed piecewise-affine function");
    }
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
      if (!(breaks_[i - 1] < breaks_[i])) {
        throw DomainError("breakpoints must increase strictly");
      }
    }
  }

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Affine>& pieces() const { return pieces_; }
  std::size_t segments() const { return pieces_.size(); }
  const Rational& value_before_zero() const { return before_; }
  const Rational& value_at_one() const { return end_; }

  /// Index j of the piece valid on [b_j, b_{j+1}) containing t in [0,1).
  std::size_t segment_of(const Rational& t) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    return static_cast<std::size_t>(it - breaks_.begin()) - 1;
  }

  Rational operator()(const Rational& t) const {
    if (t.sign() < 0) {
      return before_;
    }
    if (t >= 1) {
      return end_;
    }
    return pieces_[segment_of(t)].at(t);
  }

  Rational left_limit(const Rational& t) const {
    if (t.sign() <= 0) {
      return before_;
    }
    if (t > 1) {
      return end_;
    }
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
    auto j = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return pieces_[j].at(t);
  }

  Rational jump(const Rational& t) const {
    return (*this)(t) - left_limit(t);
  }

  /// Zero almost everywhere on [0,1].
  bool is_zero_ae() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const Affine& p) { return p.is_zero(); });
  }

  bool is_nondecreasing() const {
    for (const auto& p : pieces_) {
      if (p.slope.sign() < 0) {
        return false;
      }
    }
    for (const auto& b : breaks_) {
      if (jump(b).sign() < 0) {
        return false;
      }
    }
    return true;
  }

  friend PLFunction operator-(const PLFunction& l, const PLFunction& r) {
    std::vector<Rational> merged;
    std::set_union(l.breaks_.begin(), l.breaks_.end(), r.breaks_.begin(),
                   r.breaks_.end(), std::back_inserter(merged));
    std::vector<Affine> pieces;
    pieces.reserve(merged.size() - 1);
    for (std::size_t j = 0; j + 1 < merged.size(); ++j) {
      pieces.push_back(l.pieces_[l.segment_of(merged[j])] -
                       r.pieces_[r.segment_of(merged[j])]);
    }
    return PLFunction(std::move(merged), std::move(pieces),
                      l.before_ - r.before_, l.end_ - r.end_);
  }

private:
  std::vector<Rational> breaks_;
  std::vector<Affine> pieces_;
  Rational before_;
  Rational end_;
};

/// Distribution function of the measure behind a functional.
inline PLFunction cdf(const Functional& f) {
  std::vector<Rational> breaks{Rational(0)};
  for (const auto& a : f.atoms()) {
    if (a.position != breaks.back() && a.position != 1) {
      breaks.push_back(a.position);
    }
  }
  breaks.push_back(Rational(1));

  std::vector<Affine> pieces;
  pieces.reserve(breaks.size() - 1);
  Rational mass_so_far;
  auto atom = f.atoms().begin();
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    while (atom != f.atoms().end() && atom->position <= breaks[j]) {
      mass_so_far += atom->weight;
      ++atom;
    }
    pieces.push_back({f.uniform_weight(), mass_so_far});
  }
  return PLFunction(std::move(breaks), std::move(pieces), Rational(0),
                    Rational(1));
}

/// Mean of the underlying measure, i.e. the functional applied to t.
inline Rational barycenter(const Functional& f) {
  Rational m = f.uniform_weight() / 2;
  for (const auto& a : f.atoms()) {
    m += a.weight * a.position;
  }
  return m;
}

// Test functions with closed-form integrals over [0,1].

/// t -> max(t - s, 0)
struct Hinge {
  Rational s;
};
struct Square {};
struct Linear {
  Rational slope;
  Rational intercept;
};
struct Constant {
  Rational value;
};

using TestFunction = std::variant<Hinge, Square, Linear, Constant>;

inline Rational apply(const TestFunction& fn, const Rational& t) {
  return std::visit(
      [&](const auto& g) -> Rational {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Hinge>) {
          return t > g.s ? Rational(t - g.s) : Rational(0);
        } else if constexpr (std::is_same_v<T, Square>) {
          return t * t;
        } else if constexpr (std::is_same_v<T, Linear>) {
          return g.slope * t + g.intercept;
        } else {
          return g.value;
        }
      },
      fn);
}

/// Integral of the test function over [0,1].
inline Rational integral(const TestFunction& fn) {
  return std::visit(
      [](const auto& g) -> Rational {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Hinge>) {
          if (g.s >= 1) {
            return Rational(0);
          }
          if (g.s.sign() <= 0) {
            return rat(1, 2) - g.s;
          }
          return (1 - g.s) * (1 - g.s) / 2;
        } else if constexpr (std::is_same_v<T, Square>) {
          return rat(1, 3);
        } else if constexpr (std::is_same_v<T, Linear>) {
          return g.slope / 2 + g.intercept;
        } else {
          return g.value;
        }
      },
      fn);
}

inline Rational evaluate(const Functional& f, const TestFunction& fn) {
  Rational sum = f.uniform_weight() * integral(fn);
  for (const auto& a : f.atoms()) {
    sum += a.weight * apply(fn, a.position);
  }
  return sum;
}

/// Accepts "hinge:s", "square", "linear:slope,intercept", "const:c".
inline TestFunction parse_test_function(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (name == "square" && arg.empty()) {
    return Square{};
  }
  if (name == "hinge" && !arg.empty()) {
    return Hinge{parse_rational(arg)};
  }
  if (name == "const" && !arg.empty()) {
    return Constant{parse_rational(arg)};
  }
  if (name == "linear" && !arg.empty()) {
    auto comma = arg.find(',');
    if (comma == std::string_view::npos) {
      return Linear{parse_rational(arg), Rational(0)};
    }
    return Linear{parse_rational(arg.substr(0, comma)),
                  parse_rational(arg.substr(comma + 1))};
  }
  throw UnsupportedTestFunction("unsupported test function '" +
                                std::string(spec) + "'");
}

} // namespace hhorder
