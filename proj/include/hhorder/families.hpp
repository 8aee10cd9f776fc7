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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hhorder/errors.hpp"
#include "hhorder/expr.hpp"
#include "hhorder/functional.hpp"
#include "hhorder/json_io.hpp"
#include "hhorder/ordering.hpp"
#include "hhorder/theorems.hpp"

namespace hhorder {

/// A one- or few-parameter family of (lhs, rhs) pairs. Both sides are
/// functional templates whose entries may be expressions in the parameters.
struct Family {
  std::string name;
  std::vector<std::string> params;
  ParamMap defaults;
  /// Closed admissible range per parameter.
  std::map<std::string, std::pair<Rational, Rational>, std::less<>> ranges;
  nlohmann::json lhs;
  nlohmann::json rhs;
  /// Closed-form theorem verdict for the instance, when one applies.
  std::function<std::optional<theorems::CheckResult>(const ParamMap&)> theorem;
};

namespace detail {

template <class Params, class Check>
std::optional<theorems::CheckResult> try_check(const Params& p, Check check) {
  try {
    return check(p);
  } catch (const InvalidParameters&) {
    return std::nullopt;
  }
}

inline const nlohmann::json& uniform_template() {
  static const nlohmann::json j = {{"atoms", nlohmann::json::array()},
                                   {"uniform", "1"}};
  return j;
}

inline std::map<std::string, Family, std::less<>> make_builtin_families() {
  using nlohmann::json;
  std::map<std::string, Family, std::less<>> out;
  const Rational half = rat(1, 2);

  // a f(node 1-alpha) + (1-2a) f(1/2) + a f(node alpha) <= mean
  Family sym{"symmetric3",
             {"a", "alpha"},
             {},
             {{"a", {Rational(0), half}}, {"alpha", {Rational(0), Rational(1)}}},
             {{"pairs",
               {{{"a", "a"}, {"alpha", "alpha"}},
                {{"a", "1-2*a"}, {"alpha", "1/2"}},
                {{"a", "a"}, {"alpha", "1-alpha"}}}}},
             uniform_template(),
             [](const ParamMap& p) {
               const Rational& a = p.at("a");
               const Rational& al = p.at("alpha");
               return try_check(
                   theorems::ThlHParams{{a, 1 - 2 * a, a}, {al, rat(1, 2), 1 - al}},
                   theorems::check_thlH);
             }};
  out.emplace(sym.name, sym);

  // mean <= a f(0) + b f(1-alpha) + b f(alpha) + a f(1), 2a + 2b = 1
  Family end4{"endpoint4",
              {"a", "alpha"},
              {},
              {{"a", {Rational(0), half}}, {"alpha", {Rational(0), Rational(1)}}},
              uniform_template(),
              {{"pairs",
                {{{"a", "a"}, {"alpha", "1"}},
                 {{"a", "1/2-a"}, {"alpha", "alpha"}},
                 {{"a", "1/2-a"}, {"alpha", "1-alpha"}},
                 {{"a", "a"}, {"alpha", "0"}}}}},
              [](const ParamMap& p) {
                const Rational& a = p.at("a");
                const Rational& al = p.at("alpha");
                return try_check(theorems::ThrHParams{{a, rat(1, 2) - a,
                                                       rat(1, 2) - a, a},
                                                      al, 1 - al},
                                 theorems::check_thrH);
              }};
  out.emplace(end4.name, end4);

  // a f(alpha ..) + (1-a) f((1-alpha) ..) <= b1 f(x) + b2 f(beta ..) + b3 f(y)
  Family two{"twoVsThree",
             {"alpha", "a", "beta", "b1", "b2", "b3"},
             {{"a", half},
              {"beta", half},
              {"b1", rat(1, 6)},
              {"b2", rat(2, 3)},
              {"b3", rat(1, 6)}},
             {{"alpha", {Rational(0), Rational(1)}},
              {"a", {Rational(0), Rational(1)}},
              {"beta", {Rational(0), Rational(1)}},
              {"b1", {Rational(0), Rational(1)}},
              {"b2", {Rational(0), Rational(1)}},
              {"b3", {Rational(0), Rational(1)}}},
             {{"pairs",
               {{{"a", "a"}, {"alpha", "alpha"}},
                {{"a", "1-a"}, {"alpha", "1-alpha"}}}}},
             {{"pairs",
               {{{"a", "b1"}, {"alpha", "1"}},
                {{"a", "b2"}, {"alpha", "beta"}},
                {{"a", "b3"}, {"alpha", "0"}}}}},
             [](const ParamMap& p) {
               return try_check(
                   theorems::ThqoParams{p.at("a"),
                                        p.at("alpha"),
                                        1 - p.at("alpha"),
                                        p.at("beta"),
                                        {p.at("b1"), p.at("b2"), p.at("b3")}},
                   theorems::check_thqo);
             }};
  out.emplace(two.name, two);

  // mean <= (f(0) + f(x) + f(1-x) + f(1)) / 4, x in [0, 1/2]
  Family bp1{"bp1",
             {"x"},
             {},
             {{"x", {Rational(0), half}}},
             uniform_template(),
             {{"atoms",
               {{{"t", "0"}, {"w", "1/4"}},
                {{"t", "x"}, {"w", "1/4"}},
                {{"t", "1-x"}, {"w", "1/4"}},
                {{"t", "1"}, {"w", "1/4"}}}},
              {"uniform", "0"}},
             [](const ParamMap& p) {
               const Rational& x = p.at("x");
               const Rational q = rat(1, 4);
               return try_check(theorems::ThrHParams{{q, q, q, q}, 1 - x, x},
                                theorems::check_thrH);
             }};
  out.emplace(bp1.name, bp1);
  return out;
}

} // namespace detail

inline const std::map<std::string, Family, std::less<>>& builtin_families() {
  static const auto families = detail::make_builtin_families();
  return families;
}

inline const Family& find_family(std::string_view name) {
  const auto& all = builtin_families();
  auto it = all.find(name);
  if (it == all.end()) {
    throw ParseError("unknown family '" + std::string(name) + "'");
  }
  return it->second;
}

/// User-supplied templates; the parameters are whatever the expressions use.
inline Family custom_family(nlohmann::json lhs, nlohmann::json rhs,
                            std::vector<std::string> params) {
  Family f;
  f.name = "custom";
  f.params = std::move(params);
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return f;
}

struct Instance {
  ParamMap params;
  Functional lhs;
  Functional rhs;
  Verdict verdict;
  std::optional<theorems::CheckResult> check;
};

/// Completes `given` with the family defaults and checks ranges.
inline ParamMap resolve_params(const Family& fam, const ParamMap& given) {
  ParamMap p = fam.defaults;
  for (const auto& [k, v] : given) {
    if (!fam.params.empty() &&
        std::find(fam.params.begin(), fam.params.end(), k) == fam.params.end()) {
      throw ParseError("family " + fam.name + " has no parameter '" + k + "'");
    }
    p[k] = v;
  }
  for (const auto& name : fam.params) {
    auto it = p.find(name);
    if (it == p.end()) {
      throw ParseError("family " + fam.name + " needs parameter '" + name + "'");
    }
    if (auto r = fam.ranges.find(name); r != fam.ranges.end()) {
      if (it->second < r->second.first || it->second > r->second.second) {
        throw DomainError("parameter " + name + "=" + to_string(it->second) +
                          " outside [" + to_string(r->second.first) + ", " +
                          to_string(r->second.second) + "]");
      }
    }
  }
  return p;
}

inline Instance evaluate_instance(const Family& fam, const ParamMap& given,
                                  DecideOptions opts = {}) {
  ParamMap p = resolve_params(fam, given);
  Functional lhs = io::read_functional(fam.lhs, p);
  Functional rhs = io::read_functional(fam.rhs, p);
  Verdict v = decide(lhs, rhs, opts);
  std::optional<theorems::CheckResult> check;
  if (fam.theorem) {
    check = fam.theorem(p);
  }
  return {std::move(p), std::move(lhs), std::move(rhs), std::move(v), check};
}

struct Sweep {
  std::string name;
  Rational from;
  Rational to;
  Rational step;
};

/// "name=from:to:step"
inline Sweep parse_sweep(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ParseError("sweep must look like name=from:to:step");
  }
  Sweep s;
  s.name = std::string(text.substr(0, eq));
  auto rest = text.substr(eq + 1);
  auto c1 = rest.find(':');
  auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw ParseError("sweep must look like name=from:to:step");
  }
  s.from = parse_rational(rest.substr(0, c1));
  s.to = parse_rational(rest.substr(c1 + 1, c2 - c1 - 1));
  s.step = parse_rational(rest.substr(c2 + 1));
  if (s.step.sign() <= 0) {
    throw ParseError("sweep step must be positive");
  }
  if (s.to < s.from) {
    throw ParseError("sweep range is empty");
  }
  return s;
}

inline std::vector<Rational> grid_of(const Sweep& s) {
  std::vector<Rational> g;
  for (Rational v = s.from; v <= s.to; v += s.step) {
    g.push_back(v);
  }
  return g;
}

struct ScanSpec {
  Family family;
  Sweep sweep;
  ParamMap fixed;
};

inline std::vector<Instance> scan(const ScanSpec& spec) {
  std::vector<Instance> rows;
  for (const auto& v : grid_of(spec.sweep)) {
    ParamMap p = spec.fixed;
    p[spec.sweep.name] = v;
    rows.push_back(evaluate_instance(spec.family, p));
  }
  return rows;
}

/// Header: swept parameter, remaining parameters, outcome, case, witness_s, gap.
inline std::string scan_csv(const ScanSpec& spec,
                            const std::vector<Instance>& rows) {
  std::vector<std::string> cols{spec.sweep.name};
  auto add_col = [&](const std::string& k) {
    if (std::find(cols.begin(), cols.end(), k) == cols.end()) {
      cols.push_back(k);
    }
  };
  for (const auto& k : spec.family.params) {
    add_col(k);
  }
  for (const auto& row : rows) {
    for (const auto& [k, v] : row.params) {
      add_col(k);
    }
  }

  std::string out;
  for (const auto& c : cols) {
    out += c;
    out += ',';
  }
  out += "outcome,case,witness_s,gap\n";
  for (const auto& row : rows) {
    for (const auto& c : cols) {
      auto it = row.params.find(c);
      out += it == row.params.end() ? std::string() : to_string(it->second);
      out += ',';
    }
    out += io::outcome_name(row.verdict.outcome);
    out += ',';
    out += row.check ? row.check->case_label() : std::string("-");
    out += ',';
    if (const auto* h = std::get_if<HingeWitness>(&row.verdict.witness)) {
      out += to_string(h->s) + ',' + to_string(h->gap);
    } else if (const auto* l = std::get_if<LinearWitness>(&row.verdict.witness)) {
      out += ',' + to_string(l->gap);
    } else {
      out += ',';
    }
    out += '\n';
  }
  return out;
}

enum class Direction { HoldsBelow, HoldsAbove, HoldsEverywhere, FailsEverywhere };

inline const char* direction_name(Direction d) {
  switch (d) {
  case Direction::HoldsBelow:
    return "holds_below";
  case Direction::HoldsAbove:
    return "holds_above";
  case Direction::HoldsEverywhere:
    return "holds_everywhere";
  case Direction::FailsEverywhere:
    return "fails_everywhere";
  }
  return "?";
}

struct ThresholdResult {
  Direction direction = Direction::HoldsBelow;
  /// Boundary of the holding region along the sweep; for saturated results
  /// the last holding grid value.
  std::optional<Rational> threshold;
  /// The boundary itself decides Holds.
  bool attained = false;
  /// Boundary confirmed as a rational with denominator <= the bound.
  bool exact = false;
  /// The holding region reaches the end of the sweep.
  bool saturated = false;
  Rational bracket_lo;
  Rational bracket_hi;
};

/// Locates the boundary of the holding region along the sweep. The coarse
/// grid fixes the side and a bracket; bisection narrows the bracket below
/// 1/(2 max_den^2), where at most one fraction of denominator <= max_den
/// fits, and that fraction is then confirmed on both sides.
inline ThresholdResult find_threshold(const ScanSpec& spec,
                                      const Integer& max_den = 1000) {
  auto holds_at = [&](const Rational& v) {
    ParamMap p = spec.fixed;
    p[spec.sweep.name] = v;
    return evaluate_instance(spec.family, p).verdict.holds();
  };

  const std::vector<Rational> grid = grid_of(spec.sweep);
  std::vector<bool> holds;
  holds.reserve(grid.size());
  for (const auto& v : grid) {
    holds.push_back(holds_at(v));
  }
  std::size_t flips = 0;
  std::size_t flip_at = 0;
  for (std::size_t i = 1; i < holds.size(); ++i) {
    if (holds[i] != holds[i - 1]) {
      ++flips;
      flip_at = i;
    }
  }
  if (flips > 1) {
    throw NonMonotoneRegion("holds/fails changes " + std::to_string(flips) +
                            " times along " + spec.sweep.name);
  }

  ThresholdResult r;
  if (flips == 0) {
    r.bracket_lo = grid.front();
    r.bracket_hi = grid.back();
    if (holds.front()) {
      r.direction = Direction::HoldsEverywhere;
      r.threshold = grid.back();
      r.attained = true;
      r.exact = true;
      r.saturated = true;
    } else {
      r.direction = Direction::FailsEverywhere;
    }
    return r;
  }

  r.direction = holds.front() ? Direction::HoldsBelow : Direction::HoldsAbove;
  const bool below = r.direction == Direction::HoldsBelow;
  // good decides Holds, bad does not; the boundary lies between them.
  Rational good = below ? grid[flip_at - 1] : grid[flip_at];
  Rational bad = below ? grid[flip_at] : grid[flip_at - 1];
  const Rational width_goal = Rational(1) / (2 * Rational(max_den) * max_den);
  while (abs(bad - good) >= width_goal) {
    Rational mid = (good + bad) / 2;
    (holds_at(mid) ? good : bad) = mid;
  }
  r.bracket_lo = below ? good : bad;
  r.bracket_hi = below ? bad : good;

  const Rational candidate = simplest_between(r.bracket_lo, r.bracket_hi);
  const Rational eps = width_goal / 16;
  const Rational outward = below ? Rational(candidate + eps) : Rational(candidate - eps);
  const Rational inward = below ? Rational(candidate - eps) : Rational(candidate + eps);
  r.threshold = candidate;
  const bool small_den = boost::multiprecision::denominator(candidate) <= max_den;
  if (holds_at(candidate)) {
    r.attained = true;
    r.exact = small_den && !holds_at(outward);
  } else {
    r.exact = small_den && holds_at(inward);
  }
  return r;
}

inline nlohmann::json write_threshold(const ScanSpec& spec,
                                      const ThresholdResult& r) {
  nlohmann::json j;
  j["family"] = spec.family.name;
  j["param"] = spec.sweep.name;
  nlohmann::json fixed = nlohmann::json::object();
  for (const auto& [k, v] : spec.fixed) {
    fixed[k] = to_string(v);
  }
  j["fixed"] = fixed;
  j["direction"] = direction_name(r.direction);
  j["threshold"] = r.threshold ? nlohmann::json(to_string(*r.threshold))
                               : nlohmann::json(nullptr);
  j["threshold_approx"] = r.threshold ? nlohmann::json(to_double(*r.threshold))
                                      : nlohmann::json(nullptr);
  j["attained"] = r.attained;
  j["exact"] = r.exact;
  j["saturated"] = r.saturated;
  j["bracket"] = {to_string(r.bracket_lo), to_string(r.bracket_hi)};
  return j;
}

} // namespace hhorder
