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

#include <string>
#include <vector>

#include <json.hpp>

#include "hhorder/errors.hpp"
#include "hhorder/expr.hpp"
#include "hhorder/functional.hpp"
#include "hhorder/oracle.hpp"
#include "hhorder/ordering.hpp"
#include "hhorder/rational.hpp"
#include "hhorder/theorems.hpp"

namespace hhorder::io {

using nlohmann::json;

/// Affine chart [lo, hi] -> [0,1]. The default is the identity.
struct Interval {
  Rational lo{0};
  Rational hi{1};

  Rational to_unit(const Rational& x) const { return (x - lo) / (hi - lo); }
  Rational from_unit(const Rational& t) const { return lo + t * (hi - lo); }
  Rational length() const { return hi - lo; }
};

/// Reads a rational from a JSON string ("p/q", decimal, or an expression in
/// `params`) or a JSON integer.
inline Rational read_rational(const json& j, const ParamMap& params = {}) {
  if (j.is_string()) {
    return Expression::evaluate(j.get<std::string>(), params);
  }
  if (j.is_number_integer()) {
    return Rational(Integer(j.dump()));
  }
  throw ParseError("expected a rational as string or integer, got " + j.dump());
}

inline json write_rational(const Rational& r) { return to_string(r); }

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

/// Accepts {"atoms":[{"t":..,"w":..}],"uniform":..} or the coefficient form
/// {"pairs":[{"alpha":..,"a":..}],"uniform":..}. Node positions of the atom
/// form are given on `chart` and mapped to [0,1].
inline Functional read_functional(const json& j, const ParamMap& params = {},
                                  const Interval& chart = {},
                                  bool require_pairs = false) {
  if (!j.is_object()) {
    throw ParseError("functional must be a JSON object");
  }
  const Rational uniform =
      j.contains("uniform") ? read_rational(j.at("uniform"), params) : Rational(0);
  if (j.contains("pairs")) {
    std::vector<PaperTerm> terms;
    for (const auto& p : member(j, "pairs")) {
      terms.push_back({read_rational(member(p, "a"), params),
                       read_rational(member(p, "alpha"), params)});
    }
    return from_paper_convention(terms, uniform);
  }
  if (require_pairs) {
    throw ParseError("expected the coefficient form with a \"pairs\" array");
  }
  std::vector<Atom> atoms;
  for (const auto& a : member(j, "atoms")) {
    atoms.push_back({chart.to_unit(read_rational(member(a, "t"), params)),
                     read_rational(member(a, "w"), params)});
  }
  return make_functional(std::move(atoms), uniform);
}

inline json write_functional(const Functional& f) {
  json atoms = json::array();
  for (const auto& a : f.atoms()) {
    atoms.push_back({{"t", to_string(a.position)}, {"w", to_string(a.weight)}});
  }
  return {{"atoms", atoms}, {"uniform", to_string(f.uniform_weight())}};
}

inline const char* outcome_name(Outcome o) {
  switch (o) {
  case Outcome::Holds:
    return "holds";
  case Outcome::Fails:
    return "fails";
  case Outcome::Equal:
    return "equal";
  }
  return "?";
}

inline json write_witness(const Witness& w, const Interval& chart = {}) {
  if (const auto* h = std::get_if<HingeWitness>(&w)) {
    return {{"kind", "hinge"},
            {"s", to_string(chart.from_unit(h->s))},
            {"gap", to_string(h->gap * chart.length())}};
  }
  if (const auto* l = std::get_if<LinearWitness>(&w)) {
    return {{"kind", "linear"},
            {"direction", l->direction > 0 ? "+1" : "-1"},
            {"gap", to_string(l->gap * chart.length())}};
  }
  return nullptr;
}

inline json write_crossings(const CrossingProfile& p, const Interval& chart = {}) {
  json points = json::array();
  json areas = json::array();
  for (const auto& x : p.points) {
    points.push_back(to_string(chart.from_unit(x)));
  }
  for (const auto& a : p.areas) {
    areas.push_back(to_string(a * chart.length()));
  }
  return {{"n", p.n()},
          {"points", points},
          {"areas", areas},
          {"initial_sign", p.initial_sign}};
}

inline json write_verdict(const Verdict& v, const Interval& chart = {}) {
  json out;
  out["outcome"] = outcome_name(v.outcome);
  out["witness"] = write_witness(v.witness, chart);
  out["crossings"] =
      v.crossings ? write_crossings(*v.crossings, chart) : json(nullptr);
  return out;
}

inline json write_report(const oracle::OracleReport& r) {
  return {{"tested_functions", r.tested_functions},
          {"max_violation", to_string(r.max_violation)},
          {"max_hinge_violation", to_string(r.max_hinge_violation)},
          {"worst_s", r.worst_s ? json(to_string(*r.worst_s)) : json(nullptr)}};
}

inline json write_params(const theorems::ThlHParams& p) {
  return {{"a1", to_string(p.a[0])},         {"a2", to_string(p.a[1])},
          {"a3", to_string(p.a[2])},         {"alpha1", to_string(p.alpha[0])},
          {"alpha2", to_string(p.alpha[1])}, {"alpha3", to_string(p.alpha[2])}};
}

inline json write_params(const theorems::ThrHParams& p) {
  return {{"a1", to_string(p.a[0])},      {"a2", to_string(p.a[1])},
          {"a3", to_string(p.a[2])},      {"a4", to_string(p.a[3])},
          {"alpha2", to_string(p.alpha2)}, {"alpha3", to_string(p.alpha3)}};
}

inline json write_params(const theorems::ThqoParams& p) {
  return {{"a", to_string(p.a)},           {"alpha1", to_string(p.alpha1)},
          {"alpha2", to_string(p.alpha2)}, {"beta", to_string(p.beta)},
          {"b1", to_string(p.b[0])},       {"b2", to_string(p.b[1])},
          {"b3", to_string(p.b[2])}};
}

} // namespace hhorder::io
