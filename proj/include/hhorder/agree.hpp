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

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hhorder/errors.hpp"
#include "hhorder/expr.hpp"
#include "hhorder/json_io.hpp"
#include "hhorder/oracle.hpp"
#include "hhorder/ordering.hpp"
#include "hhorder/theorems.hpp"

// Cross-validation of the closed-form theorem checkers against the generic
// decider and the hinge oracle on random admissible parameter tuples.

namespace hhorder::agree {

enum class Theorem { ThlH, ThrH, Thqo };

inline Theorem parse_theorem(std::string_view name) {
  if (name == "thlH") {
    return Theorem::ThlH;
  }
  if (name == "thrH") {
    return Theorem::ThrH;
  }
  if (name == "thqo") {
    return Theorem::Thqo;
  }
  throw ParseError("unknown theorem '" + std::string(name) +
                   "' (expected thlH, thrH or thqo)");
}

inline const char* theorem_name(Theorem t) {
  switch (t) {
  case Theorem::ThlH:
    return "thlH";
  case Theorem::ThrH:
    return "thrH";
  case Theorem::Thqo:
    return "thqo";
  }
  return "?";
}

/// Deterministic source of small-denominator rationals in (0,1). Only raw
/// engine output is used so the stream is identical on every platform.
class RationalSource {
public:
  explicit RationalSource(std::uint64_t seed, int max_den = 16)
      : engine_(seed), max_den_(max_den) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  Rational unit() {
    const auto d = 2 + static_cast<long long>(below(max_den_ - 1));
    const auto n = 1 + static_cast<long long>(below(d - 1));
    return rat(n, d);
  }

private:
  std::mt19937_64 engine_;
  int max_den_;
};

namespace detail {

template <class Params>
bool admissible(const Params& p) {
  try {
    theorems::validate(p);
    return true;
  } catch (const InvalidParameters&) {
    return false;
  }
}

constexpr int kMaxAttempts = 1000000;

[[noreturn]] inline void give_up() {
  throw Error("could not draw admissible parameters");
}

} // namespace detail

/// Draws admissible parameters satisfying the mean condition by solving it
/// for one weight (even strategy) or one node (odd strategy).
inline theorems::ThlHParams sample_thlH(RationalSource& src, int strategy) {
  for (int attempt = 0; attempt < detail::kMaxAttempts; ++attempt) {
    theorems::ThlHParams p;
    const Rational half = rat(1, 2);
    if (strategy % 2 == 0) {
      p.alpha = {src.unit(), src.unit(), src.unit()};
      std::sort(p.alpha.begin(), p.alpha.end(), std::greater<>());
      const Rational q1 = 1 - p.alpha[0], q2 = 1 - p.alpha[1], q3 = 1 - p.alpha[2];
      if (q2 == q3) {
        continue;
      }
      p.a[0] = src.unit();
      p.a[1] = (half - q3 - p.a[0] * (q1 - q3)) / (q2 - q3);
      p.a[2] = 1 - p.a[0] - p.a[1];
    } else {
      p.a[0] = src.unit();
      p.a[1] = src.unit();
      p.a[2] = 1 - p.a[0] - p.a[1];
      p.alpha[0] = src.unit();
      p.alpha[1] = src.unit();
      if (p.alpha[0] < p.alpha[1]) {
        std::swap(p.alpha[0], p.alpha[1]);
      }
      if (p.a[2].sign() <= 0) {
        continue;
      }
      const Rational q3 = (half - p.a[0] * (1 - p.alpha[0]) -
                           p.a[1] * (1 - p.alpha[1])) / p.a[2];
      p.alpha[2] = 1 - q3;
    }
    if (detail::admissible(p)) {
      return p;
    }
  }
  detail::give_up();
}

inline theorems::ThrHParams sample_thrH(RationalSource& src, int strategy) {
  for (int attempt = 0; attempt < detail::kMaxAttempts; ++attempt) {
    theorems::ThrHParams p;
    const Rational half = rat(1, 2);
    p.alpha2 = src.unit();
    if (strategy % 2 == 0) {
      p.alpha3 = src.unit();
      if (p.alpha2 < p.alpha3) {
        std::swap(p.alpha2, p.alpha3);
      }
      const Rational q2 = 1 - p.alpha2, q3 = 1 - p.alpha3;
      if (q2 == q3) {
        continue;
      }
      p.a[0] = src.unit();
      p.a[3] = src.unit();
      const Rational rest = 1 - p.a[0] - p.a[3];
      p.a[1] = (half - p.a[3] - rest * q3) / (q2 - q3);
      p.a[2] = rest - p.a[1];
    } else {
      p.a[0] = src.unit();
      p.a[1] = src.unit();
      p.a[2] = src.unit();
      p.a[3] = 1 - p.a[0] - p.a[1] - p.a[2];
      const Rational q3 = (half - p.a[1] * (1 - p.alpha2) - p.a[3]) / p.a[2];
      p.alpha3 = 1 - q3;
    }
    if (detail::admissible(p)) {
      return p;
    }
  }
  detail::give_up();
}

inline theorems::ThqoParams sample_thqo(RationalSource& src, int strategy) {
  for (int attempt = 0; attempt < detail::kMaxAttempts; ++attempt) {
    theorems::ThqoParams p;
    p.a = src.unit();
    p.alpha1 = src.unit();
    p.alpha2 = src.unit();
    if (p.alpha1 < p.alpha2) {
      std::swap(p.alpha1, p.alpha2);
    }
    const Rational mean = p.a * (1 - p.alpha1) + (1 - p.a) * (1 - p.alpha2);
    p.b[0] = src.unit();
    if (strategy % 2 == 0) {
      p.beta = src.unit();
      p.b[1] = (1 - p.b[0] - mean) / p.beta;
      p.b[2] = 1 - p.b[0] - p.b[1];
    } else {
      p.b[1] = src.unit();
      p.b[2] = 1 - p.b[0] - p.b[1];
      if (p.b[1].sign() <= 0) {
        continue;
      }
      p.beta = 1 - (mean - p.b[2]) / p.b[1];
    }
    if (detail::admissible(p)) {
      return p;
    }
  }
  detail::give_up();
}

namespace detail {

inline const Rational& need(const ParamMap& m, const char* key) {
  auto it = m.find(key);
  if (it == m.end()) {
    throw ParseError(std::string("missing parameter '") + key + "'");
  }
  return it->second;
}

} // namespace detail

inline theorems::ThlHParams thlH_from(const ParamMap& m) {
  using detail::need;
  return {{need(m, "a1"), need(m, "a2"), need(m, "a3")},
          {need(m, "alpha1"), need(m, "alpha2"), need(m, "alpha3")}};
}

inline theorems::ThrHParams thrH_from(const ParamMap& m) {
  using detail::need;
  return {{need(m, "a1"), need(m, "a2"), need(m, "a3"), need(m, "a4")},
          need(m, "alpha2"),
          need(m, "alpha3")};
}

inline theorems::ThqoParams thqo_from(const ParamMap& m) {
  using detail::need;
  return {need(m, "a"),    need(m, "alpha1"), need(m, "alpha2"), need(m, "beta"),
          {need(m, "b1"), need(m, "b2"), need(m, "b3")}};
}

/// Outcome of comparing every decision route on one parameter tuple.
struct Comparison {
  theorems::CheckResult check;
  Verdict verdict;
  std::optional<Verdict> lemma;
  oracle::OracleReport report;
  bool means_equal = false;
  bool witness_sound = true;

  bool decider_holds() const { return verdict.holds(); }

  bool agrees() const {
    const bool oracle_holds = report.max_violation.sign() == 0;
    const bool lemma_ok = !lemma || lemma->outcome == verdict.outcome;
    return check.holds == decider_holds() && check.mean_ok == means_equal &&
           oracle_holds == decider_holds() && lemma_ok && witness_sound;
  }
};

template <class Params, class Check>
Comparison compare(const Params& p, Check check) {
  Comparison c;
  c.check = check(p);
  auto [lhs, rhs] = theorems::functional_pair_of(p);
  c.verdict = decide_cumulative(lhs, rhs);
  c.means_equal = barycenter(lhs) == barycenter(rhs);
  if (c.verdict.outcome != Outcome::Equal && c.means_equal) {
    c.lemma = decide_lemma(lhs, rhs);
  }
  c.report = oracle::oracle_decide(lhs, rhs, oracle::refine_grid(lhs, rhs));
  if (c.verdict.outcome == Outcome::Fails) {
    c.witness_sound = witness_is_sound(lhs, rhs, c.verdict.witness);
  }
  return c;
}

inline Comparison compare_any(Theorem t, const ParamMap& m) {
  switch (t) {
  case Theorem::ThlH:
    return compare(thlH_from(m), theorems::check_thlH);
  case Theorem::ThrH:
    return compare(thrH_from(m), theorems::check_thrH);
  case Theorem::Thqo:
    return compare(thqo_from(m), theorems::check_thqo);
  }
  throw ParseError("unknown theorem");
}

/// Full diagnostic record for one comparison, suitable for a JSONL stream.
inline nlohmann::json diagnostic(const nlohmann::json& params,
                                 const Comparison& c) {
  nlohmann::json j;
  j["params"] = params;
  j["case"] = c.check.case_label();
  j["checker_holds"] = c.check.holds;
  j["mean_ok"] = c.check.mean_ok;
  j["means_equal"] = c.means_equal;
  j["decider"] = io::write_verdict(c.verdict);
  j["lemma"] = c.lemma ? io::write_verdict(*c.lemma) : nlohmann::json(nullptr);
  j["oracle"] = io::write_report(c.report);
  // A sound hinge witness refutes a Holds claim; a clean oracle run on the
  // complete grid refutes a Fails claim.
  j["witness_verified"] = c.decider_holds()
                              ? c.report.max_violation.sign() == 0
                              : c.witness_sound;
  j["correct_side"] = c.check.holds == c.decider_holds() ? "both" : "decider";
  return j;
}

struct Summary {
  Theorem theorem = Theorem::Thqo;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t agreements = 0;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t unsound_witnesses = 0;
  std::map<std::string, std::size_t> cases;
  std::vector<nlohmann::json> disagreements;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["theorem"] = theorem_name(theorem);
    j["samples"] = samples;
    j["seed"] = seed;
    j["agreements"] = agreements;
    j["disagreements"] = disagreements.size();
    j["holds"] = holds;
    j["fails"] = fails;
    j["unsound_witnesses"] = unsound_witnesses;
    j["cases"] = cases;
    return j;
  }
};

/// Compares checker, decider and oracle on `samples` tuples. With `forced`
/// set, every sample is that fixed tuple.
inline Summary run_agree(Theorem theorem, std::size_t samples,
                         std::uint64_t seed,
                         const std::optional<ParamMap>& forced = std::nullopt) {
  Summary s;
  s.theorem = theorem;
  s.samples = samples;
  s.seed = seed;
  RationalSource src(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const int strategy = static_cast<int>(i % 2);
    nlohmann::json params;
    Comparison c;
    if (forced) {
      c = compare_any(theorem, *forced);
      params = nlohmann::json::object();
      for (const auto& [k, v] : *forced) {
        params[k] = to_string(v);
      }
    } else {
      switch (theorem) {
      case Theorem::ThlH: {
        auto p = sample_thlH(src, strategy);
        c = compare(p, theorems::check_thlH);
        params = io::write_params(p);
        break;
      }
      case Theorem::ThrH: {
        auto p = sample_thrH(src, strategy);
        c = compare(p, theorems::check_thrH);
        params = io::write_params(p);
        break;
      }
      case Theorem::Thqo: {
        auto p = sample_thqo(src, strategy);
        c = compare(p, theorems::check_thqo);
        params = io::write_params(p);
        break;
      }
      }
    }
    ++s.cases[c.check.case_label()];
    (c.decider_holds() ? s.holds : s.fails) += 1;
    if (!c.witness_sound) {
      ++s.unsound_witnesses;
    }
    if (c.agrees()) {
      ++s.agreements;
    } else {
      s.disagreements.push_back(diagnostic(params, c));
    }
  }
  return s;
}

} // namespace hhorder::agree
