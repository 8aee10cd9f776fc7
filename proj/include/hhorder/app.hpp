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
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhorder/agree.hpp"
#include "hhorder/errors.hpp"
#include "hhorder/families.hpp"
#include "hhorder/functional.hpp"
#include "hhorder/json_io.hpp"
#include "hhorder/ordering.hpp"

namespace hhorder::app {

/// Process exit codes.
enum Exit : int {
  kHolds = 0,
  kFails = 1,
  kInputError = 2,
  kInternalError = 3,
};

namespace detail {

inline std::optional<Functional> preset(std::string_view name) {
  if (name == "uniform") {
    return presets::uniform();
  }
  if (name == "midpoint") {
    return presets::midpoint();
  }
  if (name == "trapezoid") {
    return presets::trapezoid();
  }
  if (name == "simpson") {
    return presets::simpson();
  }
  return std::nullopt;
}

/// Inline JSON (starting with '{') or a path to a JSON file.
inline nlohmann::json load_json(const std::string& source) {
  std::string text;
  if (!source.empty() && source.front() == '{') {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) {
      throw ParseError("cannot open '" + source +
                       "' (not a preset, a file or inline JSON)");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline Functional load_functional(const std::string& source,
                                  const io::Interval& chart, bool pairs) {
  if (auto p = preset(source)) {
    return *p;
  }
  return io::read_functional(load_json(source), {}, chart, pairs);
}

/// Template for a custom family; presets stand for their fixed functional.
inline nlohmann::json load_template(const std::string& source) {
  if (auto p = preset(source)) {
    return io::write_functional(*p);
  }
  return load_json(source);
}

/// "k=v" assignments to a parameter map.
inline ParamMap parse_fixes(const std::vector<std::string>& fixes) {
  ParamMap m;
  for (const auto& f : fixes) {
    auto eq = f.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("expected name=value, got '" + f + "'");
    }
    m[f.substr(0, eq)] = parse_rational(f.substr(eq + 1));
  }
  return m;
}

/// Parameter names referenced by a template, in order of appearance.
inline void collect_names(const nlohmann::json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    for (std::size_t i = 0; i < s.size();) {
      if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
        std::size_t k = i;
        while (k < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_')) {
          ++k;
        }
        std::string name = s.substr(i, k - i);
        if (std::find(out.begin(), out.end(), name) == out.end()) {
          out.push_back(name);
        }
        i = k;
      } else {
        ++i;
      }
    }
  } else if (j.is_object()) {
    for (const auto& item : j.items()) {
      collect_names(item.value(), out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      collect_names(v, out);
    }
  }
}

class Writer {
public:
  Writer(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw ParseError("cannot write '" + path + "'");
      }
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

private:
  std::ofstream file_;
  std::ostream* out_;
};

} // namespace detail

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact convex-order decisions for quadrature functionals", "hhorder"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "Decide lhs(f) <= rhs(f) for all convex f");
  std::string lhs_src, rhs_src;
  bool paper_convention = false, diagnose = false;
  std::pair<std::string, std::string> interval;
  std::string family_name;
  std::vector<std::string> fixes;
  std::string out_path;
  check->add_option("lhs_pos", lhs_src, "Left functional (preset, file or inline JSON)");
  check->add_option("rhs_pos", rhs_src, "Right functional (preset, file or inline JSON)");
  check->add_option("--lhs", lhs_src, "Left functional");
  check->add_option("--rhs", rhs_src, "Right functional");
  check->add_flag("--paper-convention", paper_convention,
                  "Inputs use the {\"pairs\":[{\"a\",\"alpha\"}]} form");
  auto* interval_opt =
      check->add_option("--interval", interval, "Interval x y the inputs live on");
  check->add_option("--family", family_name, "Built-in family instead of lhs/rhs");
  check->add_option("--fix", fixes, "Family parameter name=value");
  check->add_flag("--diagnose", diagnose,
                  "Report both decision paths and the crossing profile");
  check->add_option("--out", out_path, "Write output here instead of stdout");

  // threshold / scan share the sweep description
  std::string sweep_text;
  std::string max_den_text = "1000";
  auto add_sweep_options = [&](CLI::App* cmd) {
    cmd->add_option("--family", family_name, "symmetric3, endpoint4, twoVsThree, bp1 or custom")
        ->required();
    cmd->add_option("--sweep", sweep_text, "name=from:to:step")->required();
    cmd->add_option("--fix", fixes, "Fixed parameter name=value");
    cmd->add_option("--lhs", lhs_src, "Left template (custom family)");
    cmd->add_option("--rhs", rhs_src, "Right template (custom family)");
    cmd->add_option("--out", out_path, "Write output here instead of stdout");
  };
  auto* threshold = app.add_subcommand("threshold", "Exact boundary of the holding region");
  add_sweep_options(threshold);
  threshold->add_option("--max-den", max_den_text, "Denominator bound for the boundary");
  auto* scan_cmd = app.add_subcommand("scan", "CSV verdicts over a parameter grid");
  add_sweep_options(scan_cmd);

  // agree
  auto* agree_cmd = app.add_subcommand("agree", "Cross-check theorem checkers against the decider");
  std::string theorem_text;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  agree_cmd->add_option("theorem", theorem_text, "thlH, thrH or thqo")->required();
  agree_cmd->add_option("--samples", samples, "Number of parameter tuples")
      ->check(CLI::PositiveNumber);
  agree_cmd->add_option("--seed", seed, "Random seed");
  agree_cmd->add_option("--fix", fixes, "Force every parameter (name=value)");
  agree_cmd->add_option("--out", out_path, "JSONL file for disagreement records");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  auto sweep_spec = [&]() {
    ScanSpec spec;
    if (family_name == "custom") {
      if (lhs_src.empty() || rhs_src.empty()) {
        throw ParseError("custom family needs --lhs and --rhs templates");
      }
      nlohmann::json l = detail::load_template(lhs_src);
      nlohmann::json r = detail::load_template(rhs_src);
      std::vector<std::string> names;
      detail::collect_names(l, names);
      detail::collect_names(r, names);
      spec.family = custom_family(std::move(l), std::move(r), std::move(names));
    } else {
      spec.family = find_family(family_name);
    }
    spec.sweep = parse_sweep(sweep_text);
    spec.fixed = detail::parse_fixes(fixes);
    return spec;
  };

  try {
    if (check->parsed()) {
      io::Interval chart;
      if (interval_opt->count() > 0) {
        chart.lo = parse_rational(interval.first);
        chart.hi = parse_rational(interval.second);
        if (!(chart.lo < chart.hi)) {
          throw DomainError("interval must satisfy x < y");
        }
      }
      Functional lhs = presets::uniform();
      Functional rhs = presets::uniform();
      if (!family_name.empty()) {
        Instance inst = evaluate_instance(find_family(family_name),
                                          detail::parse_fixes(fixes));
        lhs = inst.lhs;
        rhs = inst.rhs;
      } else {
        if (lhs_src.empty() || rhs_src.empty()) {
          throw ParseError("check needs a left and a right functional");
        }
        lhs = detail::load_functional(lhs_src, chart, paper_convention);
        rhs = detail::load_functional(rhs_src, chart, paper_convention);
      }
      const Verdict v = decide(lhs, rhs, {.diagnose = diagnose});
      nlohmann::json j = io::write_verdict(v, chart);
      if (diagnose) {
        nlohmann::json paths;
        paths["cumulative"] = io::write_verdict(decide_cumulative(lhs, rhs), chart);
        try {
          paths["lemma"] = io::write_verdict(decide_lemma(lhs, rhs), chart);
        } catch (const DegenerateDifference&) {
          paths["lemma"] = "not applicable: functionals coincide";
        } catch (const MeansDiffer&) {
          paths["lemma"] = "not applicable: barycenters differ";
        }
        j["paths"] = paths;
        j["lhs"] = io::write_functional(lhs);
        j["rhs"] = io::write_functional(rhs);
      }
      detail::Writer w(out_path, out);
      w.stream() << j.dump() << '\n';
      return v.holds() ? kHolds : kFails;
    }

    if (threshold->parsed()) {
      const ScanSpec spec = sweep_spec();
      const Integer max_den(max_den_text);
      if (max_den < 1) {
        throw ParseError("--max-den must be positive");
      }
      const ThresholdResult r = find_threshold(spec, max_den);
      detail::Writer w(out_path, out);
      w.stream() << write_threshold(spec, r).dump() << '\n';
      return r.threshold ? kHolds : kFails;
    }

    if (scan_cmd->parsed()) {
      const ScanSpec spec = sweep_spec();
      const auto rows = scan(spec);
      detail::Writer w(out_path, out);
      w.stream() << scan_csv(spec, rows);
      return kHolds;
    }

    if (agree_cmd->parsed()) {
      const agree::Theorem t = agree::parse_theorem(theorem_text);
      std::optional<ParamMap> forced;
      if (!fixes.empty()) {
        forced = detail::parse_fixes(fixes);
      }
      const agree::Summary s = agree::run_agree(t, samples, seed, forced);
      out << s.to_json().dump() << '\n';
      detail::Writer w(out_path, out);
      for (const auto& d : s.disagreements) {
        w.stream() << d.dump() << '\n';
      }
      return s.disagreements.empty() ? kHolds : kFails;
    }
  } catch (const InternalDisagreement& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

} // namespace hhorder::app
