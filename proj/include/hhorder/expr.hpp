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
#include <map>
#include <string>
#include <string_view>

#include "hhorder/errors.hpp"
#include "hhorder/rational.hpp"

namespace hhorder {

using ParamMap = std::map<std::string, Rational, std::less<>>;

/// Exact evaluation of arithmetic over rationals and named parameters,
/// e.g. "1/2 - a" or "(1-alpha)/2". Supports + - * / and parentheses.
class Expression {
public:
  static Rational evaluate(std::string_view text, const ParamMap& params) {
    Expression e(text, params);
    Rational v = e.sum();
    e.skip_space();
    if (e.pos_ != e.text_.size()) {
      e.fail("unexpected trailing input");
    }
    return v;
  }

private:
  Expression(std::string_view text, const ParamMap& params)
      : text_(text), params_(params) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("in expression '" + std::string(text_) + "': " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Rational sum() {
    Rational v = product();
    for (;;) {
      if (eat('+')) {
        v += product();
      } else if (eat('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }

  Rational product() {
    Rational v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        Rational d = unary();
        if (d.sign() == 0) {
          fail("division by zero");
        }
        v /= d;
      } else {
        return v;
      }
    }
  }

  Rational unary() {
    if (eat('-')) {
      return -unary();
    }
    if (eat('+')) {
      return unary();
    }
    return primary();
  }

  Rational primary() {
    if (eat('(')) {
      Rational v = sum();
      if (!eat(')')) {
        fail("missing ')'");
      }
      return v;
    }
    skip_space();
    const std::size_t start = pos_;
    auto at = [&](std::size_t i) {
      return static_cast<unsigned char>(text_[i]);
    };
    if (pos_ < text_.size() && (std::isdigit(at(pos_)) || text_[pos_] == '.')) {
      while (pos_ < text_.size() && (std::isdigit(at(pos_)) || text_[pos_] == '.')) {
        ++pos_;
      }
      return parse_rational(text_.substr(start, pos_ - start));
    }
    if (pos_ < text_.size() && (std::isalpha(at(pos_)) || text_[pos_] == '_')) {
      while (pos_ < text_.size() && (std::isalnum(at(pos_)) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto name = text_.substr(start, pos_ - start);
      auto it = params_.find(name);
      if (it == params_.end()) {
        fail("unknown parameter '" + std::string(name) + "'");
      }
      return it->second;
    }
    fail("expected a number, a parameter or '('");
  }

  std::string_view text_;
  const ParamMap& params_;
  std::size_t pos_ = 0;
};

} // namespace hhorder
