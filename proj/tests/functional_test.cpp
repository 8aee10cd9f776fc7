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

#include <algorithm>

#include <gtest/gtest.h>

#include "hhorder/functional.hpp"
#include "support.hpp"

namespace hhorder {
namespace {

TEST(MakeFunctional, SingleAtomMidpoint) {
  const Functional f = make_functional({{rat(1, 2), Rational(1)}}, Rational(0));
  ASSERT_EQ(f.atoms().size(), 1u);
  EXPECT_EQ(f.atoms()[0], (Atom{rat(1, 2), Rational(1)}));
  EXPECT_EQ(f, presets::midpoint());
}

TEST(MakeFunctional, MergesCoincidentNodesAndSorts) {
  const Functional f = make_functional(
      {{rat(3, 4), rat(1, 2)}, {rat(1, 4), rat(1, 3)}, {rat(1, 4), rat(1, 6)}},
      Rational(0));
  const std::vector<Atom> want{{rat(1, 4), rat(1, 2)}, {rat(3, 4), rat(1, 2)}};
  EXPECT_EQ(f.atoms(), want);
}

TEST(MakeFunctional, DropsZeroWeights) {
  const Functional f = make_functional(
      {{rat(1, 3), Rational(0)}, {rat(2, 3), rat(1, 2)}}, rat(1, 2));
  ASSERT_EQ(f.atoms().size(), 1u);
  EXPECT_EQ(f.atoms()[0].position, rat(2, 3));
}

TEST(MakeFunctional, SimpsonRule) {
  const Functional f = make_functional(
      {{Rational(0), rat(1, 6)}, {rat(1, 2), rat(2, 3)}, {Rational(1), rat(1, 6)}},
      Rational(0));
  EXPECT_EQ(f, presets::simpson());
  EXPECT_EQ(f.atoms().size(), 3u);
}

TEST(MakeFunctional, Errors) {
  EXPECT_THROW(make_functional({{rat(1, 2), rat(1, 2)}}, Rational(0)), MassError);
  EXPECT_THROW(make_functional({{rat(3, 2), Rational(1)}}, Rational(0)), DomainError);
  EXPECT_THROW(make_functional({{rat(-1, 2), Rational(1)}}, Rational(0)), DomainError);
  EXPECT_THROW(make_functional({{rat(1, 2), rat(-1, 2)}, {rat(1, 4), rat(3, 2)}},
                               Rational(0)),
               NegativeWeight);
  EXPECT_THROW(make_functional({{rat(1, 2), rat(3, 2)}}, rat(-1, 2)), NegativeWeight);
}

TEST(FromPaperConvention, EndpointCoefficientIsLeftEnd) {
  const Functional f = from_paper_convention({{Rational(1), Rational(1)}}, Rational(0));
  ASSERT_EQ(f.atoms().size(), 1u);
  EXPECT_EQ(f.atoms()[0].position, Rational(0));
}

TEST(FromPaperConvention, SymmetricThreeNodeRule) {
  const Functional f = from_paper_convention(
      {{rat(1, 4), rat(3, 4)}, {rat(1, 2), rat(1, 2)}, {rat(1, 4), rat(1, 4)}},
      Rational(0));
  const std::vector<Atom> want{
      {rat(1, 4), rat(1, 4)}, {rat(1, 2), rat(1, 2)}, {rat(3, 4), rat(1, 4)}};
  EXPECT_EQ(f.atoms(), want);
}

TEST(FromPaperConvention, DecimalCoefficients) {
  const Functional f = from_paper_convention(
      {{rat(1, 2), parse_rational("0.9")}, {rat(1, 2), parse_rational("0.1")}},
      Rational(0));
  const std::vector<Atom> want{{rat(1, 10), rat(1, 2)}, {rat(9, 10), rat(1, 2)}};
  EXPECT_EQ(f.atoms(), want);
}

TEST(FromPaperConvention, NodesAreOneMinusCoefficient) {
  testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Rational al = testing::random_node(rng);
    const Functional f = from_paper_convention({{Rational(1), al}}, Rational(0));
    EXPECT_EQ(f.atoms().at(0).position, 1 - al);
  }
}

TEST(Cdf, MidpointIsAStep) {
  const PLFunction F = cdf(presets::midpoint());
  EXPECT_EQ(F(Rational(0)), 0);
  EXPECT_EQ(F(rat(49, 100)), 0);
  EXPECT_EQ(F(rat(1, 2)), 1);
  EXPECT_EQ(F.left_limit(rat(1, 2)), 0);
  EXPECT_EQ(F(Rational(1)), 1);
  EXPECT_EQ(F(rat(-1)), 0);
}

TEST(Cdf, UniformIsTheIdentityRamp) {
  const PLFunction F = cdf(presets::uniform());
  for (int k = 0; k < 10; ++k) {
    EXPECT_EQ(F(rat(k, 10)), rat(k, 10));
  }
  EXPECT_EQ(F(Rational(1)), 1);
}

TEST(Cdf, MixtureRampWithJump) {
  const Functional f = make_functional({{rat(1, 2), rat(1, 2)}}, rat(1, 2));
  const PLFunction F = cdf(f);
  EXPECT_EQ(F(rat(1, 4)), rat(1, 8));
  EXPECT_EQ(F.left_limit(rat(1, 2)), rat(1, 4));
  EXPECT_EQ(F(rat(1, 2)), rat(3, 4));
  EXPECT_EQ(F.jump(rat(1, 2)), rat(1, 2));
  EXPECT_EQ(F(rat(3, 4)), rat(7, 8));
}

TEST(Cdf, EndpointAtomsJumpAtZeroAndOne) {
  const PLFunction F = cdf(presets::trapezoid());
  EXPECT_EQ(F.jump(Rational(0)), rat(1, 2));
  EXPECT_EQ(F.left_limit(Rational(1)), rat(1, 2));
  EXPECT_EQ(F.jump(Rational(1)), rat(1, 2));
}

TEST(Cdf, NondecreasingAndEndsAtOne) {
  testing::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const PLFunction F = cdf(testing::random_functional(rng));
    EXPECT_EQ(F(Rational(1)), 1);
    EXPECT_EQ(F.value_before_zero(), 0);
    EXPECT_TRUE(F.is_nondecreasing());
  }
}

TEST(Barycenter, Examples) {
  EXPECT_EQ(barycenter(presets::midpoint()), rat(1, 2));
  EXPECT_EQ(barycenter(presets::simpson()), rat(1, 2));
  EXPECT_EQ(barycenter(make_functional({{rat(1, 10), rat(1, 2)}, {rat(9, 10), rat(1, 2)}},
                                       Rational(0))),
            rat(1, 2));
  EXPECT_EQ(barycenter(make_functional({{rat(1, 5), rat(1, 2)}}, rat(1, 2))),
            rat(7, 20));
}

TEST(Evaluate, HingeAtMidpoint) {
  EXPECT_EQ(evaluate(presets::midpoint(), Hinge{rat(1, 2)}), 0);
}

TEST(Evaluate, UniformHingeMatchesQuadrature) {
  // Closed form (1-s)^2/2 against a numeric integral of max(t - 1/2, 0).
  const double numeric = testing::quadrature(
      [](double t) { return std::max(t - 0.5, 0.0); }, 0.0, 1.0);
  EXPECT_NEAR(numeric, 0.125, 1e-9);
  EXPECT_EQ(evaluate(presets::uniform(), Hinge{rat(1, 2)}), rat(1, 8));

  for (int k = -2; k <= 12; ++k) {
    const Rational s = rat(k, 10);
    const double sd = to_double(s);
    const double q = testing::quadrature(
        [sd](double t) { return std::max(t - sd, 0.0); }, 0.0, 1.0);
    EXPECT_NEAR(to_double(integral(Hinge{s})), q, 1e-9) << to_string(s);
  }
}

TEST(Evaluate, SimpsonIntegratesSquareExactly) {
  EXPECT_EQ(evaluate(presets::simpson(), Square{}), rat(1, 3));
  EXPECT_EQ(evaluate(presets::uniform(), Square{}), rat(1, 3));
}

TEST(Evaluate, BarycenterIsTheLinearTestFunction) {
  testing::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const Functional f = testing::random_functional(rng);
    EXPECT_EQ(barycenter(f), evaluate(f, Linear{Rational(1), Rational(0)}));
    EXPECT_EQ(evaluate(f, Constant{rat(3, 7)}), rat(3, 7));
  }
}

TEST(Evaluate, AffineInTheFunctional) {
  testing::Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const Functional f = testing::random_functional(rng);
    const Functional g = testing::random_functional(rng);
    const Rational lambda = rat(rng.between(0, 8), 8);
    const Functional m = mix(f, g, lambda);
    for (const TestFunction& fn :
         {TestFunction{Hinge{testing::random_node(rng)}}, TestFunction{Square{}},
          TestFunction{Linear{rat(2), rat(-1, 3)}}}) {
      EXPECT_EQ(evaluate(m, fn), lambda * evaluate(f, fn) + (1 - lambda) * evaluate(g, fn));
    }
  }
}

TEST(TestFunctions, ParseBuiltInFamily) {
  EXPECT_EQ(evaluate(presets::uniform(), parse_test_function("hinge:1/2")), rat(1, 8));
  EXPECT_EQ(evaluate(presets::uniform(), parse_test_function("square")), rat(1, 3));
  EXPECT_EQ(evaluate(presets::uniform(), parse_test_function("linear:2,1")), 2);
  EXPECT_EQ(evaluate(presets::uniform(), parse_test_function("const:5")), 5);
}

TEST(TestFunctions, UnsupportedNamesAreRejected) {
  EXPECT_THROW(parse_test_function("exp"), UnsupportedTestFunction);
  EXPECT_THROW(parse_test_function("hinge"), UnsupportedTestFunction);
  EXPECT_THROW(parse_test_function("square:2"), UnsupportedTestFunction);
}

} // namespace
} // namespace hhorder
