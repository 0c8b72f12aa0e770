// Copyright 2026 The freeshift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "freeshift/prob.hpp"
#include "generators.hpp"

namespace freeshift {
namespace {

GroupElement w(std::string_view s) { return parse_element(s); }

ProbVector vec(std::vector<std::string> s) { return ProbVector::from_decimal_strings(s); }

TEST(ProbVector, DecimalsAreExactAndNormalized) {
  const auto p = vec({"0.3", "0.7"});
  EXPECT_EQ(p.exact_prob(1), Rational(3, 10));
  EXPECT_EQ(p.exact_prob(2), Rational(7, 10));
  const auto q = vec({"1", "3"});
  EXPECT_EQ(q.exact_prob(1), Rational(1, 4));
  EXPECT_DOUBLE_EQ(q.prob(2), 0.75);
  EXPECT_DOUBLE_EQ(q.log_prob(2), std::log(0.75));
}

TEST(ProbVector, RejectsInvalidWeights) {
  EXPECT_THROW(vec({}), std::invalid_argument);
  EXPECT_THROW(vec({"0.5", "0"}), std::invalid_argument);
  EXPECT_THROW(vec({"0.5", "-0.5"}), std::invalid_argument);
  EXPECT_THROW(vec({"abc"}), std::invalid_argument);
  EXPECT_THROW(vec({"0.5"}).prob(2), std::out_of_range);
}

TEST(ProbVector, SampleIsInverseCdf) {
  const auto p = vec({"0.5", "0.3", "0.2"});
  EXPECT_EQ(p.sample(0.0), 1);
  EXPECT_EQ(p.sample(0.49), 1);
  EXPECT_EQ(p.sample(0.5), 2);
  EXPECT_EQ(p.sample(0.79), 2);
  EXPECT_EQ(p.sample(0.81), 3);
  EXPECT_EQ(p.sample(0.9999999), 3);
}

TEST(ProbVector, Permuted) {
  const auto p = vec({"0.5", "0.3", "0.2"});
  const std::vector<Symbol> perm{3, 1, 2};
  const auto q = p.permuted(perm);
  EXPECT_EQ(q.exact_prob(1), Rational(1, 5));
  EXPECT_EQ(q.exact_prob(2), Rational(1, 2));
  const std::vector<Symbol> bad{1, 1, 2};
  EXPECT_THROW(p.permuted(bad), std::invalid_argument);
}

TEST(Cylinder, Examples) {
  const auto half = vec({"0.5", "0.5"});
  Pattern three;
  three.set(w("e"), 1);
  three.set(w("a1"), 2);
  three.set(w("a2"), 1);
  EXPECT_EQ(exact_cylinder_measure(half, three), Rational(1, 8));
  EXPECT_EQ(cylinder_measure(half, Pattern()), 1.0);

  const auto p = vec({"0.5", "0.3", "0.2"});
  Pattern c;
  c.set(w("e"), 1);
  c.set(w("a1"), 3);
  EXPECT_EQ(exact_cylinder_measure(p, c), Rational(1, 10));
  EXPECT_NEAR(cylinder_measure(p, c), 0.10, 1e-15);

  Pattern bad;
  bad.set(w("e"), 4);
  EXPECT_THROW(cylinder_measure(p, bad), std::out_of_range);
}

TEST(Cylinder, MultiplicativeOverDisjointKeys) {
  gen::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto p = gen::prob_vector(rng, rng.between(2, 5));
    const int m = static_cast<int>(p.size());
    Pattern a;
    Pattern b;
    for (const auto& g : ball(2, 2).elements) {
      const int pick = rng.between(0, 2);
      if (pick == 1) a.set(g, rng.between(1, m));
      if (pick == 2) b.set(g, rng.between(1, m));
    }
    const auto merged = Pattern::merge(a, b);
    ASSERT_TRUE(merged);
    EXPECT_EQ(exact_cylinder_measure(p, *merged),
              exact_cylinder_measure(p, a) * exact_cylinder_measure(p, b));
  }
}

TEST(Cylinder, ConditionalExamples) {
  const auto half = vec({"0.5", "0.5"});
  Pattern given;
  given.set(w("e"), 1);
  given.set(w("a1"), 2);
  Pattern sub;
  sub.set(w("e"), 1);
  EXPECT_EQ(exact_conditional_cylinder_measure(half, given, sub), Rational(1));
  Pattern other;
  other.set(w("a2"), 2);
  EXPECT_EQ(exact_conditional_cylinder_measure(half, sub, other), Rational(1, 2));
  Pattern clash;
  clash.set(w("e"), 2);
  EXPECT_EQ(exact_conditional_cylinder_measure(half, given, clash), Rational(0));
  EXPECT_EQ(conditional_cylinder_measure(half, given, clash), 0.0);
}

TEST(Cylinder, ConditionalTimesGivenIsMerged) {
  gen::Rng rng(22);
  const auto p = ProbVector::from_decimal_strings(std::vector<std::string>{"0.5", "0.3", "0.2"});
  for (int i = 0; i < 100; ++i) {
    Pattern a;
    Pattern b;
    for (const auto& g : ball(2, 1).elements) {
      if (rng.coin()) a.set(g, rng.between(1, 3));
      if (rng.coin()) b.set(g, rng.between(1, 3));
    }
    const auto merged = Pattern::merge(a, b);
    if (!merged) {
      EXPECT_FALSE(a.compatible_with(b));
      EXPECT_EQ(exact_conditional_cylinder_measure(p, a, b), Rational(0));
      continue;
    }
    EXPECT_EQ(exact_conditional_cylinder_measure(p, a, b) * exact_cylinder_measure(p, a),
              exact_cylinder_measure(p, *merged));
  }
}

TEST(Pattern, RadiusAndMerge) {
  Pattern c;
  EXPECT_EQ(c.radius(), -1);
  c.set(w("a1a2"), 1);
  c.set(w("e"), 2);
  EXPECT_EQ(c.radius(), 2);
  EXPECT_EQ(c.find(w("e")), 2);
  EXPECT_FALSE(c.find(w("a1")));
}

TEST(Configuration, DeterministicAndOverridable) {
  const auto p = vec({"0.5", "0.3", "0.2"});
  Pattern forced;
  forced.set(w("a1"), 3);
  const Configuration x(42, p, forced);
  const Configuration y(42, p);
  EXPECT_EQ(x.value_at(w("a1")), 3);
  for (const auto& g : ball(2, 3).elements) {
    EXPECT_EQ(x.value_at(g), x.value_at(g));
    if (g != w("a1")) EXPECT_EQ(x.value_at(g), y.value_at(g));
  }
}

TEST(Configuration, ValueDependsOnReducedWordOnly) {
  const auto p = vec({"0.5", "0.3", "0.2"});
  const Configuration x(7, p);
  gen::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto seq = gen::letters(rng, 2, 10);
    const auto g = GroupElement::from_letters(seq);
    EXPECT_EQ(x.value_at(g), x.value_at(parse_element(to_string(g))));
  }
}

TEST(Configuration, MarginalLawOfLargeNumbers) {
  const auto p = vec({"0.5", "0.5"});
  const int n = 100'000;
  int ones = 0;
  for (int s = 0; s < n; ++s) ones += Configuration(static_cast<std::uint64_t>(s), p).value_at(GroupElement()) == 1;
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.5, 0.01);
}

TEST(Configuration, CoordinatesLookIndependent) {
  // Joint frequencies of (x_e, x_a) against the product law, 4 sigma band.
  const auto p = vec({"0.6", "0.4"});
  const int n = 50'000;
  int both = 0;
  for (int s = 0; s < n; ++s) {
    const Configuration x(static_cast<std::uint64_t>(s), p);
    both += x.value_at(GroupElement()) == 1 && x.value_at(w("a1")) == 1;
  }
  const double expect = 0.36;
  EXPECT_NEAR(static_cast<double>(both) / n, expect, 4 * std::sqrt(expect * (1 - expect) / n));
}

TEST(Shift, ActionExamplesAndAxiom) {
  const auto p = vec({"0.5", "0.3", "0.2"});
  const Configuration x(3, p);
  const auto e = GroupElement();
  const auto a = w("a1");
  const auto probe = ball(2, 2).elements;
  const auto same = shift(x, e);
  for (const auto& g : probe) EXPECT_EQ(same.value_at(g), x.value_at(g));
  EXPECT_EQ(shift(x, a).value_at(a), x.value_at(e));

  gen::Rng rng(24);
  int probes = 0;
  for (int i = 0; i < 20; ++i) {
    const auto g = gen::element(rng, 2, 4);
    const auto h = gen::element(rng, 2, 4);
    const auto lhs = shift(shift(x, g), h);
    const auto rhs = shift(x, h * g);
    for (int k = 0; k < 5; ++k, ++probes) {
      const auto u = gen::element(rng, 2, 5);
      EXPECT_EQ(lhs.value_at(u), rhs.value_at(u));
      EXPECT_EQ(shift(x, g).value_at(u), x.value_at(inverse(g) * u));
    }
  }
  EXPECT_EQ(probes, 100);
}

TEST(Shift, MarginalsUseTheSameKey) {
  const auto p = vec({"0.5", "0.3", "0.2"});
  const auto g = w("a2A1");
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const Configuration x(s, p);
    EXPECT_EQ(shift(x, g).value_at(GroupElement()), x.value_at(inverse(g)));
  }
}

TEST(Seeds, DeriveSeedSpreads) {
  EXPECT_NE(derive_seed(0, 0), derive_seed(0, 1));
  EXPECT_NE(derive_seed(0, 0), derive_seed(1, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
  const double u = coordinate_uniform(5, GroupElement());
  EXPECT_GE(u, 0.0);
  EXPECT_LT(u, 1.0);
}

}  // namespace
}  // namespace freeshift
