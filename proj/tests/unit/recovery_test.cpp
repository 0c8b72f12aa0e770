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

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "freeshift/beta.hpp"
#include "freeshift/recovery.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace freeshift {
namespace {

ProbVector vec(std::vector<std::string> s) { return ProbVector::from_decimal_strings(s); }

std::vector<double> sorted_desc(const ProbVector& p) {
  std::vector<double> v(p.weights().begin(), p.weights().end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

TEST(PowerSums, Examples) {
  const auto u3 = power_sums(vec({"1", "1", "1"}), 2);
  EXPECT_EQ(u3.exact(1), Rational(1));
  EXPECT_EQ(u3.exact(2), Rational(1, 3));
  const auto q = power_sums(vec({"0.75", "0.25"}), 2);
  EXPECT_EQ(q.exact(2), Rational(5, 8));
  EXPECT_EQ(q.value(2), 0.625);
  gen::Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    const auto p = gen::prob_vector(rng, rng.between(1, 8));
    const auto ps = power_sums(p, 6);
    EXPECT_EQ(ps.exact(1), Rational(1));
    for (std::size_t k = 1; k <= 6; ++k) {
      EXPECT_NEAR(ps.value(k), beta_closed(p, static_cast<double>(k)), 1e-15);
      if (k > 1) EXPECT_LE(ps.exact(k), ps.exact(k - 1));
    }
  }
  EXPECT_THROW(power_sums(vec({"1"}), 0), std::invalid_argument);
}

TEST(Newton, Examples) {
  const auto e = newton_to_elementary(power_sums(vec({"0.75", "0.25"}), 2), 2);
  EXPECT_EQ(e[0], Rational(1));
  EXPECT_EQ(e[1], Rational(1));
  EXPECT_EQ(e[2], Rational(3, 16));
  EXPECT_EQ(newton_to_elementary(power_sums(vec({"1", "1"}), 2), 2)[2], Rational(1, 4));
  EXPECT_EQ(newton_to_elementary(power_sums(vec({"1"}), 1), 1)[1], Rational(1));
  EXPECT_THROW(newton_to_elementary(power_sums(vec({"1", "1"}), 1), 2), std::invalid_argument);
}

TEST(Newton, MatchesDirectExpansion) {
  gen::Rng rng(62);
  for (int i = 0; i < 100; ++i) {
    const int m = rng.between(1, 8);
    std::vector<Rational> w;
    for (int k = 0; k < m; ++k) w.emplace_back(rng.between(1, 50));
    const auto p = ProbVector::from_rationals(w);
    const std::vector<Rational> roots(p.exact_weights().begin(), p.exact_weights().end());
    const auto coeff = oracle::expand_monic(roots);
    const auto e = newton_to_elementary(power_sums(p, static_cast<std::size_t>(m)), static_cast<std::size_t>(m));
    for (int k = 0; k <= m; ++k) {
      const Rational signed_e = (k % 2 == 0 ? 1 : -1) * e[static_cast<std::size_t>(k)];
      EXPECT_EQ(signed_e, coeff[static_cast<std::size_t>(k)]);
    }
  }
}

TEST(Recover, Examples) {
  const std::vector<double> sums{1.0, 0.625};
  const auto r = recover_vector(PowerSums::from_doubles(sums), 2);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_NEAR(r.entries[0], 0.75, 1e-15);
  EXPECT_NEAR(r.entries[1], 0.25, 1e-15);

  const auto u = recover_vector(power_sums(vec({"1", "1", "1", "1"}), 4), 4);
  for (double v : u.entries) EXPECT_NEAR(v, 0.25, 1e-10);
}

TEST(Recover, InconsistentSumsFail) {
  const std::vector<double> complex_roots{1.0, 0.4};
  EXPECT_THROW(recover_vector(PowerSums::from_doubles(complex_roots), 2), RecoveryError);
  const std::vector<double> negative_root{1.0, 1.5};
  EXPECT_THROW(recover_vector(PowerSums::from_doubles(negative_root), 2), RecoveryError);
  const std::vector<double> bad_total{0.9, 0.5};
  EXPECT_THROW(recover_vector(PowerSums::from_doubles(bad_total), 2), RecoveryError);
  EXPECT_THROW(recover_vector(PowerSums::from_doubles(complex_roots), 3), std::invalid_argument);
}

TEST(Recover, RoundTripRandomVectors) {
  gen::Rng rng(63);
  for (int i = 0; i < 200; ++i) {
    const int m = rng.between(1, 8);
    const auto p = gen::prob_vector(rng, m);
    const auto r = recover_vector(power_sums(p, static_cast<std::size_t>(m)), static_cast<std::size_t>(m));
    EXPECT_LT(linf(r.entries, sorted_desc(p)), 1e-8) << "case " << i;
  }
}

TEST(Recover, RoundTripRepeatedEntries) {
  gen::Rng rng(64);
  for (int i = 0; i < 100; ++i) {
    const int m = rng.between(2, 8);
    const auto p = gen::repeated_vector(rng, m);
    const auto r = recover_vector(power_sums(p, static_cast<std::size_t>(m)), static_cast<std::size_t>(m));
    EXPECT_LT(linf(r.entries, sorted_desc(p)), 1e-8) << "case " << i;
  }
}

TEST(Recover, RoundTripNearDegenerateGaps) {
  gen::Rng rng(65);
  for (int i = 0; i < 50; ++i) {
    const int m = rng.between(2, 8);
    // Entries spaced by at least 1e-3 around a common level.
    std::vector<double> w;
    const double level = rng.uniform(1.0, 2.0);
    for (int k = 0; k < m; ++k) w.push_back(level + 1e-3 * k + rng.uniform(0.0, 1e-4));
    const auto p = ProbVector::from_weights(w);
    const auto r = recover_vector(power_sums(p, static_cast<std::size_t>(m)), static_cast<std::size_t>(m));
    EXPECT_LT(linf(r.entries, sorted_desc(p)), 1e-8) << "case " << i;
  }
}

TEST(Recover, ProbVectorConversion) {
  const auto r = recover_vector(power_sums(vec({"0.5", "0.3", "0.2"}), 3), 3);
  EXPECT_TRUE(permutation_equivalent(r.to_prob_vector(), vec({"0.2", "0.5", "0.3"})));
}

TEST(Equivalence, Examples) {
  EXPECT_TRUE(permutation_equivalent(vec({"0.5", "0.25", "0.25"}), vec({"0.25", "0.5", "0.25"})));
  const auto u = vec({"1", "1", "1", "1"});
  const auto h = vec({"0.5", "0.125", "0.125", "0.125", "0.125"});
  EXPECT_FALSE(permutation_equivalent(u, h));
  EXPECT_FALSE(power_sums_agree(u, h));
  EXPECT_NEAR(shannon_entropy(u), shannon_entropy(h), 1e-12);
  EXPECT_EQ(beta_closed(u, 2), 0.25);
  EXPECT_EQ(beta_closed(h, 2), 0.3125);
  EXPECT_TRUE(permutation_equivalent(h, h));
}

TEST(Equivalence, PowerSumRouteAgrees) {
  gen::Rng rng(66);
  for (int i = 0; i < 300; ++i) {
    const int m = rng.between(1, 6);
    const auto p = gen::prob_vector(rng, m);
    ProbVector q = p;
    switch (rng.between(0, 3)) {
      case 0:
        q = p.permuted(gen::permutation(rng, m));
        break;
      case 1:
        q = gen::prob_vector(rng, m);
        break;
      case 2:
        q = gen::prob_vector(rng, rng.between(1, 6));
        break;
      default: {
        auto w = std::vector<double>(p.weights().begin(), p.weights().end());
        w[0] += 1e-3;
        q = ProbVector::from_weights(w).permuted(gen::permutation(rng, m));
      }
    }
    const bool verdict = permutation_equivalent(p, q);
    EXPECT_EQ(verdict, permutation_equivalent(q, p));
    EXPECT_EQ(verdict, power_sums_agree(p, q)) << "case " << i;
    EXPECT_TRUE(permutation_equivalent(p, p));
  }
}

}  // namespace
}  // namespace freeshift
