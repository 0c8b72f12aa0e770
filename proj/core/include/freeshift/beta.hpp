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

// The beta function β_p(t) = Σ P_i^t: closed form, the n-step growth rate
// (∫ exp((1-t) J(T^n)) dμ_p)^{1/n} evaluated exactly and by Monte Carlo,
// the single-coordinate pressure, and growth rates restricted to cylinders.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "freeshift/prob.hpp"

namespace freeshift {

// Σ P_i^t, summed smallest term first.
double beta_closed(const ProbVector& p, double t);

// n-th root of ∫ exp((1-t) Σ_{i<n} -ln P_{x_{a^i}}) dμ_p, accumulated one
// coordinate at a time in log space. Requires n >= 1.
double beta_limit_exact(const ProbVector& p, double t, int n);

struct MonteCarloEstimate {
  double estimate = 0.0;
  // Delta-method standard error of the n-th root.
  double std_error = 0.0;
  std::uint64_t samples = 0;
  int n = 0;
};

// Averages the same integrand over `samples` keyed draws of an n-block.
// Deterministic for fixed (seed, samples) whatever the worker count.
MonteCarloEstimate beta_limit_mc(const ProbVector& p, double t, int n, std::uint64_t samples,
                                 std::uint64_t seed, unsigned workers = 1);

// Pressure of f = -t I_{μ_p} under the shift: ln Σ P_i^t.
double pressure_single_coordinate(const ProbVector& p, double t);

// Which integrand the restricted growth rate uses.
enum class RestrictedReading {
  // exp((1-t) J(T^n)) over the window a^0..a^{n-1}; limit β(t).
  kLimitFormula,
  // exp(t J(T^-n)) over the window a^-1..a^-n; limit β(1+t).
  kLiteral,
};

// n-th root of the integral over the cylinder D ∩ a^n D. Keys of D must be
// powers a^k with |k| <= M, and n > 2M. Throws std::invalid_argument.
double restricted_growth_rate(const ProbVector& p, double t, const Pattern& d, int n,
                              int generator = 1,
                              RestrictedReading reading = RestrictedReading::kLimitFormula);

// The n → ∞ limit of restricted_growth_rate under the given reading.
double unrestricted_growth_rate(const ProbVector& p, double t,
                                RestrictedReading reading = RestrictedReading::kLimitFormula);

struct EntropyFromBeta {
  // -Σ P_i ln P_i.
  double analytic = 0.0;
  // -(β(1+h) - β(1-h)) / 2h.
  double finite_difference = 0.0;
  double step = 0.0;
};

EntropyFromBeta entropy_from_beta(const ProbVector& p, double step = 1e-5);

double shannon_entropy(const ProbVector& p);

struct BetaEvaluation {
  double t = 0.0;
  double closed_form = 0.0;
  std::vector<std::pair<int, double>> limit_exact;
  std::optional<MonteCarloEstimate> mc;
};

struct BetaMcRequest {
  int n = 8;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

BetaEvaluation evaluate_beta(const ProbVector& p, double t, std::span<const int> limit_ns,
                             const std::optional<BetaMcRequest>& mc = std::nullopt);

}  // namespace freeshift
