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

// Recovering a probability vector, up to order, from its power sums
// p_k = Σ P_i^k via Newton's identities and simultaneous root iteration.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "freeshift/prob.hpp"

namespace freeshift {

class RecoveryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// p_1..p_K, kept exactly.
class PowerSums {
 public:
  PowerSums() = default;
  explicit PowerSums(std::vector<Rational> values);
  // Each double is taken at its exact binary value.
  static PowerSums from_doubles(std::span<const double> values);

  std::size_t size() const { return exact_.size(); }
  // 1-based: p_k.
  const Rational& exact(std::size_t k) const { return exact_.at(k - 1); }
  double value(std::size_t k) const;
  std::span<const Rational> exact_values() const { return exact_; }
  std::vector<double> values() const;

 private:
  std::vector<Rational> exact_;
};

// p_k = Σ P_i^k for k = 1..K, in exact arithmetic. Requires K >= 1.
PowerSums power_sums(const ProbVector& p, std::size_t k_max);

// e_0 = 1, e_1..e_m from e_k = (1/k) Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i.
// Throws std::invalid_argument if fewer than m power sums are given.
std::vector<Rational> newton_to_elementary(const PowerSums& ps, std::size_t m);

struct RecoveredVector {
  // Sorted descending.
  std::vector<double> entries;
  int iterations = 0;
  // The strict tolerance was not reached and the near-coincident roots were
  // averaged.
  bool clustered = false;

  ProbVector to_prob_vector() const { return ProbVector::from_weights(entries); }
};

// Roots of Σ_k (-1)^k e_k x^{m-k}. Roots must come out real, positive and
// summing to 1; otherwise RecoveryError ("inconsistent power sums"), as is
// failure to converge within 500 sweeps.
RecoveredVector recover_vector(const PowerSums& ps, std::size_t m);

// Same length and sorted entries within tol componentwise.
bool permutation_equivalent(const ProbVector& p, const ProbVector& q, double tol = 1e-10);

// p_k = q_k within tol for k = 1..max(m, n).
bool power_sums_agree(const ProbVector& p, const ProbVector& q, double tol = 1e-10);

}  // namespace freeshift
