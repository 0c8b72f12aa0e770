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


// Seeded generators for property tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "freeshift/free_group.hpp"
#include "freeshift/prob.hpp"
#include "oracles.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  bool coin() { return between(0, 1) == 1; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// An unreduced letter sequence.
inline oracle::Word letters(Rng& rng, int rank, int max_len) {
  oracle::Word w(static_cast<std::size_t>(rng.between(0, max_len)));
  for (int& x : w) x = rng.between(1, rank) * (rng.coin() ? 1 : -1);
  return w;
}

inline freeshift::GroupElement element(Rng& rng, int rank, int max_len) {
  const auto w = letters(rng, rank, max_len);
  return freeshift::GroupElement::from_letters(w);
}

inline std::vector<double> weights(Rng& rng, int m) {
  std::vector<double> w(static_cast<std::size_t>(m));
  for (double& x : w) x = rng.uniform(0.02, 1.0);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= s;
  return w;
}

inline freeshift::ProbVector prob_vector(Rng& rng, int m) {
  const auto w = weights(rng, m);
  return freeshift::ProbVector::from_weights(w);
}

// Integer weights drawn from a small pool so entries repeat often.
inline freeshift::ProbVector repeated_vector(Rng& rng, int m) {
  const int pool = rng.between(1, std::max(1, m / 2));
  std::vector<int> levels(static_cast<std::size_t>(pool));
  for (int& v : levels) v = rng.between(1, 9);
  std::vector<freeshift::Rational> w;
  for (int i = 0; i < m; ++i) w.emplace_back(levels[static_cast<std::size_t>(rng.between(0, pool - 1))]);
  return freeshift::ProbVector::from_rationals(std::move(w));
}

// 1-based permutation of 1..m.
inline std::vector<freeshift::Symbol> permutation(Rng& rng, int m) {
  std::vector<freeshift::Symbol> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  return perm;
}

inline oracle::Word word_of(const freeshift::GroupElement& g) {
  return oracle::Word(g.letters().begin(), g.letters().end());
}

inline freeshift::GroupElement element_of(const oracle::Word& w) {
  return freeshift::GroupElement::from_letters(w);
}

}  // namespace gen
