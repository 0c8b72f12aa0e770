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

// Seeded random instances for the verification subcommands. Draws use
// mt19937_64 with modulo reduction, so streams are identical on every
// platform.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "freeshift/automorphism.hpp"
#include "freeshift/cocycle.hpp"
#include "freeshift/prob.hpp"

namespace freeshift {

class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  // Uniform in [lo, hi].
  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// A strictly positive vector of length m with weights in [0.05, 1).
ProbVector random_prob_vector(InstanceRng& rng, int m);

// Up to `swaps` disjoint transpositions drawn from elements of B(radius)
// that lie off W_a or on the a-line, plus a^k for |k| <= line_reach. The
// result is in L_{p,a}.
LocalAutomorphism random_lpa_swaps(InstanceRng& rng, int rank, int generator, int swaps,
                                   int radius, int line_reach);

// T^n with |n| <= max_shift, an L_{p,a} swap map, or the composition of
// one of each in random order.
Transformation random_transformation(InstanceRng& rng, int rank, int generator, int max_shift);

// base plus random symbols on a random subset of B(outer) \ B(inner).
Pattern random_refinement(InstanceRng& rng, const Pattern& base, int rank, int inner,
                          int outer, int alphabet);

// Random symbols on all of B(radius).
Pattern random_full_pattern(InstanceRng& rng, int rank, int radius, int alphabet);

}  // namespace freeshift
