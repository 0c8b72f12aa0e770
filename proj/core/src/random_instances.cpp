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

#include "freeshift/random_instances.hpp"

#include <algorithm>
#include <stdexcept>

namespace freeshift {

ProbVector random_prob_vector(InstanceRng& rng, int m) {
  if (m < 1) throw std::invalid_argument("alphabet size must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(m));
  for (auto& v : w) v = 0.05 + 0.95 * rng.unit();
  return ProbVector::from_weights(w);
}

LocalAutomorphism random_lpa_swaps(InstanceRng& rng, int rank, int generator, int swaps,
                                   int radius, int line_reach) {
  std::vector<GroupElement> pool;
  for (const auto& g : ball(rank, radius).elements) {
    if (!in_wa(g, generator) || is_power_of(g, generator)) pool.push_back(g);
  }
  for (int k = -line_reach; k <= line_reach; ++k) {
    const GroupElement g = GroupElement::generator_power(generator, k);
    if (std::find(pool.begin(), pool.end(), g) == pool.end()) pool.push_back(g);
  }
  std::vector<std::pair<GroupElement, GroupElement>> out;
  for (int i = 0; i < swaps && pool.size() >= 2; ++i) {
    const std::size_t a = rng.below(pool.size());
    GroupElement g = pool[a];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(a));
    const std::size_t b = rng.below(pool.size());
    GroupElement h = pool[b];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(b));
    out.emplace_back(std::move(g), std::move(h));
  }
  return LocalAutomorphism::from_swaps(out);
}

Transformation random_transformation(InstanceRng& rng, int rank, int generator, int max_shift) {
  auto shift = [&] {
    return Transformation::shift_power(rng.between(-max_shift, max_shift), generator);
  };
  auto local = [&] {
    return Transformation::local(
        random_lpa_swaps(rng, rank, generator, rng.between(1, 3), 2, 4), generator);
  };
  switch (rng.below(4)) {
    case 0:
      return shift();
    case 1:
      return local();
    case 2: {
      const Transformation s = shift();
      return compose(s, local());
    }
    default: {
      const Transformation v = local();
      return compose(v, shift());
    }
  }
}

Pattern random_refinement(InstanceRng& rng, const Pattern& base, int rank, int inner,
                          int outer, int alphabet) {
  Pattern out = base;
  for (const auto& g : ball(rank, outer).elements) {
    if (static_cast<int>(g.length()) <= inner) continue;
    if (rng.below(2) == 0) continue;
    out.set(g, static_cast<Symbol>(1 + rng.below(static_cast<std::uint64_t>(alphabet))));
  }
  return out;
}

Pattern random_full_pattern(InstanceRng& rng, int rank, int radius, int alphabet) {
  Pattern out;
  for (const auto& g : ball(rank, radius).elements) {
    out.set(g, static_cast<Symbol>(1 + rng.below(static_cast<std::uint64_t>(alphabet))));
  }
  return out;
}

}  // namespace freeshift
