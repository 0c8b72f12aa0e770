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

// Locally finite automorphisms of X_p realized as finitely supported
// coordinate permutations, plus the swap maps h+ / h- that witness weak mixing
// of the conditioned action on a cylinder.

#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "freeshift/free_group.hpp"
#include "freeshift/prob.hpp"

namespace freeshift {

// (V x)_g = x_{π^-1(g)} for a bijection π of F_l that moves finitely many
// elements. Only moved elements are stored.
class LocalAutomorphism {
 public:
  LocalAutomorphism() = default;

  // Disjoint transpositions. Throws std::invalid_argument if an element
  // appears twice.
  static LocalAutomorphism from_swaps(
      std::span<const std::pair<GroupElement, GroupElement>> swaps);
  // g ↦ image[g]; must be a bijection of its key set.
  static LocalAutomorphism from_mapping(const std::map<GroupElement, GroupElement>& image);

  // π(g) and π^-1(g).
  GroupElement image(const GroupElement& g) const;
  GroupElement preimage(const GroupElement& g) const;

  // Elements with π(g) != g, shortlex sorted.
  std::vector<GroupElement> support() const;
  bool is_identity() const { return forward_.empty(); }
  const std::map<GroupElement, GroupElement>& mapping() const { return forward_; }
  // The 2-cycles of an involution. Throws std::logic_error otherwise.
  std::vector<std::pair<GroupElement, GroupElement>> swaps() const;

  friend bool operator==(const LocalAutomorphism&, const LocalAutomorphism&) = default;

 private:
  std::map<GroupElement, GroupElement> forward_;
  std::map<GroupElement, GroupElement> backward_;
};

// V ∘ W: apply W first.
LocalAutomorphism compose(const LocalAutomorphism& v, const LocalAutomorphism& w);
LocalAutomorphism inverse(const LocalAutomorphism& v);

// The configuration V x.
Configuration act(const LocalAutomorphism& v, const Configuration& x);

// V ∈ L_{p,a}: every moved element lies off W_a or on the line {a^k}.
bool in_lpa(const LocalAutomorphism& v, int generator = 1);
// V fixes B(N) and F_l \ W_a pointwise.
bool in_hc_plus(const LocalAutomorphism& v, int inner_radius, int generator = 1);
// V fixes B(N) and W_a pointwise.
bool in_hc_minus(const LocalAutomorphism& v, int inner_radius, int generator = 1);

struct WeakMixPair {
  LocalAutomorphism plus;
  LocalAutomorphism minus;
};

// h+ swaps each g ∈ (B(B') \ B(N)) ∩ W_a with a distinct partner in
// W_a \ B(B') (shortlex-smallest unused); h- does the same on the complement
// of W_a. Requires outer_radius > inner_radius >= 0.
WeakMixPair build_weakmix_pair(int rank, int inner_radius, int outer_radius,
                               int generator = 1,
                               std::uint64_t cap = kDefaultCardinalityCap);

struct ProductMeasureCheck {
  // μ_C(h C_j ∩ C_k)
  Rational lhs;
  // μ_C(C_j) μ_C(C_k)
  Rational rhs;
  bool equal() const { return lhs == rhs; }
};

// Exact conditional measures on the base cylinder `base`. The cylinders must
// refine `base`, h must fix every key of `base`, and h must carry the keys of
// `cj` outside `base` off the keys of `ck`; violations throw
// std::invalid_argument.
ProductMeasureCheck product_measure_check(const ProbVector& p, const LocalAutomorphism& h,
                                          const Pattern& cj, const Pattern& ck,
                                          const Pattern& base);

// The cylinder h C = {h x : x ∈ C}: the assignment g ↦ s moves to π(g) ↦ s.
Pattern transport(const LocalAutomorphism& h, const Pattern& c);

}  // namespace freeshift
