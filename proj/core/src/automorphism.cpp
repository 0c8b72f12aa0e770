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

#include "freeshift/automorphism.hpp"

#include <set>
#include <stdexcept>

namespace freeshift {
namespace {

class PermutationMap final : public CoordinateMap {
 public:
  explicit PermutationMap(LocalAutomorphism v) : v_(std::move(v)) {}
  GroupElement source(const GroupElement& g) const override { return v_.preimage(g); }

 private:
  LocalAutomorphism v_;
};

// Shortlex-ordered stream of W_a (or its complement) elements of length
// > outer, used as swap partners.
class PartnerStream {
 public:
  PartnerStream(int rank, int outer, int generator, bool want_wa, std::uint64_t cap)
      : rank_(rank), length_(outer), generator_(generator), want_wa_(want_wa), cap_(cap) {}

  GroupElement next() {
    while (pos_ >= shell_.size()) {
      ++length_;
      shell_ = sphere(rank_, length_, cap_);
      pos_ = 0;
      std::erase_if(shell_, [&](const GroupElement& g) { return in_wa(g, generator_) != want_wa_; });
    }
    return shell_[pos_++];
  }

 private:
  int rank_;
  int length_;
  int generator_;
  bool want_wa_;
  std::uint64_t cap_;
  std::vector<GroupElement> shell_;
  std::size_t pos_ = 0;
};

}  // namespace

LocalAutomorphism LocalAutomorphism::from_swaps(
    std::span<const std::pair<GroupElement, GroupElement>> swaps) {
  LocalAutomorphism v;
  std::set<GroupElement> used;
  for (const auto& [g, h] : swaps) {
    if (g == h) continue;
    if (!used.insert(g).second || !used.insert(h).second) {
      throw std::invalid_argument("swap lists " + to_string(g) + " or " + to_string(h) +
                                  " more than once");
    }
    v.forward_[g] = h;
    v.forward_[h] = g;
    v.backward_[g] = h;
    v.backward_[h] = g;
  }
  return v;
}

LocalAutomorphism LocalAutomorphism::from_mapping(
    const std::map<GroupElement, GroupElement>& image) {
  LocalAutomorphism v;
  for (const auto& [g, h] : image) {
    if (!image.contains(h)) {
      throw std::invalid_argument("mapping is not a bijection of its support: " +
                                  to_string(h) + " has no image");
    }
    if (!v.backward_.emplace(h, g).second) {
      throw std::invalid_argument("mapping is not injective at " + to_string(h));
    }
    if (g != h) v.forward_.emplace(g, h);
  }
  std::erase_if(v.backward_, [](const auto& kv) { return kv.first == kv.second; });
  return v;
}

GroupElement LocalAutomorphism::image(const GroupElement& g) const {
  auto it = forward_.find(g);
  return it == forward_.end() ? g : it->second;
}

GroupElement LocalAutomorphism::preimage(const GroupElement& g) const {
  auto it = backward_.find(g);
  return it == backward_.end() ? g : it->second;
}

std::vector<GroupElement> LocalAutomorphism::support() const {
  std::vector<GroupElement> out;
  out.reserve(forward_.size());
  for (const auto& [g, h] : forward_) out.push_back(g);
  return out;
}

std::vector<std::pair<GroupElement, GroupElement>> LocalAutomorphism::swaps() const {
  std::vector<std::pair<GroupElement, GroupElement>> out;
  for (const auto& [g, h] : forward_) {
    if (image(h) != g) throw std::logic_error("automorphism is not an involution");
    if (g < h) out.emplace_back(g, h);
  }
  return out;
}

LocalAutomorphism compose(const LocalAutomorphism& v, const LocalAutomorphism& w) {
  // (V W x)_g = (W x)_{π_V^-1 g} = x_{π_W^-1 π_V^-1 g}, so π_{VW} = π_V ∘ π_W.
  std::map<GroupElement, GroupElement> image;
  for (const auto& [g, h] : w.mapping()) image[g] = v.image(h);
  for (const auto& [g, h] : v.mapping()) {
    if (!image.contains(g)) image[g] = v.image(w.image(g));
  }
  return LocalAutomorphism::from_mapping(image);
}

LocalAutomorphism inverse(const LocalAutomorphism& v) {
  std::map<GroupElement, GroupElement> image;
  for (const auto& [g, h] : v.mapping()) image[h] = g;
  return LocalAutomorphism::from_mapping(image);
}

Configuration act(const LocalAutomorphism& v, const Configuration& x) {
  if (v.is_identity()) return x;
  return x.with_view(std::make_shared<const PermutationMap>(v));
}

bool in_lpa(const LocalAutomorphism& v, int generator) {
  for (const auto& [g, h] : v.mapping()) {
    if (in_wa(g, generator) && !is_power_of(g, generator)) return false;
  }
  return true;
}

bool in_hc_plus(const LocalAutomorphism& v, int inner_radius, int generator) {
  for (const auto& [g, h] : v.mapping()) {
    if (static_cast<int>(g.length()) <= inner_radius || !in_wa(g, generator)) return false;
  }
  return true;
}

bool in_hc_minus(const LocalAutomorphism& v, int inner_radius, int generator) {
  for (const auto& [g, h] : v.mapping()) {
    if (static_cast<int>(g.length()) <= inner_radius || in_wa(g, generator)) return false;
  }
  return true;
}

WeakMixPair build_weakmix_pair(int rank, int inner_radius, int outer_radius, int generator,
                               std::uint64_t cap) {
  if (inner_radius < 0 || outer_radius <= inner_radius) {
    throw std::invalid_argument("need outer radius > inner radius >= 0");
  }
  if (generator < 1 || generator > rank) {
    throw std::invalid_argument("distinguished generator out of range");
  }
  const auto region = ball(rank, outer_radius, cap).elements;
  auto build = [&](bool want_wa) {
    PartnerStream partners(rank, outer_radius, generator, want_wa, cap);
    std::vector<std::pair<GroupElement, GroupElement>> swaps;
    for (const auto& g : region) {
      if (static_cast<int>(g.length()) <= inner_radius) continue;
      if (in_wa(g, generator) != want_wa) continue;
      swaps.emplace_back(g, partners.next());
    }
    return LocalAutomorphism::from_swaps(swaps);
  };
  return {build(true), build(false)};
}

Pattern transport(const LocalAutomorphism& h, const Pattern& c) {
  Pattern out;
  for (const auto& [g, s] : c) out.set(h.image(g), s);
  return out;
}

ProductMeasureCheck product_measure_check(const ProbVector& p, const LocalAutomorphism& h,
                                          const Pattern& cj, const Pattern& ck,
                                          const Pattern& base) {
  for (const auto& [g, s] : base) {
    if (cj.find(g) != s || ck.find(g) != s) {
      throw std::invalid_argument("cylinders must refine the base cylinder at " +
                                  to_string(g));
    }
    if (h.image(g) != g) {
      throw std::invalid_argument("automorphism moves base coordinate " + to_string(g));
    }
  }
  for (const auto& [g, s] : cj) {
    if (base.contains(g)) continue;
    if (ck.contains(h.image(g))) {
      throw std::invalid_argument("h carries " + to_string(g) + " onto a key of C_k");
    }
  }
  const Rational base_measure = exact_cylinder_measure(p, base);
  const Pattern moved = transport(h, cj);
  const auto meet = Pattern::merge(moved, ck);
  ProductMeasureCheck out;
  out.lhs = meet ? Rational(exact_cylinder_measure(p, *meet) / base_measure) : Rational(0);
  out.rhs = (exact_cylinder_measure(p, cj) / base_measure) *
            (exact_cylinder_measure(p, ck) / base_measure);
  return out;
}

}  // namespace freeshift
