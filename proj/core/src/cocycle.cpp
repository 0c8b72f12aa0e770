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

#include "freeshift/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace freeshift {
namespace {

class SigmaMap final : public CoordinateMap {
 public:
  explicit SigmaMap(Transformation u) : u_(std::move(u)) {}
  GroupElement source(const GroupElement& g) const override { return u_.sigma(g); }

 private:
  Transformation u_;
};

GroupElement line(int generator, int k) { return GroupElement::generator_power(generator, k); }

// h ↦ a^s π(a^-s h).
LocalAutomorphism conjugate(const LocalAutomorphism& pi, int generator, int s) {
  if (s == 0 || pi.is_identity()) return pi;
  const GroupElement as = line(generator, s);
  std::map<GroupElement, GroupElement> image;
  for (const auto& [g, h] : pi.mapping()) image[as * g] = as * h;
  return LocalAutomorphism::from_mapping(image);
}

void require_lpa(const CocycleContext& ctx, const LocalAutomorphism& v) {
  if (!in_lpa(v, ctx.generator)) {
    throw std::invalid_argument("automorphism moves a coordinate of W_a off the a-line");
  }
}

}  // namespace

CocycleContext::CocycleContext(std::shared_ptr<const ProbVector> p, int a)
    : vector(std::move(p)), generator(a) {
  if (!vector) throw std::invalid_argument("cocycle context needs a probability vector");
  if (generator < 1) throw std::invalid_argument("generator index must be >= 1");
}

CocycleContext::CocycleContext(const ProbVector& p, int a)
    : CocycleContext(std::make_shared<const ProbVector>(p), a) {}

double Information::finite() const {
  if (infinite_) throw std::domain_error("information is infinite (contradictory cylinders)");
  return value_;
}

Information conditional_information(const CocycleContext& ctx, const Pattern& given,
                                    const Pattern& of) {
  if (!given.compatible_with(of)) return Information::infinite();
  double sum = 0.0;
  for (const auto& [g, s] : of) {
    if (given.contains(g)) continue;
    sum -= ctx.vector->log_prob(s);
  }
  return Information::finite_value(sum);
}

double j_shift(const CocycleContext& ctx, const Configuration& x, int n) {
  const ProbVector& p = *ctx.vector;
  double sum = 0.0;
  if (n >= 0) {
    for (int i = 0; i < n; ++i) sum -= p.log_prob(x.value_at(line(ctx.generator, i)));
  } else {
    for (int i = 1; i <= -n; ++i) sum += p.log_prob(x.value_at(line(ctx.generator, -i)));
  }
  return sum;
}

double j_local(const CocycleContext& ctx, const Configuration& x, const LocalAutomorphism& v) {
  require_lpa(ctx, v);
  const ProbVector& p = *ctx.vector;
  double sum = 0.0;
  for (const auto& [g, h] : v.mapping()) {
    if (!in_wa(g, ctx.generator)) continue;
    sum += p.log_prob(x.value_at(v.preimage(g))) - p.log_prob(x.value_at(g));
  }
  return sum;
}

Transformation Transformation::shift_power(int n, int generator) {
  Transformation u;
  u.shift_ = n;
  u.generator_ = generator;
  return u;
}

Transformation Transformation::local(const LocalAutomorphism& v, int generator) {
  Transformation u;
  u.generator_ = generator;
  u.pi_ = inverse(v);
  return u;
}

GroupElement Transformation::sigma(const GroupElement& g) const {
  return pi_.image(line(generator_, shift_) * g);
}

GroupElement Transformation::sigma_inverse(const GroupElement& u) const {
  return line(generator_, -shift_) * pi_.preimage(u);
}

Configuration Transformation::apply(const Configuration& x) const {
  if (shift_ == 0 && pi_.is_identity()) return x;
  return x.with_view(std::make_shared<const SigmaMap>(*this));
}


Transformation Transformation::from_parts(int shift, LocalAutomorphism reindex, int generator) {
  Transformation u;
  u.shift_ = shift;
  u.generator_ = generator;
  u.pi_ = std::move(reindex);
  return u;
}

Transformation compose(const Transformation& u, const Transformation& w) {
  if (u.generator() != w.generator()) {
    throw std::invalid_argument("transformations use different generators");
  }
  // σ_{UW}(g) = σ_W(σ_U(g)) = π_W(a^{s_W} π_U(a^{s_U} g)).
  const int a = u.generator();
  return Transformation::from_parts(
      u.shift() + w.shift(), compose(w.reindex(), conjugate(u.reindex(), a, w.shift())), a);
}

Transformation inverse(const Transformation& u) {
  const int a = u.generator();
  return Transformation::from_parts(-u.shift(), conjugate(inverse(u.reindex()), a, -u.shift()),
                                    a);
}

double general_cocycle(const CocycleContext& ctx, const Transformation& u,
                       const Configuration& x) {
  if (u.generator() != ctx.generator) {
    throw std::invalid_argument("transformation and context use different generators");
  }
  // Off the support of π, σ^-1(v) = a^-s v, which only differs from v in
  // W_a-membership on the segment of the a-line between e and a^s.
  std::set<GroupElement> candidates;
  for (const auto& [g, h] : u.reindex().mapping()) candidates.insert(g);
  const int s = u.shift();
  for (int i = 0; i < s; ++i) candidates.insert(line(ctx.generator, i));
  for (int i = 1; i <= -s; ++i) candidates.insert(line(ctx.generator, -i));

  const ProbVector& p = *ctx.vector;
  double gained = 0.0;
  double lost = 0.0;
  for (const auto& v : candidates) {
    const bool in_image = in_wa(u.sigma_inverse(v), ctx.generator);
    const bool in_past = in_wa(v, ctx.generator);
    if (in_image == in_past) continue;
    const double lp = p.log_prob(x.value_at(v));
    if (in_image) {
      gained += lp;
    } else {
      lost += lp;
    }
  }
  return gained - lost;
}

double information_cocycle(const CocycleContext& ctx, const Transformation& u,
                           const Configuration& x) {
  if (u.is_shift() && u.generator() == ctx.generator) return j_shift(ctx, x, u.shift());
  if (u.is_local()) {
    const LocalAutomorphism v = inverse(u.reindex());
    if (in_lpa(v, ctx.generator)) return j_local(ctx, x, v);
  }
  return general_cocycle(ctx, u, x);
}

CocycleDefect check_cocycle_identity(const CocycleContext& ctx, const Transformation& u,
                                     const Transformation& w, std::uint64_t seed,
                                     std::uint64_t trials) {
  const Transformation uw = compose(u, w);
  CocycleDefect out;
  out.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Configuration x(derive_seed(seed, i), ctx.vector);
    const double lhs = information_cocycle(ctx, uw, x);
    const double rhs = information_cocycle(ctx, u, w.apply(x)) + information_cocycle(ctx, w, x);
    out.max_defect = std::max(out.max_defect, std::abs(lhs - rhs));
  }
  return out;
}

StarDecomposition star_decomposition(const CocycleContext& ctx, const Configuration& x,
                                     const LocalAutomorphism& v, int n_override) {
  require_lpa(ctx, v);
  int n = n_override;
  if (n <= 0) {
    int reach = 0;
    for (const auto& [g, h] : v.mapping()) {
      if (is_power_of(g, ctx.generator)) {
        reach = std::max(reach, static_cast<int>(g.length()));
      }
    }
    n = reach + 1;
  }
  const int a = ctx.generator;
  const Transformation tn = Transformation::shift_power(n, a);
  const Transformation conj =
      compose(tn, compose(Transformation::local(v, a), Transformation::shift_power(-n, a)));

  StarDecomposition out;
  out.n = n;
  out.direct = j_local(ctx, x, v);
  out.via_shifts = -j_shift(ctx, act(v, x), n) - j_shift(ctx, tn.apply(x), -n);
  out.conjugate = general_cocycle(ctx, conj, tn.apply(x));
  return out;
}

}  // namespace freeshift
