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

// The information cocycle J(A, ·) of the past algebra A = σ(x_g : g ∈ W_a).
//
// Shift convention: T is the shift by a^-1, so (T^n x)_g = x_{a^n g}. Every
// transformation here is a coordinate re-indexing (U x)_g = x_{σ(g)}, which
// preserves μ_p, so J(U) reduces to the information of the coordinates that
// σ moves into or out of W_a.

#pragma once

#include <cstdint>
#include <memory>

#include "freeshift/automorphism.hpp"
#include "freeshift/free_group.hpp"
#include "freeshift/prob.hpp"

namespace freeshift {

struct CocycleContext {
  std::shared_ptr<const ProbVector> vector;
  int generator = 1;

  CocycleContext(std::shared_ptr<const ProbVector> p, int a = 1);
  CocycleContext(const ProbVector& p, int a = 1);
};

// Conditional information -ln μ(of | given). Contradictory cylinders give an
// infinite value; reading it through finite() throws.
class Information {
 public:
  static Information finite_value(double v) { return Information(v, false); }
  static Information infinite() { return Information(0.0, true); }

  bool is_infinite() const { return infinite_; }
  // Throws std::domain_error when infinite.
  double finite() const;

  friend Information operator+(Information lhs, Information rhs) {
    if (lhs.infinite_ || rhs.infinite_) return infinite();
    return finite_value(lhs.value_ + rhs.value_);
  }

 private:
  Information(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

Information conditional_information(const CocycleContext& ctx, const Pattern& given,
                                    const Pattern& of);

// J(A, T^n)(x): Σ_{i<n} -ln P_{x_{a^i}} for n >= 0 and
// Σ_{i=1}^{|n|} ln P_{x_{a^-i}} for n < 0.
double j_shift(const CocycleContext& ctx, const Configuration& x, int n);

// J(A, V)(x) = Σ_{g ∈ W_a} ln(P_{(Vx)_g} / P_{x_g}). Throws
// std::invalid_argument unless V ∈ L_{p,a}.
double j_local(const CocycleContext& ctx, const Configuration& x, const LocalAutomorphism& v);

// σ(g) = π(a^s g): a shift power followed by a finitely supported
// re-indexing. Shift powers and local automorphisms generate these under
// composition.
class Transformation {
 public:
  Transformation() = default;

  // T^n.
  static Transformation shift_power(int n, int generator = 1);
  // The local automorphism V, i.e. σ = π_V^-1.
  static Transformation local(const LocalAutomorphism& v, int generator = 1);
  // σ(g) = reindex.image(a^shift g).
  static Transformation from_parts(int shift, LocalAutomorphism reindex, int generator = 1);

  int shift() const { return shift_; }
  int generator() const { return generator_; }
  const LocalAutomorphism& reindex() const { return pi_; }
  bool is_shift() const { return pi_.is_identity(); }
  bool is_local() const { return shift_ == 0; }

  GroupElement sigma(const GroupElement& g) const;
  GroupElement sigma_inverse(const GroupElement& u) const;

  // U x.
  Configuration apply(const Configuration& x) const;

  friend bool operator==(const Transformation&, const Transformation&) = default;

 private:
  int shift_ = 0;
  int generator_ = 1;
  LocalAutomorphism pi_;
};

// U ∘ W: W is applied first. Both must share a generator.
Transformation compose(const Transformation& u, const Transformation& w);
Transformation inverse(const Transformation& u);

// J through the symmetric difference of σ(W_a) and W_a:
// Σ_{u ∈ σ(W_a) \ W_a} ln P_{x_u} - Σ_{u ∈ W_a \ σ(W_a)} ln P_{x_u}.
double general_cocycle(const CocycleContext& ctx, const Transformation& u,
                       const Configuration& x);

// Closed forms where they apply (pure shift powers, local automorphisms in
// L_{p,a}); the general route otherwise.
double information_cocycle(const CocycleContext& ctx, const Transformation& u,
                           const Configuration& x);

struct CocycleDefect {
  double max_defect = 0.0;
  std::uint64_t trials = 0;
};

// max over sampled x of |J(U W)(x) - J(U)(W x) - J(W)(x)|.
CocycleDefect check_cocycle_identity(const CocycleContext& ctx, const Transformation& u,
                                     const Transformation& w, std::uint64_t seed,
                                     std::uint64_t trials);

// J(V)(x) rebuilt from shift cocycles alone:
// J(V)(x) = -J(T^n)(V x) - J(T^-n)(T^n x), valid once the conjugate
// T^n V T^-n is supported off W_a.
struct StarDecomposition {
  int n = 0;
  double direct = 0.0;
  double via_shifts = 0.0;
  // J of the conjugate through the general route; zero when n is large enough.
  double conjugate = 0.0;
};

// Uses n = 1 + max |k| over powers a^k moved by V unless n_override > 0.
// Throws std::invalid_argument unless V ∈ L_{p,a}.
StarDecomposition star_decomposition(const CocycleContext& ctx, const Configuration& x,
                                     const LocalAutomorphism& v, int n_override = 0);

}  // namespace freeshift
