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

// Bernoulli measures on X_p = {1..m}^{F_l}: probability vectors, cylinder
// patterns with exact measures, and lazily sampled configurations.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "freeshift/free_group.hpp"

namespace freeshift {

// Symbols are 1-based: 1..m.
using Symbol = int;
using Rational = boost::multiprecision::cpp_rational;

// A strictly positive probability vector. Weights are normalized on
// construction; the exact rational form is kept alongside the doubles.
class ProbVector {
 public:
  // Decimal literals such as "0.3" are read exactly (3/10) before
  // normalization. Throws std::invalid_argument.
  static ProbVector from_decimal_strings(std::span<const std::string> weights);
  // Each double is taken at its exact binary value.
  static ProbVector from_weights(std::span<const double> weights);
  static ProbVector from_rationals(std::vector<Rational> weights);

  std::size_t size() const { return weights_.size(); }
  double prob(Symbol s) const { return weights_.at(index(s)); }
  double log_prob(Symbol s) const { return log_weights_.at(index(s)); }
  const Rational& exact_prob(Symbol s) const { return exact_.at(index(s)); }
  std::span<const double> weights() const { return weights_; }
  std::span<const Rational> exact_weights() const { return exact_; }

  // Inverse CDF: the symbol whose cumulative interval contains u in [0, 1).
  Symbol sample(double u) const;
  bool contains(Symbol s) const {
    return s >= 1 && static_cast<std::size_t>(s) <= weights_.size();
  }

  // Entries rearranged as perm: result[i] = this[perm[i]] (1-based perm).
  ProbVector permuted(std::span<const Symbol> perm) const;

 private:
  explicit ProbVector(std::vector<Rational> exact);
  std::size_t index(Symbol s) const { return static_cast<std::size_t>(s - 1); }

  std::vector<Rational> exact_;
  std::vector<double> weights_;
  std::vector<double> log_weights_;
  std::vector<double> cdf_;
};

// Exact decimal parse; accepts forms like "0.25", "1e-3", "3/8".
Rational parse_decimal(std::string_view text);

// A finite partial configuration [i_g | g ∈ A], keys in shortlex order.
class Pattern {
 public:
  using Map = std::map<GroupElement, Symbol>;

  Pattern() = default;
  explicit Pattern(Map assignments) : assign_(std::move(assignments)) {}

  void set(const GroupElement& g, Symbol s) { assign_[g] = s; }
  std::optional<Symbol> find(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return assign_.contains(g); }
  std::size_t size() const { return assign_.size(); }
  bool empty() const { return assign_.empty(); }
  const Map& assignments() const { return assign_; }
  auto begin() const { return assign_.begin(); }
  auto end() const { return assign_.end(); }

  // Largest word length among keys, -1 for the empty pattern.
  int radius() const;
  // True iff the two patterns agree wherever both are defined.
  bool compatible_with(const Pattern& other) const;
  // Union of assignments, or nullopt when the patterns contradict.
  static std::optional<Pattern> merge(const Pattern& lhs, const Pattern& rhs);

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  Map assign_;
};

// Throws std::out_of_range if any symbol is outside 1..m.
double cylinder_measure(const ProbVector& p, const Pattern& c);
Rational exact_cylinder_measure(const ProbVector& p, const Pattern& c);

// μ(of | given) for cylinders: the product of P over keys of `of` not fixed by
// `given`; 0 when the patterns contradict.
double conditional_cylinder_measure(const ProbVector& p, const Pattern& given,
                                    const Pattern& of);
Rational exact_conditional_cylinder_measure(const ProbVector& p,
                                            const Pattern& given,
                                            const Pattern& of);

// ---------------------------------------------------------------------------
// Configurations.

// A coordinate re-indexing: the view's value at g is the inner value at
// source(g).
class CoordinateMap {
 public:
  virtual ~CoordinateMap() = default;
  virtual GroupElement source(const GroupElement& g) const = 0;
};

// Coordinate map of the shift by g: h ↦ g^-1 h, so that (g x)_h = x_{g^-1 h}.
class TranslationMap final : public CoordinateMap {
 public:
  explicit TranslationMap(const GroupElement& g) : left_(inverse(g)) {}
  GroupElement source(const GroupElement& h) const override { return left_ * h; }

 private:
  GroupElement left_;
};

// Keyed, stateless uniform in [0, 1) for coordinate g of the point `seed`.
double coordinate_uniform(std::uint64_t seed, const GroupElement& g);
// Derives the seed of the index-th Monte Carlo sample from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// A point of X_p evaluated lazily: each coordinate is the inverse CDF of a
// keyed hash of (seed, g), optionally overridden on finitely many coordinates,
// then re-indexed by a chain of coordinate maps (shifts, permutations).
class Configuration {
 public:
  Configuration(std::uint64_t seed, std::shared_ptr<const ProbVector> p,
                Pattern overrides = {});
  Configuration(std::uint64_t seed, const ProbVector& p, Pattern overrides = {});

  Symbol value_at(const GroupElement& g) const;
  // Restriction to the given coordinates.
  Pattern restrict_to(std::span<const GroupElement> coords) const;

  // The view y with y_g = value_at(map.source(g)).
  Configuration with_view(std::shared_ptr<const CoordinateMap> map) const;

  std::uint64_t seed() const { return seed_; }
  const ProbVector& vector() const { return *p_; }
  const std::shared_ptr<const ProbVector>& shared_vector() const { return p_; }
  const Pattern& overrides() const { return overrides_; }

 private:
  std::uint64_t seed_;
  std::shared_ptr<const ProbVector> p_;
  Pattern overrides_;
  // Outermost view last.
  std::vector<std::shared_ptr<const CoordinateMap>> views_;
};

inline Symbol value_at(const Configuration& x, const GroupElement& g) {
  return x.value_at(g);
}

// The shifted point g·x with (g x)_h = x_{g^-1 h}.
Configuration shift(const Configuration& x, const GroupElement& g);

}  // namespace freeshift
