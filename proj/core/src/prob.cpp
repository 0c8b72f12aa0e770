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

#include "freeshift/prob.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace freeshift {
namespace {

// 64-bit finalizer from MurmurHash3.
constexpr std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

void check_symbol(const ProbVector& p, Symbol s) {
  if (!p.contains(s)) {
    throw std::out_of_range("symbol " + std::to_string(s) + " outside 1.." +
                            std::to_string(p.size()));
  }
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) fail();
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  boost::multiprecision::cpp_int digits = 0;
  long long scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') fail();
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    long long exponent = 0;
    bool any_exp = false;
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
      exponent = exponent * 10 + (text[i] - '0');
      any_exp = true;
      if (exponent > 100000) fail();
    }
    if (!any_exp) fail();
    scale += exp_negative ? -exponent : exponent;
  }
  Rational value(digits);
  boost::multiprecision::cpp_int power = boost::multiprecision::pow(
      boost::multiprecision::cpp_int(10), static_cast<unsigned>(std::llabs(scale)));
  value = scale >= 0 ? value * Rational(power) : value / Rational(power);
  return negative ? Rational(-value) : value;
}

ProbVector::ProbVector(std::vector<Rational> exact) {
  if (exact.empty()) throw std::invalid_argument("probability vector is empty");
  Rational total = 0;
  for (const auto& w : exact) {
    if (w <= 0) throw std::invalid_argument("probability weights must be strictly positive");
    total += w;
  }
  for (auto& w : exact) w /= total;
  exact_ = std::move(exact);
  weights_.reserve(exact_.size());
  for (const auto& w : exact_) weights_.push_back(static_cast<double>(w));
  for (double w : weights_) log_weights_.push_back(std::log(w));
  double running = 0.0;
  for (double w : weights_) {
    running += w;
    cdf_.push_back(running);
  }
  cdf_.back() = 1.0;
}

ProbVector ProbVector::from_decimal_strings(std::span<const std::string> weights) {
  std::vector<Rational> exact;
  exact.reserve(weights.size());
  for (const auto& w : weights) exact.push_back(parse_decimal(w));
  return ProbVector(std::move(exact));
}

ProbVector ProbVector::from_weights(std::span<const double> weights) {
  std::vector<Rational> exact;
  exact.reserve(weights.size());
  for (double w : weights) {
    if (!std::isfinite(w)) throw std::invalid_argument("probability weight is not finite");
    exact.emplace_back(w);
  }
  return ProbVector(std::move(exact));
}

ProbVector ProbVector::from_rationals(std::vector<Rational> weights) {
  return ProbVector(std::move(weights));
}

Symbol ProbVector::sample(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<Symbol>(it - cdf_.begin()) + 1;
}

ProbVector ProbVector::permuted(std::span<const Symbol> perm) const {
  if (perm.size() != size()) throw std::invalid_argument("permutation length mismatch");
  std::vector<bool> seen(size(), false);
  std::vector<Rational> out;
  out.reserve(size());
  for (Symbol s : perm) {
    if (!contains(s) || seen[index(s)]) {
      throw std::invalid_argument("not a permutation of 1..m");
    }
    seen[index(s)] = true;
    out.push_back(exact_prob(s));
  }
  return ProbVector(std::move(out));
}

std::optional<Symbol> Pattern::find(const GroupElement& g) const {
  auto it = assign_.find(g);
  if (it == assign_.end()) return std::nullopt;
  return it->second;
}

int Pattern::radius() const {
  int r = -1;
  for (const auto& [g, s] : assign_) r = std::max(r, static_cast<int>(g.length()));
  return r;
}

bool Pattern::compatible_with(const Pattern& other) const {
  const Pattern& small = size() <= other.size() ? *this : other;
  const Pattern& large = size() <= other.size() ? other : *this;
  for (const auto& [g, s] : small) {
    auto v = large.find(g);
    if (v && *v != s) return false;
  }
  return true;
}

std::optional<Pattern> Pattern::merge(const Pattern& lhs, const Pattern& rhs) {
  if (!lhs.compatible_with(rhs)) return std::nullopt;
  Pattern out = lhs;
  for (const auto& [g, s] : rhs) out.assign_.emplace(g, s);
  return out;
}

double cylinder_measure(const ProbVector& p, const Pattern& c) {
  double m = 1.0;
  for (const auto& [g, s] : c) {
    check_symbol(p, s);
    m *= p.prob(s);
  }
  return m;
}

Rational exact_cylinder_measure(const ProbVector& p, const Pattern& c) {
  Rational m = 1;
  for (const auto& [g, s] : c) {
    check_symbol(p, s);
    m *= p.exact_prob(s);
  }
  return m;
}

double conditional_cylinder_measure(const ProbVector& p, const Pattern& given,
                                    const Pattern& of) {
  double m = 1.0;
  for (const auto& [g, s] : of) {
    check_symbol(p, s);
    auto fixed = given.find(g);
    if (!fixed) {
      m *= p.prob(s);
    } else if (*fixed != s) {
      return 0.0;
    }
  }
  return m;
}

Rational exact_conditional_cylinder_measure(const ProbVector& p, const Pattern& given,
                                            const Pattern& of) {
  Rational m = 1;
  for (const auto& [g, s] : of) {
    check_symbol(p, s);
    auto fixed = given.find(g);
    if (!fixed) {
      m *= p.exact_prob(s);
    } else if (*fixed != s) {
      return 0;
    }
  }
  return m;
}

double coordinate_uniform(std::uint64_t seed, const GroupElement& g) {
  std::uint64_t h = fmix64(seed ^ kGolden);
  h = fmix64(h ^ (static_cast<std::uint64_t>(g.length()) * kGolden));
  for (Letter x : g.letters()) {
    h = fmix64(h + kGolden + static_cast<std::uint64_t>(static_cast<std::int64_t>(x)));
  }
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return fmix64(fmix64(base + kGolden) ^ (index * 0xbf58476d1ce4e5b9ULL + 1));
}

Configuration::Configuration(std::uint64_t seed, std::shared_ptr<const ProbVector> p,
                             Pattern overrides)
    : seed_(seed), p_(std::move(p)), overrides_(std::move(overrides)) {
  if (!p_) throw std::invalid_argument("configuration needs a probability vector");
  for (const auto& [g, s] : overrides_) check_symbol(*p_, s);
}

Configuration::Configuration(std::uint64_t seed, const ProbVector& p, Pattern overrides)
    : Configuration(seed, std::make_shared<const ProbVector>(p), std::move(overrides)) {}

Symbol Configuration::value_at(const GroupElement& g) const {
  if (views_.empty()) {
    if (auto forced = overrides_.find(g)) return *forced;
    return p_->sample(coordinate_uniform(seed_, g));
  }
  GroupElement h = g;
  for (auto it = views_.rbegin(); it != views_.rend(); ++it) h = (*it)->source(h);
  if (auto forced = overrides_.find(h)) return *forced;
  return p_->sample(coordinate_uniform(seed_, h));
}

Pattern Configuration::restrict_to(std::span<const GroupElement> coords) const {
  Pattern out;
  for (const auto& g : coords) out.set(g, value_at(g));
  return out;
}

Configuration Configuration::with_view(std::shared_ptr<const CoordinateMap> map) const {
  Configuration out = *this;
  out.views_.push_back(std::move(map));
  return out;
}

Configuration shift(const Configuration& x, const GroupElement& g) {
  if (g.is_identity()) return x;
  return x.with_view(std::make_shared<const TranslationMap>(g));
}

}  // namespace freeshift
