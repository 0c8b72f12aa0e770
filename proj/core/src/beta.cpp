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

#include "freeshift/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "parallel.hpp"

namespace freeshift {
namespace {

double log_sum_exp(std::vector<double> terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  std::sort(terms.begin(), terms.end());
  const double top = terms.back();
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double v : terms) sum += std::exp(v - top);
  return top + std::log(sum);
}

// The closed form, the limit formula and the restricted rate work at 50
// digits and round once, so they agree to the last bit of a double however
// large β gets.
using Wide = boost::multiprecision::cpp_bin_float_50;

std::vector<Wide> wide_weights(const ProbVector& p) {
  std::vector<Wide> out;
  out.reserve(p.size());
  for (const auto& r : p.exact_weights()) {
    out.push_back(Wide(boost::multiprecision::numerator(r)) /
                  Wide(boost::multiprecision::denominator(r)));
  }
  return out;
}

// ln Σ_i P_i exp(s (-ln P_i)) = ln β(1 - s).
Wide log_step(const std::vector<Wide>& weights, const Wide& s) {
  std::vector<Wide> terms;
  terms.reserve(weights.size());
  for (const Wide& w : weights) {
    const Wide lp = boost::multiprecision::log(w);
    terms.push_back(lp - s * lp);
  }
  const Wide top = *std::max_element(terms.begin(), terms.end());
  Wide inner = 0;
  for (const Wide& v : terms) inner += boost::multiprecision::exp(v - top);
  return top + boost::multiprecision::log(inner);
}

// ln of the integral over `count` free coordinates, one coordinate per step.
Wide free_block(const Wide& step, int count) {
  Wide acc = 0;
  for (int i = 0; i < count; ++i) acc += step;
  return acc;
}

void require_positive_n(int n) {
  if (n < 1) throw std::invalid_argument("block length n must be >= 1");
}

struct LogMoments {
  double top = -std::numeric_limits<double>::infinity();
  // Σ exp(L - top) and Σ exp(2 (L - top)).
  double first = 0.0;
  double second = 0.0;

  void rescale(double new_top) {
    if (new_top == top) return;
    if (std::isfinite(top)) {
      const double f = std::exp(top - new_top);
      first *= f;
      second *= f * f;
    }
    top = new_top;
  }
  void add(double l) {
    if (l > top) rescale(l);
    const double e = std::exp(l - top);
    first += e;
    second += e * e;
  }
  void merge(const LogMoments& other) {
    if (other.first == 0.0) return;
    LogMoments o = other;
    const double new_top = std::max(top, o.top);
    rescale(new_top);
    o.rescale(new_top);
    first += o.first;
    second += o.second;
  }
};

}  // namespace

double beta_closed(const ProbVector& p, double t) {
  const Wide wt(t);
  Wide sum = 0;
  for (const Wide& w : wide_weights(p)) sum += boost::multiprecision::pow(w, wt);
  return static_cast<double>(sum);
}

double beta_limit_exact(const ProbVector& p, double t, int n) {
  require_positive_n(n);
  const Wide s = Wide(1) - Wide(t);
  return static_cast<double>(boost::multiprecision::exp(free_block(log_step(wide_weights(p), s), n) / n));
}

MonteCarloEstimate beta_limit_mc(const ProbVector& p, double t, int n, std::uint64_t samples,
                                 std::uint64_t seed, unsigned workers) {
  require_positive_n(n);
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const double s = 1.0 - t;
  std::vector<GroupElement> block;
  block.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) block.push_back(GroupElement::generator_power(1, i));

  const auto parts = detail::map_chunks<LogMoments>(
      samples, workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        LogMoments m;
        for (std::uint64_t j = begin; j < end; ++j) {
          const std::uint64_t key = derive_seed(seed, j);
          double info = 0.0;
          for (const auto& g : block) info -= p.log_prob(p.sample(coordinate_uniform(key, g)));
          m.add(s * info);
        }
        return m;
      });
  LogMoments total;
  for (const auto& part : parts) total.merge(part);

  const double count = static_cast<double>(samples);
  const double log_mean = total.top + std::log(total.first / count);
  MonteCarloEstimate out;
  out.n = n;
  out.samples = samples;
  out.estimate = std::exp(log_mean / n);
  if (samples > 1) {
    // Sample variance of exp(L) relative to its mean, all scaled by exp(top).
    const double var = std::max(0.0, (total.second - total.first * total.first / count) /
                                         (count - 1.0));
    const double rel = std::sqrt(var / count) / (total.first / count);
    out.std_error = out.estimate * rel / n;
  }
  return out;
}

double pressure_single_coordinate(const ProbVector& p, double t) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 1; i <= p.size(); ++i) {
    terms.push_back(t * p.log_prob(static_cast<Symbol>(i)));
  }
  return log_sum_exp(std::move(terms));
}

double restricted_growth_rate(const ProbVector& p, double t, const Pattern& d, int n,
                              int generator, RestrictedReading reading) {
  require_positive_n(n);
  int reach = 0;
  for (const auto& [g, sym] : d) {
    if (!is_power_of(g, generator)) {
      throw std::invalid_argument("restriction key " + to_string(g) + " is off the a-line");
    }
    if (!p.contains(sym)) throw std::invalid_argument("restriction symbol out of range");
    reach = std::max(reach, static_cast<int>(g.length()));
  }
  if (!d.empty() && n <= 2 * reach) {
    throw std::invalid_argument("need n > 2M = " + std::to_string(2 * reach));
  }

  const bool forward = reading == RestrictedReading::kLimitFormula;
  const Wide s = forward ? Wide(1) - Wide(t) : -Wide(t);
  const auto weights = wide_weights(p);
  auto in_window = [&](int k) { return forward ? (k >= 0 && k < n) : (k < 0 && k >= -n); };
  auto exponent_of = [&](const GroupElement& g) {
    if (g.is_identity()) return 0;
    const int len = static_cast<int>(g.length());
    return g.letters().front() > 0 ? len : -len;
  };

  // D and its translate a^n D fix a^k and a^{n+k}; these are disjoint once
  // n > 2M.
  Wide fixed = 0;
  int fixed_in_window = 0;
  for (const auto& [g, sym] : d) {
    const Wide lp = boost::multiprecision::log(weights[static_cast<std::size_t>(sym - 1)]);
    const int k = exponent_of(g);
    for (int key : {k, k + n}) {
      if (in_window(key)) {
        fixed += lp - s * lp;
        ++fixed_in_window;
      } else {
        fixed += lp;
      }
    }
  }
  const Wide total = fixed + free_block(log_step(weights, s), n - fixed_in_window);
  return static_cast<double>(boost::multiprecision::exp(total / n));
}

double unrestricted_growth_rate(const ProbVector& p, double t, RestrictedReading reading) {
  return beta_closed(p, reading == RestrictedReading::kLimitFormula ? t : 1.0 + t);
}

double shannon_entropy(const ProbVector& p) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const auto s = static_cast<Symbol>(i);
    terms.push_back(-p.prob(s) * p.log_prob(s));
  }
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double v : terms) sum += v;
  return sum;
}

EntropyFromBeta entropy_from_beta(const ProbVector& p, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  EntropyFromBeta out;
  out.step = step;
  out.analytic = shannon_entropy(p);
  out.finite_difference = -(beta_closed(p, 1.0 + step) - beta_closed(p, 1.0 - step)) / (2 * step);
  return out;
}

BetaEvaluation evaluate_beta(const ProbVector& p, double t, std::span<const int> limit_ns,
                             const std::optional<BetaMcRequest>& mc) {
  BetaEvaluation out;
  out.t = t;
  out.closed_form = beta_closed(p, t);
  for (int n : limit_ns) out.limit_exact.emplace_back(n, beta_limit_exact(p, t, n));
  if (mc) out.mc = beta_limit_mc(p, t, mc->n, mc->samples, mc->seed, mc->workers);
  return out;
}

}  // namespace freeshift
