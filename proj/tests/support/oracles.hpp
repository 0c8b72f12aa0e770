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


// Slow, direct implementations used as test oracles. Nothing here calls into
// the library's algorithms; GroupElement and ProbVector appear only at the
// boundary so results can be compared.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Word = std::vector<int>;
using Rational = boost::multiprecision::cpp_rational;

inline Word reduce(const Word& letters) {
  Word out;
  for (int x : letters) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

inline Word concat(const Word& g, const Word& h) {
  Word w = g;
  w.insert(w.end(), h.begin(), h.end());
  return reduce(w);
}

inline Word invert(const Word& g) {
  Word w(g.rbegin(), g.rend());
  for (int& x : w) x = -x;
  return w;
}

inline Word power(int generator, int k) {
  return Word(static_cast<std::size_t>(std::abs(k)), k >= 0 ? generator : -generator);
}

// a1 < A1 < a2 < A2 < ...
inline int letter_key(int x) { return 2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0); }

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return letter_key(a[i]) < letter_key(b[i]);
  }
  return false;
}

inline bool in_wa(const Word& g, int generator) { return g.empty() || g.back() == generator; }

// Every letter sequence of length <= r, reduced and deduplicated.
inline std::vector<Word> ball(int rank, int r) {
  std::vector<int> alphabet;
  for (int i = 1; i <= rank; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::set<Word> seen;
  Word seq;
  std::function<void()> rec = [&] {
    seen.insert(reduce(seq));
    if (static_cast<int>(seq.size()) == r) return;
    for (int x : alphabet) {
      seq.push_back(x);
      rec();
      seq.pop_back();
    }
  };
  rec();
  std::vector<Word> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

// Reduced words of length <= r grown letter by letter, never appending the
// inverse of the last letter.
inline std::vector<Word> reduced_words(int rank, int r) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == r) continue;
    for (int x = -rank; x <= rank; ++x) {
      if (x == 0 || (!out[i].empty() && out[i].back() == -x)) continue;
      Word next = out[i];
      next.push_back(x);
      out.push_back(std::move(next));
    }
  }
  return out;
}

// n! / (k_1! ... k_m!) prod P_i^{t k_i}, summed over compositions of n.
inline double multinomial_beta(const std::vector<double>& p, double t, int n) {
  const std::size_t m = p.size();
  std::vector<long double> log_fact(static_cast<std::size_t>(n) + 1, 0.0L);
  for (int i = 1; i <= n; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<long double>(i));
  std::vector<long double> terms;
  std::vector<int> k(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == m) {
      k[i] = left;
      long double lt = log_fact[n];
      for (std::size_t j = 0; j < m; ++j) {
        lt -= log_fact[k[j]];
        lt += static_cast<long double>(t) * k[j] * std::log(static_cast<long double>(p[j]));
      }
      terms.push_back(lt);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      k[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, n);
  const long double top = *std::max_element(terms.begin(), terms.end());
  long double sum = 0.0L;
  for (long double lt : terms) sum += std::exp(lt - top);
  return static_cast<double>(std::exp((top + std::log(sum)) / n));
}

// The integrand exp((1-t) sum -ln P) averaged over every n-block by weight.
inline double block_beta(const std::vector<double>& p, double t, int n) {
  const std::size_t m = p.size();
  std::vector<std::size_t> block(static_cast<std::size_t>(n), 0);
  long double total = 0.0L;
  while (true) {
    long double weight = 1.0L;
    long double info = 0.0L;
    for (std::size_t s : block) {
      weight *= p[s];
      info -= std::log(static_cast<long double>(p[s]));
    }
    total += weight * std::exp((1.0L - t) * info);
    std::size_t i = 0;
    while (i < block.size() && ++block[i] == m) block[i++] = 0;
    if (i == block.size()) break;
  }
  return static_cast<double>(std::pow(total, 1.0L / n));
}

// Coefficients c_0..c_m of prod (x - r_i), c_k multiplying x^{m-k}.
inline std::vector<Rational> expand_monic(const std::vector<Rational>& roots) {
  std::vector<Rational> c{Rational(1)};
  for (const Rational& r : roots) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= c[k] * r;
    }
    c = std::move(next);
  }
  return c;
}

// J(U)(x) by scanning a ball: sum of ln P over sigma(W_a) \ W_a minus the sum
// over W_a \ sigma(W_a). sigma(g) = pi(a^s g); pi given as g -> pi(g).
struct CocycleInstance {
  int rank = 2;
  int generator = 1;
  int shift = 0;
  std::map<Word, Word> pi;
};

inline double scan_cocycle(const CocycleInstance& u, int radius,
                           const std::function<double(const Word&)>& log_p_at) {
  std::map<Word, Word> pi_inv;
  for (const auto& [g, h] : u.pi) pi_inv[h] = g;
  double out = 0.0;
  for (const Word& v : reduced_words(u.rank, radius)) {
    auto it = pi_inv.find(v);
    const Word pre = concat(power(u.generator, -u.shift), it == pi_inv.end() ? v : it->second);
    const bool in_image = in_wa(pre, u.generator);
    const bool in_past = in_wa(v, u.generator);
    if (in_image && !in_past) out += log_p_at(v);
    if (!in_image && in_past) out -= log_p_at(v);
  }
  return out;
}

// Restricted integral by enumerating every assignment of the window.
// forward: window a^0..a^{n-1}, integrand exp((1-t) J(T^n)).
// otherwise: window a^-1..a^-n, integrand exp(t J(T^-n)) with J(T^-n) = sum ln P.
// d maps exponent k to the symbol fixed at a^k and at a^{k+n}.
inline double restricted_rate(const std::vector<double>& p, double t,
                              const std::map<int, int>& d, int n, bool forward) {
  std::map<int, int> fixed;
  for (const auto& [k, s] : d) {
    fixed[k] = s;
    fixed[k + n] = s;
  }
  auto window_pos = [&](int k) -> int {
    if (forward) return (k >= 0 && k < n) ? k : -1;
    return (k < 0 && k >= -n) ? -k - 1 : -1;
  };
  long double outside = 1.0L;
  for (const auto& [k, s] : fixed) {
    if (window_pos(k) < 0) outside *= p[static_cast<std::size_t>(s - 1)];
  }
  const std::size_t m = p.size();
  std::vector<std::size_t> w(static_cast<std::size_t>(n), 0);
  long double total = 0.0L;
  while (true) {
    bool ok = true;
    for (const auto& [k, s] : fixed) {
      const int pos = window_pos(k);
      if (pos >= 0 && w[static_cast<std::size_t>(pos)] != static_cast<std::size_t>(s - 1)) ok = false;
    }
    if (ok) {
      long double weight = 1.0L;
      long double j = 0.0L;
      for (std::size_t s : w) {
        weight *= p[s];
        j += forward ? -std::log(static_cast<long double>(p[s])) : std::log(static_cast<long double>(p[s]));
      }
      const long double expo = forward ? (1.0L - t) * j : t * j;
      total += weight * std::exp(expo);
    }
    std::size_t i = 0;
    while (i < w.size() && ++w[i] == m) w[i++] = 0;
    if (i == w.size()) break;
  }
  return static_cast<double>(std::pow(total * outside, 1.0L / n));
}

// Exact measure of the set of configurations meeting every (coordinate,
// symbol) constraint; zero on contradiction.
inline Rational constrained_measure(const std::vector<Rational>& p,
                                    const std::vector<std::pair<Word, int>>& constraints) {
  std::map<Word, int> need;
  for (const auto& [g, s] : constraints) {
    auto [it, fresh] = need.emplace(g, s);
    if (!fresh && it->second != s) return Rational(0);
  }
  Rational out(1);
  for (const auto& [g, s] : need) out *= p[static_cast<std::size_t>(s - 1)];
  return out;
}

}  // namespace oracle
