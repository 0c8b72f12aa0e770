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

#include "freeshift/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace freeshift {
namespace {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_100;
using Complex = mp::cpp_complex_100;

constexpr int kMaxSweeps = 500;
constexpr double kStrictTolerance = 1e-12;
constexpr double kRelaxedTolerance = 1e-6;
constexpr double kClusterGap = 1e-4;
constexpr double kMaxClusterGap = 0.1;
constexpr double kImagTolerance = 1e-8;
constexpr double kSumTolerance = 1e-8;

Real to_real(const Rational& r) {
  return Real(mp::numerator(r)) / Real(mp::denominator(r));
}

Complex horner(const std::vector<Real>& coeff, const Complex& z) {
  Complex acc(coeff[0]);
  for (std::size_t i = 1; i < coeff.size(); ++i) acc = acc * z + Complex(coeff[i]);
  return acc;
}

struct Sweep {
  std::vector<Complex> roots;
  int iterations = 0;
  double last_step = 0.0;
  bool converged = false;
};

// Weierstrass / Durand–Kerner updates on the monic polynomial `coeff`
// (leading coefficient first).
Sweep durand_kerner(const std::vector<Real>& coeff) {
  const std::size_t m = coeff.size() - 1;
  Sweep out;
  out.roots.reserve(m);
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (std::size_t k = 0; k < m; ++k) {
    const Real angle = two_pi * k / m + Real(0.25);
    out.roots.emplace_back(Real(0.5) + Real(0.4) * cos(angle), Real(0.4) * sin(angle));
  }
  for (int it = 1; it <= kMaxSweeps; ++it) {
    Real worst = 0;
    for (std::size_t i = 0; i < m; ++i) {
      Complex denom(1);
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) denom *= out.roots[i] - out.roots[j];
      }
      if (abs(denom) == 0) denom = Complex(Real(1e-40));
      const Complex step = horner(coeff, out.roots[i]) / denom;
      out.roots[i] -= step;
      worst = std::max(worst, Real(abs(step)));
    }
    out.iterations = it;
    out.last_step = static_cast<double>(worst);
    if (worst < kStrictTolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double min_gap(const std::vector<Complex>& z) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      gap = std::min(gap, static_cast<double>(abs(z[i] - z[j])));
    }
  }
  return gap;
}

bool all_real(const std::vector<Complex>& z) {
  return std::all_of(z.begin(), z.end(), [](const Complex& c) {
    return abs(c.imag()) < kImagTolerance;
  });
}

// Each root replaced by the mean of its single-linkage cluster at scale tau.
std::vector<Complex> cluster_means(const std::vector<Complex>& z, double tau) {
  const std::size_t m = z.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (abs(z[i] - z[j]) < tau) parent[find(i)] = find(j);
    }
  }
  std::vector<Complex> sum(m, Complex(0));
  std::vector<int> count(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    sum[find(i)] += z[i];
    ++count[find(i)];
  }
  std::vector<Complex> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    out[i] = sum[r] / Complex(Real(count[r]));
  }
  return out;
}

bool reproduces(const std::vector<Complex>& z, const PowerSums& ps) {
  for (std::size_t k = 1; k <= z.size(); ++k) {
    Complex acc(0);
    for (const auto& c : z) acc += pow(c, static_cast<int>(k));
    const Real target = to_real(ps.exact(k));
    const Real scale = std::max(Real(1), Real(abs(target)));
    if (abs(acc - Complex(target)) > kSumTolerance * scale) return false;
  }
  return true;
}

std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

PowerSums::PowerSums(std::vector<Rational> values) : exact_(std::move(values)) {}

PowerSums PowerSums::from_doubles(std::span<const double> values) {
  std::vector<Rational> exact;
  exact.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("power sums must be finite");
    exact.emplace_back(v);
  }
  return PowerSums(std::move(exact));
}

double PowerSums::value(std::size_t k) const { return static_cast<double>(exact(k)); }

std::vector<double> PowerSums::values() const {
  std::vector<double> out;
  out.reserve(exact_.size());
  for (const auto& r : exact_) out.push_back(static_cast<double>(r));
  return out;
}

PowerSums power_sums(const ProbVector& p, std::size_t k_max) {
  if (k_max < 1) throw std::invalid_argument("need at least one power sum");
  std::vector<Rational> out(k_max, Rational(0));
  for (const auto& w : p.exact_weights()) {
    Rational power = w;
    for (std::size_t k = 0; k < k_max; ++k) {
      out[k] += power;
      power *= w;
    }
  }
  return PowerSums(std::move(out));
}

std::vector<Rational> newton_to_elementary(const PowerSums& ps, std::size_t m) {
  if (ps.size() < m) {
    throw std::invalid_argument("need at least m = " + std::to_string(m) +
                                " power sums, got " + std::to_string(ps.size()));
  }
  std::vector<Rational> e(m + 1, Rational(0));
  e[0] = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      const Rational term = e[k - i] * ps.exact(i);
      if (i % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    e[k] = acc / static_cast<long long>(k);
  }
  return e;
}

RecoveredVector recover_vector(const PowerSums& ps, std::size_t m) {
  if (m < 1) throw std::invalid_argument("alphabet size m must be >= 1");
  const auto e = newton_to_elementary(ps, m);
  std::vector<Real> coeff(m + 1);
  for (std::size_t k = 0; k <= m; ++k) coeff[k] = (k % 2 == 0 ? 1 : -1) * to_real(e[k]);

  RecoveredVector out;
  std::vector<Complex> roots;
  if (m == 1) {
    roots.emplace_back(-coeff[1]);
  } else {
    Sweep sweep = durand_kerner(coeff);
    out.iterations = sweep.iterations;
    roots = std::move(sweep.roots);
    const bool relaxed = !sweep.converged;
    if (relaxed && !(sweep.last_step < kRelaxedTolerance && min_gap(roots) < kClusterGap)) {
      throw RecoveryError("root iteration did not converge within " +
                          std::to_string(kMaxSweeps) + " sweeps");
    }
    if (relaxed || !all_real(roots)) {
      bool accepted = false;
      for (double tau = kClusterGap; tau <= kMaxClusterGap; tau *= 2) {
        auto means = cluster_means(roots, tau);
        if (all_real(means) && reproduces(means, ps)) {
          roots = std::move(means);
          accepted = true;
          break;
        }
      }
      if (!accepted) throw RecoveryError("inconsistent power sums: roots are not real");
      out.clustered = true;
    }
  }

  Real total = 0;
  for (const auto& z : roots) {
    if (abs(z.imag()) >= kImagTolerance) {
      throw RecoveryError("inconsistent power sums: root " + z.real().str(12) + " + " +
                          z.imag().str(12) + "i is not real");
    }
    if (z.real() <= 0) {
      throw RecoveryError("inconsistent power sums: root " + z.real().str(12) +
                          " is not positive");
    }
    total += z.real();
    out.entries.push_back(static_cast<double>(z.real()));
  }
  if (abs(total - 1) > kSumTolerance) {
    throw RecoveryError("inconsistent power sums: roots sum to " + total.str(12));
  }
  std::sort(out.entries.begin(), out.entries.end(), std::greater<>());
  return out;
}

bool permutation_equivalent(const ProbVector& p, const ProbVector& q, double tol) {
  if (p.size() != q.size()) return false;
  const auto a = sorted_desc(p.weights());
  const auto b = sorted_desc(q.weights());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

bool power_sums_agree(const ProbVector& p, const ProbVector& q, double tol) {
  const std::size_t k = std::max(p.size(), q.size());
  const auto a = power_sums(p, k);
  const auto b = power_sums(q, k);
  for (std::size_t i = 1; i <= k; ++i) {
    if (std::abs(a.value(i) - b.value(i)) > tol) return false;
  }
  return true;
}

}  // namespace freeshift
