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

// Finitary codings X_p -> X_q as equivariant local rules, with the radius
// function r_φ, the code volume v_φ = |B(r_φ)|, the truncated suprema m_φ and
// a_φ, and expected code length statistics.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "freeshift/free_group.hpp"
#include "freeshift/prob.hpp"

namespace freeshift {

// One node of an adaptive decision tree. A leaf carries an output symbol; an
// inner node queries one coordinate and branches on its symbol
// (children[s - 1] for source symbol s).
struct AdaptiveNode {
  std::optional<Symbol> leaf;
  GroupElement query;
  std::vector<std::size_t> children;
};

// Reads the source symbol at a coordinate.
using CoordinateLookup = std::function<Symbol(const GroupElement&)>;

class FinitaryCode {
 public:
  enum class Kind { kFixedRadius, kAdaptive };
  // Window -> output. Windows list symbols over B(r) in shortlex order.
  using Table = std::map<std::vector<Symbol>, Symbol>;

  // A fixed-radius rule from an explicit table. Windows missing from the
  // table map to `fallback`; if there is no fallback, evaluating them throws.
  static FinitaryCode fixed_radius(int rank, int source_alphabet, int target_alphabet,
                                   int radius, const Table& table,
                                   std::optional<Symbol> fallback = std::nullopt,
                                   std::uint64_t cap = kDefaultCardinalityCap);
  // A fixed-radius rule tabulated from a function of the window.
  static FinitaryCode from_rule(int rank, int source_alphabet, int target_alphabet,
                                int radius,
                                const std::function<Symbol(std::span<const Symbol>)>& rule,
                                std::uint64_t cap = kDefaultCardinalityCap);
  // Radius-0 relabeling s ↦ perm[s - 1].
  static FinitaryCode symbol_permutation(int rank, std::span<const Symbol> perm);
  static FinitaryCode identity(int rank, int alphabet);
  static FinitaryCode constant(int rank, int source_alphabet, int target_alphabet,
                               Symbol value);
  // nodes[0] is the root.
  static FinitaryCode adaptive(int rank, int source_alphabet, int target_alphabet,
                               std::vector<AdaptiveNode> nodes);

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }
  int source_alphabet() const { return source_; }
  int target_alphabet() const { return target_; }
  // r for fixed-radius rules, r_max (deepest query) for adaptive trees.
  int max_radius() const { return radius_; }
  // Fixed-radius only: B(r) in shortlex order.
  std::span<const GroupElement> window() const { return window_; }
  std::optional<Symbol> fallback() const { return fallback_; }
  std::span<const AdaptiveNode> nodes() const { return nodes_; }
  // Fixed-radius only: true when every window was tabulated, which is what
  // makes minimal radii certifiable.
  bool tabulated() const { return !dense_.empty(); }
  // Every explicit (window, output) entry. For tabulated codes this is the
  // full table.
  Table table_entries() const;

  struct Evaluation {
    Symbol output = 0;
    int radius = 0;
    // False when `radius` is only the rule's radius r, not a certified
    // minimum.
    bool minimal = true;
  };
  // Output and radius at the identity, reading coordinates via `lookup`.
  Evaluation evaluate(const CoordinateLookup& lookup) const;

 private:
  FinitaryCode() = default;
  std::uint64_t window_index(std::span<const Symbol> window) const;
  void tabulate_determined();

  Kind kind_ = Kind::kFixedRadius;
  int rank_ = 1;
  int source_ = 1;
  int target_ = 1;
  int radius_ = 0;
  std::vector<GroupElement> window_;
  std::optional<Symbol> fallback_;
  Table sparse_;
  std::vector<Symbol> dense_;
  // determined_[r'][prefix] != 0 iff the window prefix on B(r') fixes the
  // output; prefixes indexed like windows.
  std::vector<std::vector<char>> determined_;
  std::vector<AdaptiveNode> nodes_;
};

// φ(x)_g, evaluated on the window h ↦ x_{g h}.
Symbol apply(const FinitaryCode& code, const Configuration& x,
             const GroupElement& g = GroupElement());

struct RadiusResult {
  int radius = 0;
  bool minimal = true;
};
// r_φ(x): the radius of the ball that determines φ(x)_e. Fixed-radius codes
// report the certified minimum when tabulated and r (minimal = false)
// otherwise; adaptive codes report the deepest coordinate on the path taken.
RadiusResult code_radius(const FinitaryCode& code, const Configuration& x);

// v_φ(x) = |B(r_φ(x))|.
std::uint64_t v_phi(const FinitaryCode& code, const Configuration& x);

// sup over g in a finite index set of r_φ(g^-1 x) - |g|. An empty index set
// leaves `value` empty, which stands for "unbounded below".
struct TruncatedSup {
  std::optional<int> value;
  int horizon = 0;
  std::size_t terms = 0;
  bool minimal = true;

  bool unbounded_below() const { return !value.has_value(); }
};

// g ranges over W_a ∩ B(L).
TruncatedSup m_phi_truncated(const FinitaryCode& code, const Configuration& x,
                             int horizon, int generator = 1,
                             std::uint64_t cap = kDefaultCardinalityCap);
// g ranges over (F_l \ W_a) ∩ B(L).
TruncatedSup a_phi_truncated(const FinitaryCode& code, const Configuration& x,
                             int horizon, int generator = 1,
                             std::uint64_t cap = kDefaultCardinalityCap);

enum class StatsMode { kExact, kMonteCarlo };

struct CodeStatsOptions {
  StatsMode mode = StatsMode::kExact;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  // When set (Monte Carlo only), also histogram m_φ and a_φ truncated at
  // this horizon.
  std::optional<int> horizon;
  int generator = 1;
  unsigned workers = 1;
  std::uint64_t cap = kDefaultCardinalityCap;
};

struct CodeStats {
  StatsMode mode = StatsMode::kExact;
  // 0 in exact mode.
  std::uint64_t samples = 0;
  double v_mean = 0.0;
  // n ↦ μ(v_φ > n) for n = 1..max v_φ. Since v_φ >= 1,
  // E[v_φ] = 1 + Σ_n tail[n].
  std::map<std::uint64_t, double> tail;
  std::optional<int> horizon;
  std::map<int, std::uint64_t> m_phi_hist;
  std::map<int, std::uint64_t> a_phi_hist;
  std::uint64_t m_phi_unbounded = 0;
  std::uint64_t a_phi_unbounded = 0;
  // False if any radius was an upper bound rather than a certified minimum.
  bool minimal = true;

  // Σ_{n <= upto} μ(v_φ > n).
  double tail_sum(std::uint64_t upto) const;
};

// Exact mode needs a tabulated fixed-radius code or an adaptive tree and
// throws std::invalid_argument otherwise.
CodeStats expected_code_length(const FinitaryCode& code, const ProbVector& p,
                               const CodeStatsOptions& options = {});

// All source patterns on B(search_radius) that φ maps onto `target`. Each key
// g of the target needs |g| + max_radius <= search_radius.
std::vector<Pattern> invert_on_window(const FinitaryCode& code, const Pattern& target,
                                      int search_radius,
                                      std::uint64_t cap = kDefaultCardinalityCap);

}  // namespace freeshift
