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

#include "freeshift/coding.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "parallel.hpp"

namespace freeshift {
namespace {

// m^k, or nullopt once it exceeds cap.
std::optional<std::uint64_t> capped_power(std::uint64_t m, std::uint64_t k,
                                          std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (v > cap / m) return std::nullopt;
    v *= m;
  }
  return v;
}

void require_alphabets(int rank, int source, int target) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (source < 1 || target < 1) throw std::invalid_argument("alphabets must be non-empty");
}

void require_target(Symbol s, int target) {
  if (s < 1 || s > target) {
    throw std::invalid_argument("output symbol " + std::to_string(s) + " outside 1.." +
                                std::to_string(target));
  }
}

// Advances a window (symbols 1..m) to the next one in mixed-radix order with
// the last coordinate fastest. Returns false after the last window.
bool next_window(std::vector<Symbol>& w, int m) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] < m) {
      ++w[i];
      return true;
    }
    w[i] = 1;
  }
  return false;
}

}  // namespace

FinitaryCode FinitaryCode::fixed_radius(int rank, int source_alphabet, int target_alphabet,
                                        int radius, const Table& table,
                                        std::optional<Symbol> fallback, std::uint64_t cap) {
  require_alphabets(rank, source_alphabet, target_alphabet);
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  FinitaryCode code;
  code.kind_ = Kind::kFixedRadius;
  code.rank_ = rank;
  code.source_ = source_alphabet;
  code.target_ = target_alphabet;
  code.radius_ = radius;
  code.window_ = ball(rank, radius, cap).elements;
  if (fallback) require_target(*fallback, target_alphabet);
  code.fallback_ = fallback;
  for (const auto& [w, s] : table) {
    if (w.size() != code.window_.size()) {
      throw std::invalid_argument("table window has " + std::to_string(w.size()) +
                                  " symbols, expected " +
                                  std::to_string(code.window_.size()));
    }
    for (Symbol v : w) {
      if (v < 1 || v > source_alphabet) {
        throw std::invalid_argument("table window symbol outside source alphabet");
      }
    }
    require_target(s, target_alphabet);
  }
  const auto count = capped_power(static_cast<std::uint64_t>(source_alphabet),
                                   code.window_.size(), cap);
  const bool total = table.size() == count.value_or(0) || fallback.has_value();
  if (count && total) {
    code.dense_.assign(*count, 0);
    if (fallback) std::fill(code.dense_.begin(), code.dense_.end(), *fallback);
    for (const auto& [w, s] : table) code.dense_[code.window_index(w)] = s;
    code.tabulate_determined();
  } else {
    code.sparse_ = table;
  }
  return code;
}

FinitaryCode FinitaryCode::from_rule(int rank, int source_alphabet, int target_alphabet,
                                     int radius,
                                     const std::function<Symbol(std::span<const Symbol>)>& rule,
                                     std::uint64_t cap) {
  require_alphabets(rank, source_alphabet, target_alphabet);
  const auto size = ball_size(rank, radius);
  if (!capped_power(static_cast<std::uint64_t>(source_alphabet), size, cap)) {
    throw CapacityError("window space of the rule exceeds the cap");
  }
  Table table;
  std::vector<Symbol> w(size, 1);
  do {
    table.emplace(w, rule(w));
  } while (next_window(w, source_alphabet));
  return fixed_radius(rank, source_alphabet, target_alphabet, radius, table, std::nullopt, cap);
}

FinitaryCode FinitaryCode::symbol_permutation(int rank, std::span<const Symbol> perm) {
  const int m = static_cast<int>(perm.size());
  std::vector<bool> seen(perm.size(), false);
  Table table;
  for (int s = 1; s <= m; ++s) {
    const Symbol t = perm[static_cast<std::size_t>(s - 1)];
    if (t < 1 || t > m || seen[static_cast<std::size_t>(t - 1)]) {
      throw std::invalid_argument("not a permutation of 1..m");
    }
    seen[static_cast<std::size_t>(t - 1)] = true;
    table.emplace(std::vector<Symbol>{s}, t);
  }
  return fixed_radius(rank, m, m, 0, table);
}

FinitaryCode FinitaryCode::identity(int rank, int alphabet) {
  std::vector<Symbol> perm(static_cast<std::size_t>(alphabet));
  for (int s = 1; s <= alphabet; ++s) perm[static_cast<std::size_t>(s - 1)] = s;
  return symbol_permutation(rank, perm);
}

FinitaryCode FinitaryCode::constant(int rank, int source_alphabet, int target_alphabet,
                                    Symbol value) {
  return fixed_radius(rank, source_alphabet, target_alphabet, 0, {}, value);
}

FinitaryCode FinitaryCode::adaptive(int rank, int source_alphabet, int target_alphabet,
                                    std::vector<AdaptiveNode> nodes) {
  require_alphabets(rank, source_alphabet, target_alphabet);
  if (nodes.empty()) throw std::invalid_argument("adaptive code needs a root node");
  FinitaryCode code;
  code.kind_ = Kind::kAdaptive;
  code.rank_ = rank;
  code.source_ = source_alphabet;
  code.target_ = target_alphabet;

  // Walk from the root: every node reached exactly once (a tree), no
  // coordinate queried twice on one path, every node reachable.
  std::vector<int> parents(nodes.size(), 0);
  struct Frame {
    std::size_t node;
    std::set<GroupElement> path;
  };
  std::vector<Frame> stack{{0, {}}};
  parents[0] = 1;
  int depth_radius = 0;
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const AdaptiveNode& n = nodes[f.node];
    if (n.leaf) {
      require_target(*n.leaf, target_alphabet);
      continue;
    }
    if (n.query.max_generator() > rank) {
      throw std::invalid_argument("query coordinate uses a generator beyond the rank");
    }
    if (n.children.size() != static_cast<std::size_t>(source_alphabet)) {
      throw std::invalid_argument("inner node needs one child per source symbol");
    }
    if (!f.path.insert(n.query).second) {
      throw std::invalid_argument("coordinate " + to_string(n.query) +
                                  " queried twice on one path");
    }
    depth_radius = std::max(depth_radius, static_cast<int>(n.query.length()));
    for (std::size_t child : n.children) {
      if (child >= nodes.size() || child == 0) {
        throw std::invalid_argument("child index out of range");
      }
      if (++parents[child] > 1) throw std::invalid_argument("adaptive code is not a tree");
      stack.push_back({child, f.path});
    }
  }
  if (std::find(parents.begin(), parents.end(), 0) != parents.end()) {
    throw std::invalid_argument("adaptive code has unreachable nodes");
  }
  code.radius_ = depth_radius;
  code.nodes_ = std::move(nodes);
  return code;
}

std::uint64_t FinitaryCode::window_index(std::span<const Symbol> window) const {
  std::uint64_t idx = 0;
  for (Symbol s : window) idx = idx * static_cast<std::uint64_t>(source_) + (s - 1);
  return idx;
}

void FinitaryCode::tabulate_determined() {
  // B(r') is a prefix of the shortlex window, so windows sharing a B(r')
  // prefix are one contiguous block of the dense table.
  determined_.clear();
  const auto m = static_cast<std::uint64_t>(source_);
  const auto full = window_.size();
  for (int r = 0; r < radius_; ++r) {
    const auto prefix_len = ball_size(rank_, r);
    std::uint64_t block = 1;
    for (std::uint64_t i = prefix_len; i < full; ++i) block *= m;
    const std::uint64_t prefixes = dense_.size() / block;
    std::vector<char> det(prefixes, 0);
    for (std::uint64_t pfx = 0; pfx < prefixes; ++pfx) {
      const auto first = dense_.begin() + static_cast<std::ptrdiff_t>(pfx * block);
      const Symbol v = *first;
      det[pfx] = std::all_of(first, first + static_cast<std::ptrdiff_t>(block),
                             [v](Symbol s) { return s == v; });
    }
    determined_.push_back(std::move(det));
  }
}

FinitaryCode::Table FinitaryCode::table_entries() const {
  if (kind_ != Kind::kFixedRadius) return {};
  if (dense_.empty()) return sparse_;
  Table out;
  std::vector<Symbol> w(window_.size(), 1);
  std::uint64_t idx = 0;
  do {
    out.emplace(w, dense_[idx++]);
  } while (next_window(w, source_));
  return out;
}

FinitaryCode::Evaluation FinitaryCode::evaluate(const CoordinateLookup& lookup) const {
  Evaluation out;
  if (kind_ == Kind::kAdaptive) {
    std::size_t node = 0;
    while (!nodes_[node].leaf) {
      const AdaptiveNode& n = nodes_[node];
      const Symbol s = lookup(n.query);
      if (s < 1 || s > source_) throw std::out_of_range("source symbol outside alphabet");
      out.radius = std::max(out.radius, static_cast<int>(n.query.length()));
      node = n.children[static_cast<std::size_t>(s - 1)];
    }
    out.output = *nodes_[node].leaf;
    return out;
  }

  std::vector<Symbol> w;
  w.reserve(window_.size());
  for (const auto& h : window_) {
    const Symbol s = lookup(h);
    if (s < 1 || s > source_) throw std::out_of_range("source symbol outside alphabet");
    w.push_back(s);
  }
  if (!dense_.empty()) {
    out.output = dense_[window_index(w)];
    out.radius = radius_;
    const auto m = static_cast<std::uint64_t>(source_);
    for (int r = 0; r < radius_; ++r) {
      std::uint64_t prefix = 0;
      const auto len = ball_size(rank_, r);
      for (std::uint64_t i = 0; i < len; ++i) prefix = prefix * m + (w[i] - 1);
      if (determined_[static_cast<std::size_t>(r)][prefix]) {
        out.radius = r;
        break;
      }
    }
    return out;
  }
  auto it = sparse_.find(w);
  if (it != sparse_.end()) {
    out.output = it->second;
  } else if (fallback_) {
    out.output = *fallback_;
  } else {
    throw std::out_of_range("no table entry for this window and no default symbol");
  }
  out.radius = radius_;
  out.minimal = radius_ == 0;
  return out;
}

Symbol apply(const FinitaryCode& code, const Configuration& x, const GroupElement& g) {
  return code.evaluate([&](const GroupElement& h) { return x.value_at(g * h); }).output;
}

RadiusResult code_radius(const FinitaryCode& code, const Configuration& x) {
  const auto ev = code.evaluate([&](const GroupElement& h) { return x.value_at(h); });
  return {ev.radius, ev.minimal};
}

std::uint64_t v_phi(const FinitaryCode& code, const Configuration& x) {
  return ball_size(code.rank(), code_radius(code, x).radius);
}

namespace {

TruncatedSup truncated_sup(const FinitaryCode& code, const Configuration& x, int horizon,
                           int generator, std::uint64_t cap, bool over_wa) {
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  if (generator < 1 || generator > code.rank()) {
    throw std::invalid_argument("distinguished generator out of range");
  }
  TruncatedSup out;
  out.horizon = horizon;
  for (const auto& g : ball(code.rank(), horizon, cap).elements) {
    if (in_wa(g, generator) != over_wa) continue;
    const auto r = code_radius(code, shift(x, inverse(g)));
    const int term = r.radius - static_cast<int>(g.length());
    out.value = out.value ? std::max(*out.value, term) : term;
    out.minimal = out.minimal && r.minimal;
    ++out.terms;
  }
  return out;
}

}  // namespace

TruncatedSup m_phi_truncated(const FinitaryCode& code, const Configuration& x,
                             int horizon, int generator, std::uint64_t cap) {
  return truncated_sup(code, x, horizon, generator, cap, true);
}

TruncatedSup a_phi_truncated(const FinitaryCode& code, const Configuration& x,
                             int horizon, int generator, std::uint64_t cap) {
  return truncated_sup(code, x, horizon, generator, cap, false);
}

double CodeStats::tail_sum(std::uint64_t upto) const {
  double s = 0.0;
  for (const auto& [n, mass] : tail) {
    if (n > upto) break;
    s += mass;
  }
  return s;
}

namespace {

// Fills mean and tail from a distribution of v_φ values.
void finish_from_distribution(const std::map<std::uint64_t, double>& dist, CodeStats& out) {
  out.v_mean = 0.0;
  std::uint64_t vmax = 1;
  for (const auto& [v, mass] : dist) {
    out.v_mean += static_cast<double>(v) * mass;
    vmax = std::max(vmax, v);
  }
  for (std::uint64_t n = 1; n <= vmax; ++n) {
    double mass = 0.0;
    for (auto it = dist.upper_bound(n); it != dist.end(); ++it) mass += it->second;
    out.tail[n] = mass;
  }
}

void adaptive_distribution(const FinitaryCode& code, const ProbVector& p, std::size_t node,
                           double mass, int radius, std::map<std::uint64_t, double>& dist) {
  const AdaptiveNode& n = code.nodes()[node];
  if (n.leaf) {
    dist[ball_size(code.rank(), radius)] += mass;
    return;
  }
  const int r = std::max(radius, static_cast<int>(n.query.length()));
  for (int s = 1; s <= code.source_alphabet(); ++s) {
    adaptive_distribution(code, p, n.children[static_cast<std::size_t>(s - 1)],
                          mass * p.prob(s), r, dist);
  }
}

std::map<std::uint64_t, double> fixed_distribution(const FinitaryCode& code,
                                                   const ProbVector& p) {
  // Every window, weighted by its cylinder measure.
  std::map<std::uint64_t, double> dist;
  const auto win = code.window();
  std::vector<Symbol> w(win.size(), 1);
  const int m = code.source_alphabet();
  do {
    double mass = 1.0;
    for (Symbol s : w) mass *= p.prob(s);
    const auto ev = code.evaluate([&](const GroupElement& h) {
      const auto it = std::lower_bound(win.begin(), win.end(), h);
      return w[static_cast<std::size_t>(it - win.begin())];
    });
    dist[ball_size(code.rank(), ev.radius)] += mass;
  } while (next_window(w, m));
  return dist;
}

}  // namespace

CodeStats expected_code_length(const FinitaryCode& code, const ProbVector& p,
                               const CodeStatsOptions& options) {
  if (static_cast<int>(p.size()) != code.source_alphabet()) {
    throw std::invalid_argument("probability vector size does not match source alphabet");
  }
  CodeStats out;
  out.mode = options.mode;
  if (options.mode == StatsMode::kExact) {
    std::map<std::uint64_t, double> dist;
    if (code.kind() == FinitaryCode::Kind::kAdaptive) {
      adaptive_distribution(code, p, 0, 1.0, 0, dist);
    } else if (code.tabulated()) {
      dist = fixed_distribution(code, p);
    } else {
      throw std::invalid_argument(
          "exact code-length statistics need a tabulated rule within the cap");
    }
    finish_from_distribution(dist, out);
    return out;
  }

  if (options.samples == 0) throw std::invalid_argument("samples must be >= 1");
  out.samples = options.samples;
  out.horizon = options.horizon;
  auto shared = std::make_shared<const ProbVector>(p);

  struct Partial {
    std::map<std::uint64_t, std::uint64_t> v_hist;
    std::map<int, std::uint64_t> m_hist, a_hist;
    std::uint64_t m_unbounded = 0, a_unbounded = 0;
    bool minimal = true;
  };
  auto partials = detail::map_chunks<Partial>(
      options.samples, options.workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        Partial part;
        for (std::uint64_t i = begin; i < end; ++i) {
          const Configuration x(derive_seed(options.seed, i), shared);
          const auto r = code_radius(code, x);
          part.minimal = part.minimal && r.minimal;
          ++part.v_hist[ball_size(code.rank(), r.radius)];
          if (options.horizon) {
            const auto mp = m_phi_truncated(code, x, *options.horizon, options.generator,
                                            options.cap);
            const auto ap = a_phi_truncated(code, x, *options.horizon, options.generator,
                                            options.cap);
            if (mp.value) ++part.m_hist[*mp.value]; else ++part.m_unbounded;
            if (ap.value) ++part.a_hist[*ap.value]; else ++part.a_unbounded;
          }
        }
        return part;
      });

  std::map<std::uint64_t, std::uint64_t> v_hist;
  for (const auto& part : partials) {
    for (const auto& [v, c] : part.v_hist) v_hist[v] += c;
    for (const auto& [v, c] : part.m_hist) out.m_phi_hist[v] += c;
    for (const auto& [v, c] : part.a_hist) out.a_phi_hist[v] += c;
    out.m_phi_unbounded += part.m_unbounded;
    out.a_phi_unbounded += part.a_unbounded;
    out.minimal = out.minimal && part.minimal;
  }
  std::map<std::uint64_t, double> dist;
  const auto n = static_cast<double>(options.samples);
  for (const auto& [v, c] : v_hist) dist[v] = static_cast<double>(c) / n;
  finish_from_distribution(dist, out);
  return out;
}

std::vector<Pattern> invert_on_window(const FinitaryCode& code, const Pattern& target,
                                      int search_radius, std::uint64_t cap) {
  if (search_radius < 0) throw std::invalid_argument("search radius must be >= 0");
  for (const auto& [g, s] : target) {
    require_target(s, code.target_alphabet());
    if (static_cast<int>(g.length()) + code.max_radius() > search_radius) {
      throw std::invalid_argument("target coordinate " + to_string(g) +
                                  " needs a larger search radius");
    }
  }
  const auto region = ball(code.rank(), search_radius, cap).elements;
  if (!capped_power(static_cast<std::uint64_t>(code.source_alphabet()), region.size(), cap)) {
    throw CapacityError("source window space exceeds the cap");
  }
  std::map<GroupElement, std::size_t> position;
  for (std::size_t i = 0; i < region.size(); ++i) position.emplace(region[i], i);

  std::vector<Pattern> out;
  std::vector<Symbol> w(region.size(), 1);
  do {
    bool match = true;
    for (const auto& [g, s] : target) {
      const auto ev = code.evaluate(
          [&](const GroupElement& h) { return w[position.at(g * h)]; });
      if (ev.output != s) {
        match = false;
        break;
      }
    }
    if (match) {
      Pattern pre;
      for (std::size_t i = 0; i < region.size(); ++i) pre.set(region[i], w[i]);
      out.push_back(std::move(pre));
    }
  } while (next_window(w, code.source_alphabet()));
  return out;
}

}  // namespace freeshift
