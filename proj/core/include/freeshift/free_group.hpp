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

// Reduced-word arithmetic in the free group F_l, Cayley balls, and the
// "past" set W_a of reduced words ending in a distinguished generator a.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace freeshift {

// A signed generator index: +k is the k-th generator, -k its inverse (k >= 1).
using Letter = int;

// Guard for exponential enumerations (balls, window spaces).
inline constexpr std::uint64_t kDefaultCardinalityCap = 10'000'000;

// On Z (rank 1) a closed ball of radius r has 2r + kRankOneBallOffset
// elements.
inline constexpr std::uint64_t kRankOneBallOffset = 1;

// Raised when an enumeration would exceed its cardinality cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An element of F_l held in canonical reduced form. The empty word is e.
class GroupElement {
 public:
  GroupElement() = default;

  // Reduces the given letter sequence. Throws std::invalid_argument on a
  // zero letter.
  static GroupElement from_letters(std::span<const Letter> letters);
  // g^power for the generator with index `generator` (power may be negative).
  static GroupElement generator_power(int generator, int power = 1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  std::optional<Letter> last_letter() const;
  // Largest generator index used, 0 for e.
  int max_generator() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  // Shortlex: word length first, then lexicographic on letters with
  // a1 < A1 < a2 < A2 < ...
  friend std::strong_ordering operator<=>(const GroupElement& lhs,
                                          const GroupElement& rhs);

 private:
  explicit GroupElement(std::vector<Letter> reduced)
      : letters_(std::move(reduced)) {}
  friend GroupElement multiply(const GroupElement&, const GroupElement&);
  friend GroupElement inverse(const GroupElement&);

  std::vector<Letter> letters_;
};

GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
inline GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  return multiply(g, h);
}
inline std::size_t word_length(const GroupElement& g) { return g.length(); }

// Sort key of a letter inside shortlex order.
inline int letter_rank(Letter x) { return 2 * ((x < 0 ? -x : x) - 1) + (x < 0); }

// Canonical text form: tokens "a1", "A1", "a2", ... (capital = inverse) with
// no separator; the identity is "e".
std::string to_string(const GroupElement& g);

// Accepts the canonical form and a shorthand where a bare letter a, b, c, d
// stands for generators 1..4 (capitals are inverses): "ba", "aB". "e" alone is
// the identity. Throws ParseError.
GroupElement parse_element(std::string_view text);

// True iff g == a^k for some integer k.
bool is_power_of(const GroupElement& g, int generator);

// ---------------------------------------------------------------------------
// Counting in closed form. All throw CapacityError on uint64 overflow.

// Number of reduced words of length exactly r.
std::uint64_t sphere_size(int rank, int radius);
// |B(r)|: 1 + 2l((2l-1)^r - 1)/(2l-2) for l > 1, 2r + 1 for l = 1.
std::uint64_t ball_size(int rank, int radius);
// |B(r) ∩ W_a|: 1 + ((2l-1)^r - 1)/(2l-2) for l > 1, r + 1 for l = 1.
std::uint64_t wa_ball_size(int rank, int radius);

// ---------------------------------------------------------------------------
// Enumeration.

struct Ball {
  int rank = 1;
  int radius = 0;
  // Shortlex sorted; the first |B(r')| entries form B(r') for every r' <= r.
  std::vector<GroupElement> elements;
};

// Breadth-first enumeration of B(r). Throws std::invalid_argument on bad
// arguments and CapacityError if |B(r)| > cap.
Ball ball(int rank, int radius, std::uint64_t cap = kDefaultCardinalityCap);

// Reduced words of length exactly r in lexicographic order.
std::vector<GroupElement> sphere(int rank, int radius,
                                 std::uint64_t cap = kDefaultCardinalityCap);

// g ∈ W_a: g == e or the last letter of g is +a.
bool in_wa(const GroupElement& g, int generator = 1);

// The first `count` elements of W_a in shortlex order (so lengths are
// non-decreasing).
std::vector<GroupElement> enumerate_wa(
    int rank, std::size_t count, int generator = 1,
    std::uint64_t cap = kDefaultCardinalityCap);

// The first `count` elements of F_l \ W_a in shortlex order.
std::vector<GroupElement> enumerate_wa_complement(
    int rank, std::size_t count, int generator = 1,
    std::uint64_t cap = kDefaultCardinalityCap);

struct EnumerationBoundReport {
  std::size_t checked = 0;
  // k <= (2l-1)^(|g_k|+1) along the W_a enumeration.
  bool wa_holds = true;
  // k <= 3 (2l-1)^(|g_k|+1) along the complement enumeration.
  bool complement_holds = true;
  // 1-based index of the first violation, if any.
  std::optional<std::size_t> first_wa_violation;
  std::optional<std::size_t> first_complement_violation;

  bool holds() const { return wa_holds && complement_holds; }
};

// Requires rank >= 2 (std::invalid_argument otherwise).
EnumerationBoundReport check_enumeration_bound(
    int rank, std::size_t count, int generator = 1,
    std::uint64_t cap = kDefaultCardinalityCap);

}  // namespace freeshift
