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

#include "freeshift/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace freeshift {
namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw CapacityError("cardinality overflows 64 bits");
  }
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) result = checked_mul(result, base);
  return result;
}

void require_rank_radius(int rank, int radius) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
}

void require_generator(int rank, int generator) {
  if (generator < 1 || generator > rank) {
    throw std::invalid_argument("distinguished generator out of range");
  }
}

void require_cap(std::uint64_t predicted, std::uint64_t cap) {
  if (predicted > cap) {
    throw CapacityError("enumeration of " + std::to_string(predicted) +
                        " elements exceeds cap " + std::to_string(cap));
  }
}

// Letters in shortlex order: a1, A1, a2, A2, ...
std::vector<Letter> ordered_letters(int rank) {
  std::vector<Letter> out;
  out.reserve(2 * static_cast<std::size_t>(rank));
  for (int k = 1; k <= rank; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

// Extends every word of `shell` by one letter, preserving lexicographic order.
std::vector<GroupElement> next_sphere(const std::vector<GroupElement>& shell,
                                      const std::vector<Letter>& alphabet) {
  std::vector<GroupElement> out;
  std::vector<Letter> buffer;
  for (const auto& w : shell) {
    auto last = w.last_letter();
    for (Letter x : alphabet) {
      if (last && *last == -x) continue;
      buffer.assign(w.letters().begin(), w.letters().end());
      buffer.push_back(x);
      out.push_back(GroupElement::from_letters(buffer));
    }
  }
  return out;
}

}  // namespace

GroupElement GroupElement::from_letters(std::span<const Letter> letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (Letter x : letters) {
    if (x == 0) throw std::invalid_argument("letter index 0 is not a generator");
    if (!stack.empty() && stack.back() == -x) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return GroupElement(std::move(stack));
}

GroupElement GroupElement::generator_power(int generator, int power) {
  if (generator < 1) throw std::invalid_argument("generator index must be >= 1");
  const Letter x = power >= 0 ? generator : -generator;
  return GroupElement(std::vector<Letter>(static_cast<std::size_t>(std::abs(power)), x));
}

std::optional<Letter> GroupElement::last_letter() const {
  if (letters_.empty()) return std::nullopt;
  return letters_.back();
}

int GroupElement::max_generator() const {
  int best = 0;
  for (Letter x : letters_) best = std::max(best, std::abs(x));
  return best;
}

std::strong_ordering operator<=>(const GroupElement& lhs, const GroupElement& rhs) {
  if (auto c = lhs.length() <=> rhs.length(); c != 0) return c;
  for (std::size_t i = 0; i < lhs.letters_.size(); ++i) {
    if (auto c = letter_rank(lhs.letters_[i]) <=> letter_rank(rhs.letters_[i]); c != 0) {
      return c;
    }
  }
  return std::strong_ordering::equal;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  std::vector<Letter> out(g.letters_);
  std::size_t i = 0;
  while (i < h.letters_.size() && !out.empty() && out.back() == -h.letters_[i]) {
    out.pop_back();
    ++i;
  }
  out.insert(out.end(), h.letters_.begin() + static_cast<std::ptrdiff_t>(i),
             h.letters_.end());
  return GroupElement(std::move(out));
}

GroupElement inverse(const GroupElement& g) {
  std::vector<Letter> out(g.letters_.rbegin(), g.letters_.rend());
  for (Letter& x : out) x = -x;
  return GroupElement(std::move(out));
}

std::string to_string(const GroupElement& g) {
  if (g.is_identity()) return "e";
  std::string out;
  for (Letter x : g.letters()) {
    out.push_back(x > 0 ? 'a' : 'A');
    out += std::to_string(std::abs(x));
  }
  return out;
}

GroupElement parse_element(std::string_view text) {
  if (text == "e" || text.empty()) {
    if (text.empty()) throw ParseError("empty group element");
    return GroupElement();
  }
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const int sign = std::isupper(static_cast<unsigned char>(c)) ? -1 : 1;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    int index = 0;
    if (j > i + 1) {
      if (lower != 'a') {
        throw ParseError("only 'a'/'A' may carry a numeric index: " + std::string(text));
      }
      for (std::size_t k = i + 1; k < j; ++k) {
        index = index * 10 + (text[k] - '0');
        if (index > 1'000'000) throw ParseError("generator index too large");
      }
      if (index == 0) throw ParseError("generator index 0 in " + std::string(text));
    } else if (lower >= 'a' && lower <= 'd') {
      index = lower - 'a' + 1;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "' in " +
                       std::string(text));
    }
    letters.push_back(sign * index);
    i = j;
  }
  return GroupElement::from_letters(letters);
}

bool is_power_of(const GroupElement& g, int generator) {
  return std::all_of(g.letters().begin(), g.letters().end(),
                     [generator](Letter x) { return std::abs(x) == generator; });
}

std::uint64_t sphere_size(int rank, int radius) {
  require_rank_radius(rank, radius);
  if (radius == 0) return 1;
  const auto l = static_cast<std::uint64_t>(rank);
  return checked_mul(2 * l, checked_pow(2 * l - 1, radius - 1));
}

std::uint64_t ball_size(int rank, int radius) {
  require_rank_radius(rank, radius);
  if (rank == 1) return 2 * static_cast<std::uint64_t>(radius) + kRankOneBallOffset;
  const auto l = static_cast<std::uint64_t>(rank);
  const std::uint64_t q = checked_pow(2 * l - 1, radius);
  // 2l (q - 1) / (2l - 2) == l (q - 1) / (l - 1); (q - 1) is divisible by 2l - 2.
  return 1 + checked_mul(2 * l, (q - 1) / (2 * l - 2));
}

std::uint64_t wa_ball_size(int rank, int radius) {
  require_rank_radius(rank, radius);
  if (rank == 1) return static_cast<std::uint64_t>(radius) + 1;
  const auto l = static_cast<std::uint64_t>(rank);
  return 1 + (checked_pow(2 * l - 1, radius) - 1) / (2 * l - 2);
}

std::vector<GroupElement> sphere(int rank, int radius, std::uint64_t cap) {
  require_cap(sphere_size(rank, radius), cap);
  const auto alphabet = ordered_letters(rank);
  std::vector<GroupElement> shell{GroupElement()};
  for (int r = 1; r <= radius; ++r) shell = next_sphere(shell, alphabet);
  return shell;
}

Ball ball(int rank, int radius, std::uint64_t cap) {
  require_cap(ball_size(rank, radius), cap);
  const auto alphabet = ordered_letters(rank);
  Ball out{rank, radius, {GroupElement()}};
  std::vector<GroupElement> shell{GroupElement()};
  for (int r = 1; r <= radius; ++r) {
    shell = next_sphere(shell, alphabet);
    out.elements.insert(out.elements.end(), shell.begin(), shell.end());
  }
  return out;
}

bool in_wa(const GroupElement& g, int generator) {
  auto last = g.last_letter();
  return !last || *last == generator;
}

std::vector<GroupElement> enumerate_wa(int rank, std::size_t count, int generator,
                                       std::uint64_t cap) {
  require_rank_radius(rank, 0);
  require_generator(rank, generator);
  if (count > cap) require_cap(count, cap);
  std::vector<GroupElement> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(GroupElement());
  // Words of length k in W_a are w·a with |w| = k-1 and w not ending in a^-1;
  // lexicographic order of w carries over to w·a.
  const auto alphabet = ordered_letters(rank);
  const GroupElement a = GroupElement::generator_power(generator);
  std::vector<GroupElement> shell{GroupElement()};
  while (out.size() < count) {
    require_cap(checked_mul(shell.size(), 2 * static_cast<std::uint64_t>(rank)), cap);
    for (const auto& w : shell) {
      if (out.size() == count) break;
      auto last = w.last_letter();
      if (last && *last == -generator) continue;
      out.push_back(w * a);
    }
    shell = next_sphere(shell, alphabet);
  }
  return out;
}

std::vector<GroupElement> enumerate_wa_complement(int rank, std::size_t count,
                                                  int generator, std::uint64_t cap) {
  require_rank_radius(rank, 0);
  require_generator(rank, generator);
  if (count > cap) require_cap(count, cap);
  std::vector<GroupElement> out;
  out.reserve(count);
  const auto alphabet = ordered_letters(rank);
  std::vector<GroupElement> shell{GroupElement()};
  while (out.size() < count) {
    require_cap(checked_mul(shell.size(), 2 * static_cast<std::uint64_t>(rank)), cap);
    shell = next_sphere(shell, alphabet);
    for (const auto& w : shell) {
      if (out.size() == count) break;
      if (!in_wa(w, generator)) out.push_back(w);
    }
  }
  return out;
}

EnumerationBoundReport check_enumeration_bound(int rank, std::size_t count,
                                               int generator, std::uint64_t cap) {
  if (rank < 2) throw std::invalid_argument("enumeration bound requires rank >= 2");
  EnumerationBoundReport report;
  report.checked = count;
  const auto base = static_cast<std::uint64_t>(2 * rank - 1);

  // (2l-1)^(len+1) saturates at uint64 max; k never gets near it.
  auto bound = [base](std::size_t len) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i <= len; ++i) {
      if (v > std::numeric_limits<std::uint64_t>::max() / base) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      v *= base;
    }
    return v;
  };

  const auto wa = enumerate_wa(rank, count, generator, cap);
  for (std::size_t k = 1; k <= wa.size(); ++k) {
    if (k > bound(wa[k - 1].length())) {
      report.wa_holds = false;
      report.first_wa_violation = k;
      break;
    }
  }
  const auto rest = enumerate_wa_complement(rank, count, generator, cap);
  for (std::size_t k = 1; k <= rest.size(); ++k) {
    const std::uint64_t b = bound(rest[k - 1].length());
    const std::uint64_t tripled =
        b > std::numeric_limits<std::uint64_t>::max() / 3 ? b : 3 * b;
    if (k > tripled) {
      report.complement_holds = false;
      report.first_complement_violation = k;
      break;
    }
  }
  return report;
}

}  // namespace freeshift
