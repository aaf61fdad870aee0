// Copyright 2026 The mbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MBC_COALITION_HPP
#define MBC_COALITION_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace mbc {

inline constexpr int kMaxPlayers = 32;

// A set of players over N = {1..n}; bit (i-1) is set iff player i belongs to
// it. The empty mask doubles as the "no coalition" marker returned by
// complement(N).
struct Coalition {
  std::uint32_t bits = 0;

  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint32_t mask) : bits(mask) {}

  constexpr bool empty() const { return bits == 0; }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool contains(int player) const {
    return (bits >> (player - 1)) & 1U;
  }
  constexpr bool subset_of(Coalition other) const {
    return (bits & ~other.bits) == 0;
  }
  constexpr bool intersects(Coalition other) const {
    return (bits & other.bits) != 0;
  }
  constexpr Coalition operator|(Coalition o) const { return Coalition{bits | o.bits}; }
  constexpr Coalition operator&(Coalition o) const { return Coalition{bits & o.bits}; }

  friend constexpr auto operator<=>(Coalition, Coalition) = default;
};

constexpr std::uint32_t full_mask(int n) {
  return n >= 32 ? 0xFFFFFFFFU : ((1U << n) - 1U);
}

constexpr Coalition grand_coalition(int n) { return Coalition{full_mask(n)}; }

constexpr Coalition singleton(int player) {
  return Coalition{1U << (player - 1)};
}

// N \ S. Returns the empty marker for S = N.
constexpr Coalition complement(Coalition s, int n) {
  return Coalition{full_mask(n) ^ s.bits};
}

Coalition make_coalition(std::initializer_list<int> players);

// Players in increasing order, 1-based.
std::vector<int> players_of(Coalition s);

// "1,3,5". The empty coalition renders as "".
std::string to_key(Coalition s);

// Parses a strictly increasing comma-separated list of players in 1..n.
// Throws std::invalid_argument on anything else.
Coalition parse_coalition_key(std::string_view key, int n);

// Every nonempty coalition of N, by increasing mask.
std::vector<Coalition> all_coalitions(int n);

}  // namespace mbc

#endif  // MBC_COALITION_HPP
