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

#ifndef MBC_GAME_HPP
#define MBC_GAME_HPP

#include <string>
#include <string_view>
#include <vector>

#include "mbc/coalition.hpp"
#include "mbc/rational.hpp"

namespace mbc {

// Games are stored densely (one value per mask), which caps the number of
// players well below the 32 a Coalition can address.
inline constexpr int kMaxGamePlayers = 16;

// A TU game (N, v) on N = {1..n}. v(empty) is 0 and cannot be changed;
// every other coalition defaults to 0.
class Game {
 public:
  explicit Game(int n);

  int n() const { return n_; }
  Coalition grand() const { return grand_coalition(n_); }

  const Rational& value(Coalition s) const;
  const Rational& grand_value() const { return values_.back(); }
  void set_value(Coalition s, Rational value);

  // Dense view indexed by mask; entry 0 is the empty coalition.
  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  int n_;
  std::vector<Rational> values_;
};

using Allocation = std::vector<Rational>;

// x(S) for an allocation indexed by player - 1.
Rational coalition_sum(const Allocation& x, Coalition s);

// Game file: {"n": <int>, "values": {"1,3": "3/5", ...}}. Throws
// std::invalid_argument (or std::out_of_range for player indices) on malformed
// input, duplicate keys and unknown fields.
Game parse_game(std::string_view text);

// Canonical form: keys by increasing mask, zero values omitted, values as
// reduced "p/q" (or "p") strings.
std::string serialize_game(const Game& game);

}  // namespace mbc

#endif  // MBC_GAME_HPP
