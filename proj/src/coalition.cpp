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

#include "mbc/coalition.hpp"

#include <charconv>
#include <stdexcept>

namespace mbc {

Coalition make_coalition(std::initializer_list<int> players) {
  Coalition s;
  for (int p : players) {
    if (p < 1 || p > kMaxPlayers) throw std::out_of_range("player index");
    s.bits |= 1U << (p - 1);
  }
  return s;
}

std::vector<int> players_of(Coalition s) {
  std::vector<int> out;
  out.reserve(s.size());
  for (std::uint32_t b = s.bits; b != 0; b &= b - 1) {
    out.push_back(std::countr_zero(b) + 1);
  }
  return out;
}

std::string to_key(Coalition s) {
  std::string out;
  for (int p : players_of(s)) {
    if (!out.empty()) out += ',';
    out += std::to_string(p);
  }
  return out;
}

Coalition parse_coalition_key(std::string_view key, int n) {
  auto fail = [&](const std::string& why) -> Coalition {
    throw std::invalid_argument("malformed coalition key '" + std::string(key) +
                                "': " + why);
  };
  if (key.empty()) return fail("empty");
  Coalition s;
  int last = 0;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    std::size_t comma = key.find(',', pos);
    if (comma == std::string_view::npos) comma = key.size();
    std::string_view token = key.substr(pos, comma - pos);
    int player = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), player);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      return fail("bad player token");
    }
    if (player < 1 || player > n) {
      throw std::out_of_range("player " + std::to_string(player) +
                              " outside 1.." + std::to_string(n));
    }
    if (player <= last) return fail("players must be strictly increasing");
    last = player;
    s.bits |= 1U << (player - 1);
    pos = comma + 1;
  }
  return s;
}

std::vector<Coalition> all_coalitions(int n) {
  std::vector<Coalition> out;
  const std::uint32_t full = full_mask(n);
  out.reserve(full);
  for (std::uint32_t m = 1; m != 0 && m <= full; ++m) out.emplace_back(m);
  return out;
}

}  // namespace mbc
