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

#ifndef MBC_PELEG_HPP
#define MBC_PELEG_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mbc/mbc_database.hpp"

namespace mbc {

// Default upper bound on n; n = 7 takes hours and needs the streaming writer.
inline constexpr int kDefaultPelegCap = 6;

struct PelegOptions {
  // Keep only collections whose coalitions each lie inside some element of
  // this set system.
  std::optional<std::vector<Coalition>> set_system;
  int threads = 1;
  int max_players = kDefaultPelegCap;
};

// Extends every collection on players 1..db.n() to player p = db.n() + 1.
MbcDatabase add_new_player(const MbcDatabase& db, int p, const PelegOptions& options = {});

// All minimal balanced collections on players 1..n.
MbcDatabase peleg(int n, const PelegOptions& options = {});

struct StreamOptions {
  std::string scratch_dir;
  // Keys buffered in memory before a sorted shard is spilled to disk.
  std::size_t shard_keys = std::size_t{1} << 24;
};

// Generates the last level straight into an MBCDB stream through sorted
// on-disk shards, so the final collections are never all in memory. The
// level below is still built in memory. Returns the number of collections.
std::size_t peleg_to_stream(int n, std::ostream& out, const PelegOptions& options,
                            const StreamOptions& stream);

}  // namespace mbc

#endif  // MBC_PELEG_HPP
