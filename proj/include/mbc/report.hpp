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

#ifndef MBC_REPORT_HPP
#define MBC_REPORT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mbc/game.hpp"
#include "mbc/game_props.hpp"
#include "mbc/mbc_database.hpp"
#include "mbc/stability.hpp"

namespace mbc {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Hash of the canonical game serialization.
std::string game_hash(const Game& g);
// Hash of the canonical MBCDB rendering.
std::string database_hash(const MbcDatabase& db);

Json database_identity(const MbcDatabase& db);
Json coalition_list(std::span<const Coalition> coalitions);
Json collection_json(const WeightedCollection& c);
Json allocation_json(const Allocation& x);
Json feasible_json(std::span<const FeasibleCollectionReport> reports);

// Timings are included only on request so that reports stay byte-identical
// across runs.
Json stability_json(const StabilityReport& report, bool timings);

}  // namespace mbc

#endif  // MBC_REPORT_HPP
