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

#ifndef MBC_MBC_DATABASE_HPP
#define MBC_MBC_DATABASE_HPP

#include <bitset>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbc/collection.hpp"

namespace mbc {

// Largest n for which a database is held in memory (coalition masks < 256).
inline constexpr int kMaxDatabasePlayers = 8;

// Membership set over coalition masks 1..255.
using MemberSet = std::bitset<256>;

MemberSet member_set(std::span<const Coalition> coalitions);

// All minimal balanced collections on n players in canonical order, with the
// integer data that the game predicates scan.
class MbcDatabase {
 public:
  MbcDatabase() = default;
  MbcDatabase(int n, std::vector<WeightedCollection> collections,
              std::optional<std::vector<Coalition>> set_system = std::nullopt);

  int n() const { return n_; }
  std::size_t size() const { return collections_.size(); }
  bool restricted() const { return restricted_; }
  const std::optional<std::vector<Coalition>>& set_system() const { return set_system_; }
  void mark_restricted() { restricted_ = true; }

  const WeightedCollection& operator[](std::size_t i) const { return collections_[i]; }
  const std::vector<WeightedCollection>& collections() const { return collections_; }

  // Weights of collection i as multiplicity / depth.
  std::int64_t depth(std::size_t i) const { return depth_[i]; }
  std::span<const std::int64_t> multiplicities(std::size_t i) const {
    return {mult_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  std::span<const std::uint32_t> masks(std::size_t i) const {
    return {masks_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  const MemberSet& members(std::size_t i) const { return members_[i]; }

  // Index of the collection with exactly these coalitions, if present.
  std::optional<std::size_t> find(std::span<const Coalition> sorted_coalitions) const;

 private:
  int n_ = 0;
  bool restricted_ = false;
  std::optional<std::vector<Coalition>> set_system_;
  std::vector<WeightedCollection> collections_;
  std::vector<std::int64_t> depth_;
  std::vector<std::size_t> offset_{0};
  std::vector<std::int64_t> mult_;
  std::vector<std::uint32_t> masks_;
  std::vector<MemberSet> members_;
};

// Lexicographic order on mask sequences; the canonical line order.
bool collection_less(const WeightedCollection& a, const WeightedCollection& b);

// True iff the members of the collection are exactly the union of the
// database collections it contains.
bool is_balanced_collection(std::span<const Coalition> coalitions, const MbcDatabase& db);

// --- MBCDB text format ---------------------------------------------------

struct DatabaseHeader {
  int n = 0;
  std::size_t count = 0;
  bool restricted = false;
};

std::string format_header(const DatabaseHeader& h);
std::string format_line(const WeightedCollection& c);
WeightedCollection parse_line(std::string_view line, int n);

void write_database(std::ostream& out, const MbcDatabase& db);

struct ReadOptions {
  // Re-solve every line and compare weights; off by default.
  bool verify_minimality = false;
};

MbcDatabase read_database(std::istream& in, const ReadOptions& options = {});
MbcDatabase load_database(const std::string& path, const ReadOptions& options = {});

// Streams lines without building a database (for files too large for memory).
DatabaseHeader for_each_line(std::istream& in,
                             const std::function<void(const WeightedCollection&)>& fn);

}  // namespace mbc

#endif  // MBC_MBC_DATABASE_HPP
