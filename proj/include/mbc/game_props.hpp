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

#ifndef MBC_GAME_PROPS_HPP
#define MBC_GAME_PROPS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mbc/game.hpp"
#include "mbc/mbc_database.hpp"
#include "mbc/polytope.hpp"

namespace mbc {

// Dense coalition values with a fast path that rescales everything to 64-bit
// integers when the common denominator allows it.
class ValueTable {
 public:
  explicit ValueTable(std::vector<Rational> dense);
  explicit ValueTable(const Game& g) : ValueTable(g.values()) {}

  // Sign of sum_T lambda_T v(T) - v(N) for database collection i.
  int compare_to_grand(const MbcDatabase& db, std::size_t i) const;
  bool integer_path() const { return use_int_; }

  const Rational& value(std::uint32_t mask) const { return rats_[mask]; }
  // Replaces one value; drops to the rational path if it does not scale.
  void set(std::uint32_t mask, const Rational& value);

 private:
  bool use_int_ = false;
  BigInt scale_ = 1;
  std::vector<std::int64_t> ints_;
  std::vector<Rational> rats_;
};

// Index of the first collection whose weighted sum exceeds v(N).
std::optional<std::size_t> first_violation(const ValueTable& values, const MbcDatabase& db);

bool is_balanced_game(const Game& g, const MbcDatabase& db);

// A game with some values replaced.
struct DerivedGame {
  Game base;
  std::map<Coalition, Rational> overrides;

  const Rational& value(Coalition s) const;
  Game materialize() const;
};

// v^S: v(S^c) replaced by v(N) - v(S).
DerivedGame derived_vS(const Game& g, Coalition s);
// v^S for every S in the family; the override wins on collisions.
DerivedGame derived_vSS(const Game& g, std::span<const Coalition> family);

bool is_exact(Coalition s, const Game& g, const MbcDatabase& db);

// Union of all collections attaining equality, sorted by mask.
std::vector<Coalition> effective_set(const Game& g, const MbcDatabase& db);

bool is_strictly_vital_exact(Coalition s, const Game& g, const MbcDatabase& db);

// Strictly vital-exact coalitions other than N, sorted by mask.
std::vector<Coalition> strictly_vital_exact_set(const Game& g, const MbcDatabase& db);

// Davis-Maschler reduced game on S (relabeled 1..|S| by increasing player
// index); z holds the payoffs of S^c in increasing player order.
Game reduced_game(const Game& g, Coalition s, const RatVector& z);

// Databases for smaller player sets, generated on first use.
class MbcCache {
 public:
  MbcCache() = default;
  // Seeds the cache with an existing database.
  void put(std::shared_ptr<const MbcDatabase> db);
  std::shared_ptr<const MbcDatabase> get(int n);

 private:
  std::mutex mu_;
  std::map<int, std::shared_ptr<const MbcDatabase>> dbs_;
};

bool is_extendable(Coalition s, const Game& g, MbcCache& cache);

// Whether the core point y of the subgame on S (coordinates in increasing
// player order) extends to a core element of the whole game.
bool extends_to_core(Coalition s, const RatVector& y, const Game& g, MbcCache& cache);

bool is_feasible(std::span<const Coalition> collection, std::span<const Coalition> family,
                 const Game& g, const MbcDatabase& db);

class UnboundedFamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Whether x(N) = v(N) and x(S) >= v(S) on the family already imply every
// other core inequality. Throws UnboundedFamilyError when that polyhedron is
// unbounded.
bool is_core_describing(std::span<const Coalition> family, const Game& g);

struct FeasibleCollectionReport {
  std::vector<Coalition> collection;
  bool feasible = false;
  bool blocking = false;
  bool has_min_extendable = false;
};

// All nonempty feasible subcollections of the family, ordered by size and
// then lexicographically by mask. Extendable coalitions (if given) annotate
// has_min_extendable.
std::vector<FeasibleCollectionReport> feasible_collections(
    std::span<const Coalition> family, const Game& g, const MbcDatabase& db,
    std::span<const Coalition> extendable = {});

bool is_blocking(std::span<const Coalition> collection, int n);

// True if some member that is minimal by inclusion within the collection is
// in the extendable list.
bool has_minimal_extendable(std::span<const Coalition> collection,
                            std::span<const Coalition> extendable);

}  // namespace mbc

#endif  // MBC_GAME_PROPS_HPP
