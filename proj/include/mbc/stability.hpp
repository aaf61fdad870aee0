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

#ifndef MBC_STABILITY_HPP
#define MBC_STABILITY_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbc/balanced_sets.hpp"
#include "mbc/game.hpp"
#include "mbc/game_props.hpp"
#include "mbc/mbc_database.hpp"

namespace mbc {

// Database indices of the collections associated with s: some singleton of s
// is a member and every member is a singleton of s, the complement of s, or a
// family member not contained in s.
std::vector<std::size_t> associated_indices(Coalition s, std::span<const Coalition> family,
                                            const MbcDatabase& db);
std::vector<WeightedCollection> associated_mbcs(Coalition s, std::span<const Coalition> family,
                                                const MbcDatabase& db);

// Members of b other than the singletons of s.
std::vector<Coalition> starred(const WeightedCollection& b, Coalition s);

// Admissibility of b (associated with s) for the collection.
bool is_admissible(const WeightedCollection& b, Coalition s,
                   std::span<const Coalition> collection, int n);

// Per-member admissible lists; a system picks one entry from each list.
class SystemProduct {
 public:
  SystemProduct(std::span<const Coalition> collection, std::span<const Coalition> family,
                const MbcDatabase& db);

  std::span<const Coalition> collection() const { return collection_; }
  const std::vector<std::size_t>& choices(std::size_t member) const { return lists_[member]; }
  // Number of systems, saturating at UINT64_MAX.
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Odometer over the product in lexicographic order: the last member varies
  // fastest. Positions index into the per-member lists.
  class Cursor {
   public:
    explicit Cursor(const SystemProduct& p);
    bool done() const { return done_; }
    const std::vector<std::size_t>& positions() const { return pos_; }
    void next();

   private:
    const SystemProduct* p_;
    std::vector<std::size_t> pos_;
    bool done_;
  };
  Cursor begin() const { return Cursor(*this); }

  // The database collections chosen at the given positions.
  std::vector<std::size_t> system_at(const std::vector<std::size_t>& positions) const;

 private:
  std::vector<Coalition> collection_;
  std::vector<std::vector<std::size_t>> lists_;
  std::uint64_t size_ = 0;
};

enum class OmegaSource { A, B, C };

struct OmegaEntry {
  OmegaSource kind;
  Coalition source;
  friend bool operator==(const OmegaEntry&, const OmegaEntry&) = default;
};

// Distinct vectors of the three generator families. A vector produced by
// several generators is stored once and lists all of them.
struct OmegaSet {
  int n = 0;
  std::vector<RatVector> vectors;
  std::vector<std::vector<OmegaEntry>> provenance;

  std::size_t size() const { return vectors.size(); }
  std::optional<std::size_t> index_of(const RatVector& z) const;
  bool has_kind(std::size_t i, OmegaSource kind) const;
  std::vector<RatVector> of_kind(OmegaSource kind) const;
};

// z^S: the weights of the singletons of s in b, zero elsewhere.
RatVector singleton_weight_vector(const WeightedCollection& b, Coalition s, int n);

// system[k] is the collection chosen for collection[k].
OmegaSet build_omega(std::span<const Coalition> collection,
                     std::span<const WeightedCollection> system,
                     std::span<const Coalition> family, int n);

// v(N) - sum over the starred members T of lambda_T v^S(T).
Rational c_value(const WeightedCollection& b, Coalition s, const Game& g);

struct AValueTable {
  std::vector<Rational> values;  // parallel to OmegaSet::vectors
};

AValueTable a_values(const OmegaSet& omega, std::span<const Coalition> collection,
                     std::span<const WeightedCollection> system, const Game& g);

struct OmegaBalancedSet {
  BalancedSet set;
  std::vector<std::size_t> members;  // indices into the OmegaSet
  Rational psi;
  bool in_b0 = false;
};

struct OmegaBalancedSets {
  std::vector<OmegaBalancedSet> all;
  // Sets where the shortcut "some member is an A-vector that is not a
  // C-vector" disagrees with the definition of the distinguished subfamily.
  std::size_t shortcut_disagreements = 0;
};

OmegaBalancedSets minimal_balanced_sets(const OmegaSet& omega, const AValueTable& table,
                                        const Game& g);

// The two-clause condition for one system.
bool system_condition_holds(const OmegaSet& omega, const AValueTable& table, const Game& g);

struct NestedLimits {
  std::uint64_t max_systems = 0;         // 0: unlimited
  std::chrono::duration<double> time_limit{0};  // 0: unlimited
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct NestedStats {
  std::uint64_t systems = 0;         // size of the product
  std::uint64_t classes_checked = 0;  // distinct systems actually solved
  std::uint64_t memo_hits = 0;
  bool fixed_part_sufficient = false;
};

struct NestedResult {
  enum class Outcome { Holds, Fails, LimitReached } outcome = Outcome::Holds;
  std::vector<std::size_t> failing_system;  // database indices, one per member
  std::string limit_reason;
  NestedStats stats;
};

NestedResult check_nested_balancedness(std::span<const Coalition> collection,
                                       std::span<const Coalition> family,
                                       const MbcDatabase& db, const Game& g,
                                       const NestedLimits& limits = {});

// A preimputation that violates exactly the members of the collection within
// the family and satisfies, for each member S, z^S.x >= C-value of its chosen
// collection. Such a point exists exactly when the system fails the nested
// condition; it lies outside the core and no core element dominates it.
std::optional<Allocation> undominated_allocation(std::span<const Coalition> collection,
                                                 std::span<const WeightedCollection> system,
                                                 std::span<const Coalition> family,
                                                 const Game& g);

// A coalition via which some core element dominates x, if any. Decided with
// the balancedness test on a perturbed game, independently of the nested
// machinery.
std::optional<Coalition> dominating_coalition(const Allocation& x, const Game& g,
                                              const MbcDatabase& db);

bool nested_balancedness_ok(std::span<const Coalition> collection,
                            std::span<const Coalition> family, const MbcDatabase& db,
                            const Game& g);

enum class Verdict { Stable, NotStable, Unknown };
enum class Stage {
  Balancedness,
  SingletonExactness,
  VitalExact,
  CoreDescribing,
  Extendability,
  FeasibleCollections,
  Blocking,
  WeakExtendability,
  NestedBalancedness,
};

std::string to_string(Verdict v);
std::string to_string(Stage s);

struct StabilityOptions {
  std::uint64_t max_systems = 0;  // per feasible collection; 0: unlimited
  std::chrono::duration<double> time_limit{0};  // whole run; 0: unlimited
};

struct StabilityStats {
  std::size_t vital_exact = 0;
  std::size_t extendable = 0;
  std::size_t feasible = 0;
  std::size_t surviving = 0;  // feasible without a minimal extendable member
  std::size_t largest_surviving = 0;
  std::size_t collections_checked = 0;
  std::uint64_t systems_checked = 0;
};

struct StabilityReport {
  Verdict verdict = Verdict::Unknown;
  Stage stage = Stage::Balancedness;
  std::string reason;
  std::vector<Coalition> witness_collection;
  std::vector<WeightedCollection> witness_system;
  std::optional<int> witness_player;
  // Undominated preimputation outside the core, for nested failures.
  std::optional<Allocation> witness_allocation;
  std::vector<Coalition> vital_exact;
  std::vector<Coalition> extendable;
  StabilityStats stats;
  std::vector<std::pair<Stage, double>> timings;  // seconds per stage
};

StabilityReport is_core_stable(const Game& g, const MbcDatabase& db,
                               const StabilityOptions& options = {});

}  // namespace mbc

#endif  // MBC_STABILITY_HPP
