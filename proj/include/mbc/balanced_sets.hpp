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

#ifndef MBC_BALANCED_SETS_HPP
#define MBC_BALANCED_SETS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mbc/collection.hpp"
#include "mbc/linalg.hpp"

namespace mbc {

// A set of nonnegative vectors with positive weights summing to 1^N.
struct BalancedSet {
  std::vector<RatVector> vectors;
  std::vector<Rational> weights;
};

// Unique positive weights delta with sum delta_z z = 1^N, or nothing when Z
// is not a minimal balanced set.
std::optional<std::vector<Rational>> minimal_balanced_weights(std::span<const RatVector> z, int n);

// A minimal balanced subset of a candidate list, by index.
struct IndexedBalancedSet {
  std::vector<std::size_t> members;
  std::vector<Rational> weights;
};

// Visits every minimal balanced subset of `vectors` with at most n members.
// The visitor returns false to stop the search early.
void for_each_minimal_balanced_subset(
    std::span<const RatVector> vectors, int n,
    const std::function<bool(const IndexedBalancedSet&)>& visit);

std::vector<IndexedBalancedSet> all_minimal_balanced_subsets(std::span<const RatVector> vectors,
                                                             int n);

// Necessary condition for replacing the column of s_prime in a minimal
// balanced collection by z: z must be independent of the other columns and
// lie in the column span of the collection.
bool mbs_candidate_filter(const WeightedCollection& collection, Coalition s_prime,
                          const RatVector& z, int n);

}  // namespace mbc

#endif  // MBC_BALANCED_SETS_HPP
