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

#ifndef MBC_COLLECTION_HPP
#define MBC_COLLECTION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mbc/coalition.hpp"
#include "mbc/linalg.hpp"
#include "mbc/rational.hpp"

namespace mbc {

// A collection of coalitions together with its balancing weights. Coalitions
// are kept in strictly increasing mask order.
struct WeightedCollection {
  std::vector<Coalition> coalitions;
  std::vector<Rational> weights;

  std::size_t size() const { return coalitions.size(); }
  bool contains(Coalition s) const;
  // Weight of s, or 0 when s is not a member.
  Rational weight_of(Coalition s) const;

  friend bool operator==(const WeightedCollection&, const WeightedCollection&) = default;
};

// Sorts the coalitions (carrying weights along) and rejects duplicates or
// empty coalitions.
WeightedCollection canonical_collection(std::vector<Coalition> coalitions,
                                        std::vector<Rational> weights);

// The (n x k) 0/1 matrix with one column per coalition, in the given order.
RatMatrix incidence_matrix(std::span<const Coalition> coalitions, int n);

struct Minimal {
  std::vector<Rational> weights;
};
struct BalancedNotMinimal {};
struct NotBalanced {};
using MinimalityResult = std::variant<Minimal, BalancedNotMinimal, NotBalanced>;

// Classifies a collection on n players. Coalitions may be in any order; the
// returned weights follow the given order.
MinimalityResult check_minimal_balanced(std::span<const Coalition> coalitions, int n);

// Per-player sums, positivity, independence and size <= n.
bool is_sound_minimal_balanced(const WeightedCollection& c, int n);

struct RegularHypergraph {
  std::int64_t depth = 1;
  std::vector<std::int64_t> multiplicities;
};

// Integer rescaling of the weights: depth is the lcm of the denominators.
RegularHypergraph to_regular_hypergraph(const WeightedCollection& c);

// "{1,2} {3}" style rendering for diagnostics.
std::string describe(std::span<const Coalition> coalitions);

}  // namespace mbc

#endif  // MBC_COLLECTION_HPP
