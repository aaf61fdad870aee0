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

#include "mbc/collection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mbc {

bool WeightedCollection::contains(Coalition s) const {
  return std::binary_search(coalitions.begin(), coalitions.end(), s);
}

Rational WeightedCollection::weight_of(Coalition s) const {
  auto it = std::lower_bound(coalitions.begin(), coalitions.end(), s);
  if (it == coalitions.end() || *it != s) return 0;
  return weights[static_cast<std::size_t>(it - coalitions.begin())];
}

WeightedCollection canonical_collection(std::vector<Coalition> coalitions,
                                        std::vector<Rational> weights) {
  if (coalitions.size() != weights.size()) {
    throw std::invalid_argument("coalition and weight counts differ");
  }
  std::vector<std::size_t> order(coalitions.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return coalitions[a] < coalitions[b]; });
  WeightedCollection out;
  out.coalitions.reserve(order.size());
  out.weights.reserve(order.size());
  for (std::size_t i : order) {
    if (coalitions[i].empty()) throw std::invalid_argument("empty coalition in collection");
    if (!out.coalitions.empty() && out.coalitions.back() == coalitions[i]) {
      throw std::invalid_argument("duplicate coalition in collection");
    }
    out.coalitions.push_back(coalitions[i]);
    out.weights.push_back(std::move(weights[i]));
  }
  return out;
}

RatMatrix incidence_matrix(std::span<const Coalition> coalitions, int n) {
  RatMatrix a(static_cast<std::size_t>(n), coalitions.size());
  for (std::size_t c = 0; c < coalitions.size(); ++c)
    for (int r = 0; r < n; ++r)
      if (coalitions[c].contains(r + 1)) a(static_cast<std::size_t>(r), c) = 1;
  return a;
}

namespace {

// Depth-first search over independent subcollections; marks every member of
// some minimal balanced subcollection.
void cover_by_minimal(std::span<const Coalition> all, int n, std::size_t start,
                      std::vector<Coalition>& chosen, std::vector<std::size_t>& idx,
                      std::vector<bool>& covered) {
  for (std::size_t i = start; i < all.size(); ++i) {
    chosen.push_back(all[i]);
    idx.push_back(i);
    std::vector<std::uint32_t> masks;
    for (Coalition c : chosen) masks.push_back(c.bits);
    if (rank_of_masks(masks, n) == chosen.size()) {
      RatVector ones(static_cast<std::size_t>(n), Rational(1));
      SolveResult r = solve_unique(incidence_matrix(chosen, n), ones);
      if (auto* u = std::get_if<UniqueSolution>(&r)) {
        if (std::all_of(u->x.begin(), u->x.end(), [](const Rational& w) { return w > 0; })) {
          for (std::size_t j : idx) covered[j] = true;
        }
      }
      // A balanced independent set cannot be extended to a larger minimal one.
      if (!std::holds_alternative<UniqueSolution>(r) &&
          chosen.size() < static_cast<std::size_t>(n)) {
        cover_by_minimal(all, n, i + 1, chosen, idx, covered);
      }
    }
    chosen.pop_back();
    idx.pop_back();
  }
}

}  // namespace

MinimalityResult check_minimal_balanced(std::span<const Coalition> coalitions, int n) {
  if (coalitions.empty()) throw std::invalid_argument("empty collection");
  for (Coalition c : coalitions) {
    if (c.empty() || c.bits > full_mask(n)) throw std::invalid_argument("invalid coalition");
  }
  RatVector ones(static_cast<std::size_t>(n), Rational(1));
  SolveResult r = solve_unique(incidence_matrix(coalitions, n), ones);
  if (auto* u = std::get_if<UniqueSolution>(&r)) {
    if (std::all_of(u->x.begin(), u->x.end(), [](const Rational& w) { return w > 0; })) {
      return Minimal{std::move(u->x)};
    }
    return NotBalanced{};
  }
  if (std::holds_alternative<NoSolution>(r)) return NotBalanced{};
  // Dependent columns: balanced iff every member lies in a minimal balanced
  // subcollection.
  std::vector<bool> covered(coalitions.size(), false);
  std::vector<Coalition> chosen;
  std::vector<std::size_t> idx;
  cover_by_minimal(coalitions, n, 0, chosen, idx, covered);
  if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
    return BalancedNotMinimal{};
  }
  return NotBalanced{};
}

bool is_sound_minimal_balanced(const WeightedCollection& c, int n) {
  if (c.coalitions.empty() || c.size() > static_cast<std::size_t>(n)) return false;
  if (c.weights.size() != c.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.weights[i] <= 0 || c.coalitions[i].empty() ||
        c.coalitions[i].bits > full_mask(n)) {
      return false;
    }
    if (i > 0 && !(c.coalitions[i - 1] < c.coalitions[i])) return false;
  }
  for (int p = 1; p <= n; ++p) {
    Rational sum = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c.coalitions[i].contains(p)) sum += c.weights[i];
    if (sum != 1) return false;
  }
  std::vector<std::uint32_t> masks;
  for (Coalition s : c.coalitions) masks.push_back(s.bits);
  return rank_of_masks(masks, n) == c.size();
}

RegularHypergraph to_regular_hypergraph(const WeightedCollection& c) {
  BigInt depth = 1;
  for (const Rational& w : c.weights) {
    mpz_lcm(depth.get_mpz_t(), depth.get_mpz_t(), w.get_den_mpz_t());
  }
  if (!depth.fits_slong_p()) throw std::overflow_error("depth exceeds 64 bits");
  RegularHypergraph h;
  h.depth = depth.get_si();
  for (const Rational& w : c.weights) {
    BigInt m = w.get_num() * (depth / w.get_den());
    if (!m.fits_slong_p()) throw std::overflow_error("multiplicity exceeds 64 bits");
    h.multiplicities.push_back(m.get_si());
  }
  return h;
}

std::string describe(std::span<const Coalition> coalitions) {
  std::string out;
  for (Coalition s : coalitions) {
    if (!out.empty()) out += ' ';
    out += '{' + to_key(s) + '}';
  }
  return out;
}

}  // namespace mbc
