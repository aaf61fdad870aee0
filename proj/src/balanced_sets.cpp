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

#include "mbc/balanced_sets.hpp"

#include <algorithm>
#include <stdexcept>

namespace mbc {

std::optional<std::vector<Rational>> minimal_balanced_weights(std::span<const RatVector> z, int n) {
  if (z.empty() || z.size() > static_cast<std::size_t>(n)) return std::nullopt;
  RatMatrix a = RatMatrix::from_columns(z, static_cast<std::size_t>(n));
  SolveResult r = solve_unique(a, RatVector(static_cast<std::size_t>(n), Rational(1)));
  auto* u = std::get_if<UniqueSolution>(&r);
  if (u == nullptr) return std::nullopt;
  if (!std::all_of(u->x.begin(), u->x.end(), [](const Rational& d) { return d > 0; })) {
    return std::nullopt;
  }
  return std::move(u->x);
}

namespace {

// Chosen vectors kept in reduced row echelon form, each reduced row tracked
// as a combination of the chosen vectors. Since every entry of 1^N is 1, the
// combination expressing 1^N is the sum of the reduced rows' combinations.
class SpanState {
 public:
  explicit SpanState(std::size_t n) : n_(n) {}

  std::size_t size() const { return rows_.size(); }

  bool add(const RatVector& v) {
    const std::size_t id = rows_.size();
    RatVector row = v;
    std::vector<Rational> coef(id + 1);
    coef[id] = 1;
    for (auto& c : coefs_) c.emplace_back(0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = row[pivots_[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (rows_[r][j] != 0) row[j] -= f * rows_[r][j];
      for (std::size_t j = 0; j <= id; ++j)
        if (coefs_[r][j] != 0) coef[j] -= f * coefs_[r][j];
    }
    std::size_t pc = 0;
    while (pc < n_ && row[pc] == 0) ++pc;
    if (pc == n_) {
      for (auto& c : coefs_) c.pop_back();
      return false;
    }
    const Rational inv = 1 / row[pc];
    for (auto& x : row) x *= inv;
    for (auto& x : coef) x *= inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = rows_[r][pc];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (row[j] != 0) rows_[r][j] -= f * row[j];
      for (std::size_t j = 0; j <= id; ++j)
        if (coef[j] != 0) coefs_[r][j] -= f * coef[j];
    }
    rows_.push_back(std::move(row));
    coefs_.push_back(std::move(coef));
    pivots_.push_back(pc);
    return true;
  }

  // Weights expressing 1^N when it lies in the span.
  std::optional<std::vector<Rational>> ones_combination() const {
    RatVector residual(n_, Rational(1));
    for (const auto& row : rows_)
      for (std::size_t j = 0; j < n_; ++j)
        if (row[j] != 0) residual[j] -= row[j];
    for (const auto& x : residual)
      if (x != 0) return std::nullopt;
    std::vector<Rational> w(rows_.size());
    for (const auto& c : coefs_)
      for (std::size_t j = 0; j < c.size(); ++j) w[j] += c[j];
    return w;
  }

 private:
  std::size_t n_;
  std::vector<RatVector> rows_;
  std::vector<std::vector<Rational>> coefs_;
  std::vector<std::size_t> pivots_;
};

bool search(std::span<const RatVector> vectors, int n, std::size_t start, const SpanState& state,
            std::vector<std::size_t>& chosen,
            const std::function<bool(const IndexedBalancedSet&)>& visit) {
  for (std::size_t i = start; i < vectors.size(); ++i) {
    SpanState next = state;
    if (!next.add(vectors[i])) continue;
    chosen.push_back(i);
    bool keep_going = true;
    if (auto w = next.ones_combination()) {
      // 1^N is spanned: supersets cannot be minimal, so this is a leaf.
      if (std::all_of(w->begin(), w->end(), [](const Rational& d) { return d > 0; })) {
        keep_going = visit(IndexedBalancedSet{chosen, std::move(*w)});
      }
    } else if (next.size() < static_cast<std::size_t>(n)) {
      keep_going = search(vectors, n, i + 1, next, chosen, visit);
    }
    chosen.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

void for_each_minimal_balanced_subset(
    std::span<const RatVector> vectors, int n,
    const std::function<bool(const IndexedBalancedSet&)>& visit) {
  for (const auto& v : vectors) {
    if (v.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("vector length mismatch");
  }
  std::vector<std::size_t> chosen;
  search(vectors, n, 0, SpanState(static_cast<std::size_t>(n)), chosen, visit);
}

std::vector<IndexedBalancedSet> all_minimal_balanced_subsets(std::span<const RatVector> vectors,
                                                             int n) {
  std::vector<IndexedBalancedSet> out;
  for_each_minimal_balanced_subset(vectors, n, [&](const IndexedBalancedSet& z) {
    out.push_back(z);
    return true;
  });
  return out;
}

bool mbs_candidate_filter(const WeightedCollection& collection, Coalition s_prime,
                          const RatVector& z, int n) {
  if (!collection.contains(s_prime)) throw std::invalid_argument("S' is not in the collection");
  if (z.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("vector length mismatch");
  for (int i = 1; i <= n; ++i) {
    const Rational& zi = z[static_cast<std::size_t>(i - 1)];
    if (zi < 0 || (zi > 0) != s_prime.contains(i)) {
      throw std::invalid_argument("z must be positive exactly on S'");
    }
  }
  std::vector<Coalition> others;
  for (Coalition s : collection.coalitions)
    if (s != s_prime) others.push_back(s);
  // Independence: z is not orthogonal to the whole orthogonal complement of
  // the remaining columns.
  bool independent = false;
  if (others.empty()) {
    independent = true;
  } else {
    for (const RatVector& y : left_kernel_basis(incidence_matrix(others, n))) {
      Rational d = 0;
      for (std::size_t j = 0; j < y.size(); ++j) d += y[j] * z[j];
      if (d != 0) {
        independent = true;
        break;
      }
    }
  }
  return independent && in_column_span(incidence_matrix(collection.coalitions, n), z);
}

}  // namespace mbc
