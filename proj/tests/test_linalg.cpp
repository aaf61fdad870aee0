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

#include <random>

#include "doctest.h"
#include "mbc/collection.hpp"
#include "mbc/linalg.hpp"
#include "support.hpp"

using namespace mbc;
using namespace mbc::testing;

namespace {

RatMatrix columns(std::initializer_list<std::initializer_list<const char*>> cols) {
  std::vector<RatVector> cs;
  for (auto c : cols) cs.push_back(rats(c));
  return RatMatrix::from_columns(cs, cs.front().size());
}

RatVector ones(std::size_t n) { return RatVector(n, Rational(1)); }

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> zero(0, 2);
  RatMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = zero(rng) == 0 ? Rational(0) : make_rational(d(rng), den(rng));
  return a;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(columns({{"1", "0"}, {"0", "1"}, {"1", "1"}})) == 2);
  RatMatrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK(rank(id) == 3);
  CHECK(rank(RatMatrix(2, 2)) == 0);
  const std::uint32_t masks[] = {0b01, 0b10, 0b11};
  CHECK(rank_of_masks(masks, 2) == 2);
}

TEST_CASE("solve_unique examples") {
  const auto r = solve_unique(
      columns({{"1", "1", "1", "0"}, {"1", "1", "0", "1"}, {"1", "0", "1/10", "1"},
               {"0", "1/5", "1/10", "1/2"}}),
      ones(4));
  REQUIRE(std::holds_alternative<UniqueSolution>(r));
  CHECK(std::get<UniqueSolution>(r).x == rats({"25/31", "-4/31", "10/31", "50/31"}));

  const auto single = solve_unique(columns({{"1", "1", "1"}}), ones(3));
  REQUIRE(std::holds_alternative<UniqueSolution>(single));
  CHECK(std::get<UniqueSolution>(single).x == rats({"1"}));

  const auto pairs =
      solve_unique(columns({{"1", "1", "0"}, {"1", "0", "1"}, {"0", "1", "1"}}), ones(3));
  REQUIRE(std::holds_alternative<UniqueSolution>(pairs));
  CHECK(std::get<UniqueSolution>(pairs).x == rats({"1/2", "1/2", "1/2"}));

  CHECK(std::holds_alternative<NoSolution>(
      solve_unique(columns({{"1", "1", "0"}, {"1", "0", "1"}}), ones(3))));
  CHECK(std::holds_alternative<NonUnique>(
      solve_unique(columns({{"1", "0"}, {"0", "1"}, {"1", "1"}}), ones(2))));
}

TEST_CASE("kernel examples") {
  // Orthogonal complement of the span of {3,4,5}, {2,3}, {1,3} on five players.
  const RatMatrix a = incidence_matrix(coalitions({"3,4,5", "2,3", "1,3"}, 5), 5);
  const auto basis = left_kernel_basis(a);
  CHECK(basis.size() == 2);
  for (const auto& y : basis)
    for (std::size_t c = 0; c < a.cols(); ++c) CHECK(dot(y, a.column(c)) == 0);
  // Each basis vector lies in span{(-1,-1,1,-1,0), (0,0,0,-1,1)}.
  RatMatrix expected = columns({{"-1", "-1", "1", "-1", "0"}, {"0", "0", "0", "-1", "1"}});
  for (const auto& y : basis) CHECK(in_column_span(expected, y));

  RatMatrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK(kernel_basis(id).empty());

  const auto twin = kernel_basis(columns({{"1"}, {"1"}}));
  REQUIRE(twin.size() == 1);
  CHECK(twin[0][0] == -twin[0][1]);
  CHECK(twin[0][0] != 0);
}

TEST_CASE("random matrices: rank symmetry, solve and kernel identities") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int k = 0; k < 300; ++k) {
    const RatMatrix a = random_matrix(rng, dim(rng), dim(rng));
    const std::size_t r = rank(a);
    CHECK(r == rank(a.transposed()));
    for (const auto& x : kernel_basis(a)) CHECK(a.multiply(x) == RatVector(a.rows()));
    CHECK(kernel_basis(a).size() == a.cols() - r);
    for (const auto& y : left_kernel_basis(a)) CHECK(a.transposed().multiply(y) == RatVector(a.cols()));

    RatVector b(a.rows());
    std::uniform_int_distribution<int> d(-2, 2);
    for (auto& v : b) v = d(rng);
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
      aug(i, a.cols()) = b[i];
    }
    const std::size_t ra = rank(aug);
    const auto s = solve_unique(a, b);
    if (auto* u = std::get_if<UniqueSolution>(&s)) {
      CHECK(a.multiply(u->x) == b);
      CHECK(r == a.cols());
    } else if (std::holds_alternative<NonUnique>(s)) {
      CHECK(r < a.cols());
      CHECK(ra == r);
    } else {
      CHECK(ra > r);
    }
    CHECK(in_column_span(a, b) == (ra == r));
  }
}

TEST_CASE("mask rank agrees with exact rank") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    const int n = 1 + static_cast<int>(rng() % 7);
    std::vector<std::uint32_t> masks;
    std::vector<Coalition> cs;
    const int count = 1 + static_cast<int>(rng() % 8);
    for (int j = 0; j < count; ++j) {
      const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % full_mask(n));
      masks.push_back(m);
      cs.emplace_back(m);
    }
    CHECK(rank_of_masks(masks, n) == rank(incidence_matrix(cs, n)));
  }
}
