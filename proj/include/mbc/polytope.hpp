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

#ifndef MBC_POLYTOPE_HPP
#define MBC_POLYTOPE_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "mbc/game.hpp"
#include "mbc/linalg.hpp"
#include "mbc/mbc_database.hpp"

namespace mbc {

struct Constraint {
  RatVector a;
  Rational b;
};

// {x : a.x = b for eq rows, a.x >= b for ineq rows}.
struct LinearSystem {
  std::size_t dim = 0;
  std::vector<Constraint> eq;
  std::vector<Constraint> ineq;

  void add_eq(RatVector a, Rational b);
  void add_ineq(RatVector a, Rational b);
  bool contains(const RatVector& x) const;
};

struct VertexOptions {
  // Cap on dim - rank(equalities).
  std::size_t max_free_dim = 8;
};

// All vertices, deduplicated and sorted. Empty when the polyhedron has none,
// which for a pointed polyhedron means it is empty.
std::vector<RatVector> enumerate_vertices(const LinearSystem& p, const VertexOptions& options = {});

struct Unbounded {};
struct Infeasible {};
struct Minimum {
  Rational value;
};
using MinResult = std::variant<Minimum, Unbounded, Infeasible>;

MinResult min_over(const LinearSystem& p, const RatVector& c, const VertexOptions& options = {});

// Minkowski-Weyl pieces of a polyhedron: P = conv(vertices) + cone(rays) +
// span(lineality), with vertices and rays taken in a complement of the
// lineality space.
struct Decomposition {
  bool empty = false;
  std::vector<RatVector> vertices;
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;

  bool bounded() const { return !empty && rays.empty() && lineality.empty(); }
};

Decomposition decompose(const LinearSystem& p, const VertexOptions& options = {});

MinResult min_over(const Decomposition& d, const RatVector& c);

// Core of (N, v): x(N) = v(N), x(S) >= v(S) for every other coalition.
LinearSystem core_system(const Game& g);

// Core of the subgame on S, in |S| variables ordered by player index.
LinearSystem subgame_core_system(const Game& g, Coalition s);

// x(N) = v(N) and x(S) >= v(S) for S in family (N itself is skipped).
LinearSystem family_system(const Game& g, std::span<const Coalition> family);

// Characteristic vector of s over n coordinates.
RatVector indicator(Coalition s, int n);

// Minimal balanced collections as vertices of the weight polytope; n <= 4.
MbcDatabase mbc_via_vertices(int n);

}  // namespace mbc

#endif  // MBC_POLYTOPE_HPP
