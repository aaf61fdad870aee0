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

#include "mbc/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mbc {

void LinearSystem::add_eq(RatVector a, Rational b) {
  if (a.size() != dim) throw std::invalid_argument("constraint dimension mismatch");
  eq.push_back({std::move(a), std::move(b)});
}

void LinearSystem::add_ineq(RatVector a, Rational b) {
  if (a.size() != dim) throw std::invalid_argument("constraint dimension mismatch");
  ineq.push_back({std::move(a), std::move(b)});
}

namespace {

Rational dot(const RatVector& a, const RatVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && x[i] != 0) s += a[i] * x[i];
  return s;
}

// Reduced row echelon form grown one row at a time. Rows carry the
// right-hand side in their last slot.
class Rref {
 public:
  explicit Rref(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }

  enum class Added { kIndependent, kDependent, kInconsistent };

  Added add(const RatVector& a, const Rational& b) {
    RatVector row(a);
    row.push_back(b);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = row[pivots_[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= dim_; ++j)
        if (rows_[r][j] != 0) row[j] -= f * rows_[r][j];
    }
    std::size_t pc = 0;
    while (pc < dim_ && row[pc] == 0) ++pc;
    if (pc == dim_) return row[dim_] == 0 ? Added::kDependent : Added::kInconsistent;
    const Rational inv = 1 / row[pc];
    for (std::size_t j = pc; j <= dim_; ++j) row[j] *= inv;
    for (auto& other : rows_) {
      const Rational f = other[pc];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= dim_; ++j)
        if (row[j] != 0) other[j] -= f * row[j];
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(pc);
    return Added::kIndependent;
  }

  // The unique point once rank == dim.
  RatVector point() const {
    RatVector x(dim_);
    for (std::size_t r = 0; r < rows_.size(); ++r) x[pivots_[r]] = rows_[r][dim_];
    return x;
  }

  // Direction spanning the kernel when rank == dim - 1.
  RatVector kernel_direction() const {
    std::vector<bool> is_pivot(dim_, false);
    for (std::size_t pc : pivots_) is_pivot[pc] = true;
    std::size_t free = 0;
    while (is_pivot[free]) ++free;
    RatVector y(dim_);
    y[free] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) y[pivots_[r]] = -rows_[r][free];
    return y;
  }

 private:
  std::size_t dim_;
  std::vector<RatVector> rows_;
  std::vector<std::size_t> pivots_;
};

// Depth-first search over independent sets of inequality rows, calling
// visit(state) whenever the rank reaches target.
template <typename Visit>
void search_tight_sets(const std::vector<Constraint>& ineq, const Rref& state, std::size_t start,
                       std::size_t target, bool homogeneous, Visit& visit) {
  if (state.rank() == target) {
    visit(state);
    return;
  }
  const std::size_t needed = target - state.rank();
  for (std::size_t i = start; i + needed <= ineq.size(); ++i) {
    Rref next = state;
    const Rational rhs = homogeneous ? Rational(0) : ineq[i].b;
    if (next.add(ineq[i].a, rhs) != Rref::Added::kIndependent) continue;
    search_tight_sets(ineq, next, i + 1, target, homogeneous, visit);
  }
}

struct Prepared {
  Rref base;
  bool inconsistent = false;
};

Prepared prepare(const LinearSystem& p, const std::vector<Constraint>& extra_eq, bool homogeneous,
                 const VertexOptions& options) {
  Prepared out{Rref(p.dim)};
  auto add_all = [&](const std::vector<Constraint>& rows) {
    for (const auto& c : rows) {
      const Rational rhs = homogeneous ? Rational(0) : c.b;
      if (out.base.add(c.a, rhs) == Rref::Added::kInconsistent) out.inconsistent = true;
    }
  };
  add_all(p.eq);
  add_all(extra_eq);
  if (p.dim - out.base.rank() > options.max_free_dim) {
    throw std::length_error("polyhedron dimension " + std::to_string(p.dim - out.base.rank()) +
                            " exceeds the vertex enumeration cap " +
                            std::to_string(options.max_free_dim));
  }
  return out;
}

std::vector<RatVector> vertices_with(const LinearSystem& p, const std::vector<Constraint>& extra_eq,
                                     const VertexOptions& options) {
  Prepared prep = prepare(p, extra_eq, false, options);
  if (prep.inconsistent) return {};
  std::set<RatVector> found;
  auto visit = [&](const Rref& s) {
    RatVector x = s.point();
    for (const auto& c : p.ineq)
      if (dot(c.a, x) < c.b) return;
    found.insert(std::move(x));
  };
  search_tight_sets(p.ineq, prep.base, 0, p.dim, false, visit);
  return {found.begin(), found.end()};
}

// Basis of {y : every eq and ineq row annihilates y}.
std::vector<RatVector> lineality_basis(const LinearSystem& p) {
  const std::size_t rows = p.eq.size() + p.ineq.size();
  if (rows == 0) {
    std::vector<RatVector> basis;
    for (std::size_t i = 0; i < p.dim; ++i) {
      RatVector e(p.dim);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  RatMatrix m(rows, p.dim);
  std::size_t r = 0;
  for (const auto* list : {&p.eq, &p.ineq})
    for (const auto& c : *list) {
      for (std::size_t j = 0; j < p.dim; ++j) m(r, j) = c.a[j];
      ++r;
    }
  return kernel_basis(m);
}

}  // namespace

bool LinearSystem::contains(const RatVector& x) const {
  if (x.size() != dim) return false;
  for (const auto& c : eq)
    if (dot(c.a, x) != c.b) return false;
  for (const auto& c : ineq)
    if (dot(c.a, x) < c.b) return false;
  return true;
}

std::vector<RatVector> enumerate_vertices(const LinearSystem& p, const VertexOptions& options) {
  return vertices_with(p, {}, options);
}

Decomposition decompose(const LinearSystem& p, const VertexOptions& options) {
  Decomposition d;
  // Split off the lineality space so the remaining polyhedron is pointed.
  d.lineality = lineality_basis(p);
  std::vector<Constraint> extra;
  for (const auto& l : d.lineality) extra.push_back({l, Rational(0)});
  d.vertices = vertices_with(p, extra, options);
  if (d.vertices.empty()) {
    d.empty = true;
    return d;
  }
  // Extreme rays of the (pointed) recession cone.
  Prepared cone = prepare(p, extra, true, options);
  if (cone.base.rank() >= p.dim) return d;
  std::set<RatVector> rays;
  auto visit = [&](const Rref& s) {
    RatVector y = s.kernel_direction();
    for (int sign = 0; sign < 2; ++sign) {
      bool in_cone = true;
      for (const auto& row : p.ineq) {
        if (dot(row.a, y) < 0) {
          in_cone = false;
          break;
        }
      }
      if (in_cone) {
        // Scale so the first nonzero coordinate is +-1 for deduplication.
        RatVector scaled = y;
        Rational lead = 0;
        for (const auto& v : scaled) {
          if (v != 0) {
            lead = abs(v);
            break;
          }
        }
        for (auto& v : scaled) v /= lead;
        rays.insert(std::move(scaled));
      }
      for (auto& v : y) v = -v;
    }
  };
  search_tight_sets(p.ineq, cone.base, 0, p.dim - 1, true, visit);
  d.rays.assign(rays.begin(), rays.end());
  return d;
}

MinResult min_over(const Decomposition& d, const RatVector& c) {
  if (d.empty) return Infeasible{};
  for (const auto& l : d.lineality)
    if (dot(c, l) != 0) return Unbounded{};
  for (const auto& r : d.rays)
    if (dot(c, r) < 0) return Unbounded{};
  Rational best = dot(c, d.vertices.front());
  for (const auto& v : d.vertices) best = std::min(best, dot(c, v));
  return Minimum{best};
}

MinResult min_over(const LinearSystem& p, const RatVector& c, const VertexOptions& options) {
  if (c.size() != p.dim) throw std::invalid_argument("objective dimension mismatch");
  return min_over(decompose(p, options), c);
}

RatVector indicator(Coalition s, int n) {
  RatVector v(static_cast<std::size_t>(n));
  for (int p : players_of(s)) v[static_cast<std::size_t>(p - 1)] = 1;
  return v;
}

LinearSystem core_system(const Game& g) {
  LinearSystem p;
  p.dim = static_cast<std::size_t>(g.n());
  p.add_eq(indicator(g.grand(), g.n()), g.grand_value());
  for (std::uint32_t m = 1; m < g.grand().bits; ++m) {
    p.add_ineq(indicator(Coalition{m}, g.n()), g.value(Coalition{m}));
  }
  return p;
}

LinearSystem subgame_core_system(const Game& g, Coalition s) {
  if (s.empty()) throw std::invalid_argument("empty coalition");
  const std::vector<int> players = players_of(s);
  const int k = static_cast<int>(players.size());
  LinearSystem p;
  p.dim = static_cast<std::size_t>(k);
  auto lift = [&](std::uint32_t local) {
    Coalition t;
    for (int i = 0; i < k; ++i)
      if (local >> i & 1U) t.bits |= 1U << (players[static_cast<std::size_t>(i)] - 1);
    return t;
  };
  p.add_eq(RatVector(p.dim, Rational(1)), g.value(s));
  for (std::uint32_t local = 1; local < full_mask(k); ++local) {
    RatVector a(p.dim);
    for (int i = 0; i < k; ++i)
      if (local >> i & 1U) a[static_cast<std::size_t>(i)] = 1;
    p.add_ineq(std::move(a), g.value(lift(local)));
  }
  return p;
}

LinearSystem family_system(const Game& g, std::span<const Coalition> family) {
  LinearSystem p;
  p.dim = static_cast<std::size_t>(g.n());
  p.add_eq(indicator(g.grand(), g.n()), g.grand_value());
  for (Coalition s : family) {
    if (s == g.grand()) continue;
    p.add_ineq(indicator(s, g.n()), g.value(s));
  }
  return p;
}

MbcDatabase mbc_via_vertices(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("vertex oracle supports n <= 4");
  const std::uint32_t full = full_mask(n);
  LinearSystem w;
  w.dim = full;
  for (int player = 1; player <= n; ++player) {
    RatVector a(w.dim);
    for (std::uint32_t m = 1; m <= full; ++m)
      if (Coalition{m}.contains(player)) a[m - 1] = 1;
    w.add_eq(std::move(a), 1);
  }
  for (std::uint32_t m = 1; m <= full; ++m) {
    RatVector a(w.dim);
    a[m - 1] = 1;
    w.add_ineq(std::move(a), 0);
  }
  std::vector<WeightedCollection> out;
  for (const RatVector& vertex : enumerate_vertices(w, {w.dim})) {
    WeightedCollection c;
    for (std::uint32_t m = 1; m <= full; ++m) {
      if (vertex[m - 1] != 0) {
        c.coalitions.emplace_back(m);
        c.weights.push_back(vertex[m - 1]);
      }
    }
    out.push_back(std::move(c));
  }
  return MbcDatabase(n, std::move(out));
}

}  // namespace mbc
