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

#include "mbc/game_props.hpp"

#include <algorithm>
#include <limits>

#include "mbc/peleg.hpp"

namespace mbc {
namespace {

constexpr std::int64_t kIntLimit = std::int64_t{1} << 62;

bool scaled_fits(const Rational& v, const BigInt& scale, std::int64_t& out) {
  BigInt num = v.get_num() * scale;
  BigInt q;
  BigInt r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), v.get_den_mpz_t());
  if (r != 0 || !q.fits_slong_p()) return false;
  const long x = q.get_si();
  if (x >= kIntLimit || x <= -kIntLimit) return false;
  out = x;
  return true;
}

}  // namespace

ValueTable::ValueTable(std::vector<Rational> dense) : rats_(std::move(dense)) {
  for (const Rational& v : rats_) {
    mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), v.get_den_mpz_t());
  }
  use_int_ = true;
  ints_.resize(rats_.size());
  for (std::size_t i = 0; i < rats_.size() && use_int_; ++i) {
    use_int_ = scaled_fits(rats_[i], scale_, ints_[i]);
  }
  if (!use_int_) ints_.clear();
}

void ValueTable::set(std::uint32_t mask, const Rational& value) {
  rats_.at(mask) = value;
  if (use_int_ && !scaled_fits(value, scale_, ints_[mask])) {
    use_int_ = false;
    ints_.clear();
  }
}

int ValueTable::compare_to_grand(const MbcDatabase& db, std::size_t i) const {
  const auto masks = db.masks(i);
  const auto mult = db.multiplicities(i);
  const std::size_t grand = rats_.size() - 1;
  if (use_int_) {
    __int128 sum = 0;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      sum += static_cast<__int128>(mult[j]) * ints_[masks[j]];
    }
    const __int128 rhs = static_cast<__int128>(db.depth(i)) * ints_[grand];
    return sum < rhs ? -1 : (sum > rhs ? 1 : 0);
  }
  Rational sum = 0;
  for (std::size_t j = 0; j < masks.size(); ++j) {
    sum += Rational(BigInt(static_cast<long>(mult[j]))) * rats_[masks[j]];
  }
  const Rational rhs = Rational(BigInt(static_cast<long>(db.depth(i)))) * rats_[grand];
  return cmp(sum, rhs) < 0 ? -1 : (cmp(sum, rhs) > 0 ? 1 : 0);
}

std::optional<std::size_t> first_violation(const ValueTable& values, const MbcDatabase& db) {
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (values.compare_to_grand(db, i) > 0) return i;
  }
  return std::nullopt;
}

namespace {

void check_db(const Game& g, const MbcDatabase& db) {
  if (g.n() != db.n()) {
    throw std::invalid_argument("database has n=" + std::to_string(db.n()) +
                                " but the game has n=" + std::to_string(g.n()));
  }
  if (db.restricted()) {
    throw std::invalid_argument("a restricted database cannot decide game properties");
  }
}

void check_coalition(Coalition s, int n) {
  if (s.empty()) throw std::invalid_argument("empty coalition");
  if (s.bits > full_mask(n)) throw std::out_of_range("coalition outside N");
}

ValueTable vS_table(const Game& g, Coalition s) {
  ValueTable t(g);
  if (s != g.grand()) {
    t.set(complement(s, g.n()).bits, g.grand_value() - g.value(s));
  }
  return t;
}

}  // namespace

bool is_balanced_game(const Game& g, const MbcDatabase& db) {
  check_db(g, db);
  return !first_violation(ValueTable(g), db).has_value();
}

const Rational& DerivedGame::value(Coalition s) const {
  auto it = overrides.find(s);
  return it == overrides.end() ? base.value(s) : it->second;
}

Game DerivedGame::materialize() const {
  Game out = base;
  for (const auto& [s, v] : overrides) out.set_value(s, v);
  return out;
}

DerivedGame derived_vS(const Game& g, Coalition s) {
  Coalition one[] = {s};
  return derived_vSS(g, one);
}

DerivedGame derived_vSS(const Game& g, std::span<const Coalition> family) {
  DerivedGame d{g, {}};
  for (Coalition s : family) {
    check_coalition(s, g.n());
    if (s == g.grand()) continue;
    d.overrides[complement(s, g.n())] = g.grand_value() - g.value(s);
  }
  return d;
}

bool is_exact(Coalition s, const Game& g, const MbcDatabase& db) {
  check_db(g, db);
  check_coalition(s, g.n());
  return !first_violation(vS_table(g, s), db).has_value();
}

std::vector<Coalition> effective_set(const Game& g, const MbcDatabase& db) {
  check_db(g, db);
  const ValueTable t(g);
  MemberSet tight;
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (t.compare_to_grand(db, i) == 0) tight |= db.members(i);
  }
  std::vector<Coalition> out;
  for (std::uint32_t m = 1; m <= g.grand().bits; ++m)
    if (tight.test(m)) out.emplace_back(m);
  return out;
}

bool is_strictly_vital_exact(Coalition s, const Game& g, const MbcDatabase& db) {
  check_db(g, db);
  check_coalition(s, g.n());
  const ValueTable t = vS_table(g, s);
  // Proper nonempty subsets of S.
  MemberSet inside;
  for (std::uint32_t sub = (s.bits - 1) & s.bits; sub != 0; sub = (sub - 1) & s.bits) {
    inside.set(sub);
  }
  for (std::size_t i = 0; i < db.size(); ++i) {
    const int c = t.compare_to_grand(db, i);
    if (c > 0) return false;
    if (c == 0 && (db.members(i) & inside).any()) return false;
  }
  return true;
}

std::vector<Coalition> strictly_vital_exact_set(const Game& g, const MbcDatabase& db) {
  std::vector<Coalition> out;
  for (std::uint32_t m = 1; m < g.grand().bits; ++m) {
    if (is_strictly_vital_exact(Coalition{m}, g, db)) out.emplace_back(m);
  }
  return out;
}

Game reduced_game(const Game& g, Coalition s, const RatVector& z) {
  check_coalition(s, g.n());
  const Coalition rest = complement(s, g.n());
  const std::vector<int> inside = players_of(s);
  const std::vector<int> outside = players_of(rest);
  if (z.size() != outside.size()) throw std::invalid_argument("payoff vector size mismatch");
  const int k = static_cast<int>(inside.size());

  // z(Q) for every Q inside S^c, indexed by global mask.
  std::map<std::uint32_t, Rational> z_of;
  for (std::uint32_t q = rest.bits;; q = (q - 1) & rest.bits) {
    Rational sum = 0;
    for (std::size_t j = 0; j < outside.size(); ++j)
      if (Coalition{q}.contains(outside[j])) sum += z[j];
    z_of[q] = sum;
    if (q == 0) break;
  }

  Game out(k);
  for (std::uint32_t local = 1; local <= full_mask(k); ++local) {
    Coalition t;
    for (int i = 0; i < k; ++i)
      if (local >> i & 1U) t.bits |= 1U << (inside[static_cast<std::size_t>(i)] - 1);
    if (t == s) {
      out.set_value(Coalition{local}, g.grand_value() - z_of[rest.bits]);
      continue;
    }
    std::optional<Rational> best;
    for (const auto& [q, zq] : z_of) {
      Rational candidate = g.value(t | Coalition{q}) - zq;
      if (!best || candidate > *best) best = std::move(candidate);
    }
    out.set_value(Coalition{local}, *best);
  }
  return out;
}

void MbcCache::put(std::shared_ptr<const MbcDatabase> db) {
  std::lock_guard<std::mutex> lock(mu_);
  dbs_[db->n()] = std::move(db);
}

std::shared_ptr<const MbcDatabase> MbcCache::get(int n) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = dbs_[n];
  if (!slot) slot = std::make_shared<const MbcDatabase>(peleg(n));
  return slot;
}

bool extends_to_core(Coalition s, const RatVector& y, const Game& g, MbcCache& cache) {
  check_coalition(s, g.n());
  const std::vector<int> inside = players_of(s);
  if (y.size() != inside.size()) throw std::invalid_argument("payoff vector size mismatch");
  if (s == g.grand()) return core_system(g).contains(y);
  const Coalition rest = complement(s, g.n());
  Rational y_total = 0;
  for (const auto& v : y) y_total += v;
  // Coalitions containing all of S^c: the reduced game only constrains S^c
  // itself through v(N) - y(S).
  const Rational budget = g.grand_value() - y_total;
  for (std::uint32_t q = s.bits; q != 0; q = (q - 1) & s.bits) {
    Rational yq = 0;
    for (std::size_t i = 0; i < inside.size(); ++i)
      if (Coalition{q}.contains(inside[i])) yq += y[i];
    if (g.value(rest | Coalition{q}) - yq > budget) return false;
  }
  const Game reduced = reduced_game(g, rest, y);
  return is_balanced_game(reduced, *cache.get(reduced.n()));
}

bool is_extendable(Coalition s, const Game& g, MbcCache& cache) {
  check_coalition(s, g.n());
  if (s == g.grand()) return true;
  VertexOptions options;
  options.max_free_dim = std::max<std::size_t>(options.max_free_dim, kMaxGamePlayers);
  for (const RatVector& vertex : enumerate_vertices(subgame_core_system(g, s), options)) {
    if (!extends_to_core(s, vertex, g, cache)) return false;
  }
  return true;
}

namespace {

// Feasibility test shared by the single and the enumerating entry points.
// `candidates` are the database collections that could lie inside F'.
struct FeasibilityContext {
  const Game& g;
  const MbcDatabase& db;
  const ValueTable base;
  std::vector<std::size_t> candidates;

  FeasibilityContext(const Game& game, const MbcDatabase& database,
                     std::span<const Coalition> family)
      : g(game), db(database), base(game) {
    std::vector<Coalition> reach(family.begin(), family.end());
    for (Coalition s : family)
      if (s != game.grand()) reach.push_back(complement(s, game.n()));
    const MemberSet allowed = member_set(reach);
    for (std::size_t i = 0; i < db.size(); ++i)
      if ((db.members(i) & ~allowed).none()) candidates.push_back(i);
  }

  bool feasible(std::span<const Coalition> family, std::span<const Coalition> collection) const {
    MemberSet in_collection = member_set(collection);
    std::vector<Coalition> allowed_list;
    std::vector<Coalition> comps;
    ValueTable values = base;
    for (Coalition s : collection) {
      if (s == g.grand()) return false;  // x(N) < v(N) is impossible
      const Coalition c = complement(s, g.n());
      comps.push_back(c);
      values.set(c.bits, g.grand_value() - g.value(s));
    }
    for (Coalition t : family)
      if (!in_collection.test(t.bits)) allowed_list.push_back(t);
    allowed_list.insert(allowed_list.end(), comps.begin(), comps.end());
    const MemberSet allowed = member_set(allowed_list);
    const MemberSet comp_set = member_set(comps);
    for (std::size_t i : candidates) {
      const MemberSet& m = db.members(i);
      if ((m & ~allowed).any()) continue;
      const int c = values.compare_to_grand(db, i);
      if ((m & comp_set).any() ? c >= 0 : c > 0) return false;
    }
    return true;
  }
};

void check_family(std::span<const Coalition> family, int n) {
  for (Coalition s : family) check_coalition(s, n);
  for (std::size_t i = 1; i < family.size(); ++i) {
    if (!(family[i - 1] < family[i])) {
      throw std::invalid_argument("family must be sorted without duplicates");
    }
  }
}

}  // namespace

bool is_feasible(std::span<const Coalition> collection, std::span<const Coalition> family,
                 const Game& g, const MbcDatabase& db) {
  check_db(g, db);
  check_family(family, g.n());
  const MemberSet fam = member_set(family);
  for (Coalition s : collection) {
    check_coalition(s, g.n());
    if (!fam.test(s.bits)) throw std::invalid_argument("collection is not inside the family");
  }
  FeasibilityContext ctx(g, db, family);
  return ctx.feasible(family, collection);
}

bool is_core_describing(std::span<const Coalition> family, const Game& g) {
  for (Coalition s : family) check_coalition(s, g.n());
  VertexOptions options;
  options.max_free_dim = std::max<std::size_t>(options.max_free_dim, kMaxGamePlayers);
  const Decomposition d = decompose(family_system(g, family), options);
  if (d.empty) return true;
  if (!d.bounded()) {
    throw UnboundedFamilyError("the polyhedron described by the family is unbounded");
  }
  const MemberSet fam = member_set(family);
  for (std::uint32_t m = 1; m < g.grand().bits; ++m) {
    if (fam.test(m)) continue;
    const RatVector c = indicator(Coalition{m}, g.n());
    for (const RatVector& x : d.vertices) {
      Rational total = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (c[i] != 0) total += x[i];
      if (total < g.value(Coalition{m})) return false;
    }
  }
  return true;
}

bool is_blocking(std::span<const Coalition> collection, int n) {
  return collection.size() == 2 && (collection[0] | collection[1]) == grand_coalition(n);
}

bool has_minimal_extendable(std::span<const Coalition> collection,
                            std::span<const Coalition> extendable) {
  for (Coalition s : collection) {
    bool minimal = true;
    for (Coalition t : collection) {
      if (t != s && t.subset_of(s)) {
        minimal = false;
        break;
      }
    }
    if (minimal && std::find(extendable.begin(), extendable.end(), s) != extendable.end()) {
      return true;
    }
  }
  return false;
}

std::vector<FeasibleCollectionReport> feasible_collections(
    std::span<const Coalition> family, const Game& g, const MbcDatabase& db,
    std::span<const Coalition> extendable) {
  check_db(g, db);
  check_family(family, g.n());
  if (family.size() > 24) throw std::length_error("family too large to enumerate subsets");
  FeasibilityContext ctx(g, db, family);
  std::vector<FeasibleCollectionReport> out;
  const std::uint32_t limit = 1U << family.size();
  std::vector<Coalition> collection;
  for (std::uint32_t pick = 1; pick < limit; ++pick) {
    collection.clear();
    for (std::size_t i = 0; i < family.size(); ++i)
      if (pick >> i & 1U) collection.push_back(family[i]);
    if (!ctx.feasible(family, collection)) continue;
    FeasibleCollectionReport r;
    r.collection = collection;
    r.feasible = true;
    r.blocking = is_blocking(collection, g.n());
    r.has_min_extendable = has_minimal_extendable(collection, extendable);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.collection.size() != b.collection.size()) return a.collection.size() < b.collection.size();
    return a.collection < b.collection;
  });
  return out;
}

}  // namespace mbc
