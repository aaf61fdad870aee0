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

#include "mbc/stability.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace mbc {

namespace {

using Clock = std::chrono::steady_clock;

void check_members(std::span<const Coalition> collection, std::span<const Coalition> family) {
  for (Coalition s : collection) {
    if (std::find(family.begin(), family.end(), s) == family.end()) {
      throw std::invalid_argument("collection member " + to_key(s) + " is not in the family");
    }
  }
}

bool in_list(std::span<const Coalition> list, Coalition s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

RatVector indicator_vector(Coalition s, int n) {
  RatVector v(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) v[static_cast<std::size_t>(i - 1)] = s.contains(i) ? 1 : 0;
  return v;
}

// Builds Omega following the family order; zs[k] and cs[k] belong to
// collection[k]. Returns the a-values alongside.
std::pair<OmegaSet, AValueTable> assemble(std::span<const Coalition> collection,
                                          std::span<const RatVector> zs,
                                          std::span<const Rational> cs,
                                          std::span<const Coalition> family, const Game& g) {
  const int n = g.n();
  OmegaSet omega;
  omega.n = n;
  AValueTable table;
  std::map<RatVector, std::size_t> seen;
  auto add = [&](RatVector z, OmegaEntry entry, const Rational& a) {
    auto [it, fresh] = seen.emplace(std::move(z), omega.vectors.size());
    if (fresh) {
      omega.vectors.push_back(it->first);
      omega.provenance.push_back({entry});
      table.values.push_back(a);
    } else {
      omega.provenance[it->second].push_back(entry);
      if (a > table.values[it->second]) table.values[it->second] = a;
    }
  };
  for (Coalition t : family) {
    auto pos = std::find(collection.begin(), collection.end(), t);
    if (pos == collection.end()) {
      add(indicator_vector(t, n), {OmegaSource::B, t}, g.value(t));
    } else {
      const auto k = static_cast<std::size_t>(pos - collection.begin());
      add(indicator_vector(complement(t, n), n), {OmegaSource::A, t},
          g.grand_value() - g.value(t));
      add(zs[k], {OmegaSource::C, t}, cs[k]);
    }
  }
  return {std::move(omega), std::move(table)};
}

bool in_b0(const OmegaSet& omega, const AValueTable& table, std::span<const std::size_t> members,
           const Game& g) {
  for (std::size_t i : members) {
    for (const OmegaEntry& e : omega.provenance[i]) {
      if (e.kind == OmegaSource::A && table.values[i] == g.grand_value() - g.value(e.source)) {
        return true;
      }
    }
  }
  return false;
}

bool shortcut_b0(const OmegaSet& omega, std::span<const std::size_t> members) {
  for (std::size_t i : members) {
    if (omega.has_kind(i, OmegaSource::A) && !omega.has_kind(i, OmegaSource::C)) return true;
  }
  return false;
}

Rational psi_of(const AValueTable& table, const IndexedBalancedSet& z) {
  Rational psi = 0;
  for (std::size_t k = 0; k < z.members.size(); ++k) psi += z.weights[k] * table.values[z.members[k]];
  return psi;
}

}  // namespace

std::vector<std::size_t> associated_indices(Coalition s, std::span<const Coalition> family,
                                            const MbcDatabase& db) {
  const int n = db.n();
  std::vector<bool> allowed(std::size_t{1} << n, false);
  for (int j : players_of(s)) allowed[singleton(j).bits] = true;
  allowed[complement(s, n).bits] = true;
  for (Coalition t : family)
    if (!t.subset_of(s)) allowed[t.bits] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < db.size(); ++i) {
    bool ok = true;
    bool has_singleton = false;
    for (std::uint32_t m : db.masks(i)) {
      if (!allowed[m]) {
        ok = false;
        break;
      }
      if (std::has_single_bit(m) && (m & s.bits) != 0) has_singleton = true;
    }
    if (ok && has_singleton) out.push_back(i);
  }
  return out;
}

std::vector<WeightedCollection> associated_mbcs(Coalition s, std::span<const Coalition> family,
                                                const MbcDatabase& db) {
  std::vector<WeightedCollection> out;
  for (std::size_t i : associated_indices(s, family, db)) out.push_back(db[i]);
  return out;
}

std::vector<Coalition> starred(const WeightedCollection& b, Coalition s) {
  std::vector<Coalition> out;
  for (Coalition t : b.coalitions)
    if (!(t.size() == 1 && t.subset_of(s))) out.push_back(t);
  return out;
}

bool is_admissible(const WeightedCollection& b, Coalition s,
                   std::span<const Coalition> collection, int n) {
  bool meets_collection = false;
  bool meets_complements = false;
  for (Coalition t : starred(b, s)) {
    if (in_list(collection, t)) meets_collection = true;
    for (Coalition r : collection)
      if (complement(r, n) == t) meets_complements = true;
  }
  return meets_collection || !meets_complements;
}

SystemProduct::SystemProduct(std::span<const Coalition> collection,
                             std::span<const Coalition> family, const MbcDatabase& db)
    : collection_(collection.begin(), collection.end()) {
  if (collection_.empty()) throw std::invalid_argument("empty collection");
  check_members(collection, family);
  size_ = 1;
  for (Coalition s : collection_) {
    std::vector<std::size_t> list;
    for (std::size_t i : associated_indices(s, family, db)) {
      if (is_admissible(db[i], s, collection_, db.n())) list.push_back(i);
    }
    const std::uint64_t k = list.size();
    if (k == 0) {
      size_ = 0;
    } else if (size_ != 0) {
      size_ = size_ > std::numeric_limits<std::uint64_t>::max() / k
                  ? std::numeric_limits<std::uint64_t>::max()
                  : size_ * k;
    }
    lists_.push_back(std::move(list));
  }
}

SystemProduct::Cursor::Cursor(const SystemProduct& p)
    : p_(&p), pos_(p.lists_.size(), 0), done_(p.empty()) {}

void SystemProduct::Cursor::next() {
  for (std::size_t k = pos_.size(); k-- > 0;) {
    if (++pos_[k] < p_->lists_[k].size()) return;
    pos_[k] = 0;
  }
  done_ = true;
}

std::vector<std::size_t> SystemProduct::system_at(const std::vector<std::size_t>& positions) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < positions.size(); ++k) out.push_back(lists_[k].at(positions[k]));
  return out;
}

std::optional<std::size_t> OmegaSet::index_of(const RatVector& z) const {
  auto it = std::find(vectors.begin(), vectors.end(), z);
  if (it == vectors.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vectors.begin());
}

bool OmegaSet::has_kind(std::size_t i, OmegaSource kind) const {
  return std::any_of(provenance[i].begin(), provenance[i].end(),
                     [&](const OmegaEntry& e) { return e.kind == kind; });
}

std::vector<RatVector> OmegaSet::of_kind(OmegaSource kind) const {
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (has_kind(i, kind)) out.push_back(vectors[i]);
  return out;
}

RatVector singleton_weight_vector(const WeightedCollection& b, Coalition s, int n) {
  RatVector z(static_cast<std::size_t>(n));
  for (int j : players_of(s)) z[static_cast<std::size_t>(j - 1)] = b.weight_of(singleton(j));
  return z;
}

Rational c_value(const WeightedCollection& b, Coalition s, const Game& g) {
  const DerivedGame vs = derived_vS(g, s);
  Rational c = g.grand_value();
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Coalition t = b.coalitions[k];
    if (t.size() == 1 && t.subset_of(s)) continue;
    c -= b.weights[k] * vs.value(t);
  }
  return c;
}

OmegaSet build_omega(std::span<const Coalition> collection,
                     std::span<const WeightedCollection> system,
                     std::span<const Coalition> family, int n) {
  if (system.size() != collection.size()) throw std::invalid_argument("system size mismatch");
  check_members(collection, family);
  // Values are irrelevant here; a zero game carries the structure.
  const Game zero(n);
  std::vector<RatVector> zs;
  std::vector<Rational> cs(collection.size());
  for (std::size_t k = 0; k < collection.size(); ++k)
    zs.push_back(singleton_weight_vector(system[k], collection[k], n));
  return assemble(collection, zs, cs, family, zero).first;
}

AValueTable a_values(const OmegaSet& omega, std::span<const Coalition> collection,
                     std::span<const WeightedCollection> system, const Game& g) {
  if (system.size() != collection.size()) throw std::invalid_argument("system size mismatch");
  AValueTable table;
  std::vector<bool> set(omega.size(), false);
  table.values.resize(omega.size());
  auto offer = [&](std::size_t i, const Rational& a) {
    if (!set[i] || a > table.values[i]) table.values[i] = a;
    set[i] = true;
  };
  for (std::size_t i = 0; i < omega.size(); ++i) {
    for (const OmegaEntry& e : omega.provenance[i]) {
      switch (e.kind) {
        case OmegaSource::A:
          offer(i, g.grand_value() - g.value(e.source));
          break;
        case OmegaSource::B:
          offer(i, g.value(e.source));
          break;
        case OmegaSource::C: {
          auto pos = std::find(collection.begin(), collection.end(), e.source);
          if (pos == collection.end()) throw std::invalid_argument("C-source outside collection");
          offer(i, c_value(system[static_cast<std::size_t>(pos - collection.begin())], e.source, g));
          break;
        }
      }
    }
  }
  return table;
}

OmegaBalancedSets minimal_balanced_sets(const OmegaSet& omega, const AValueTable& table,
                                        const Game& g) {
  OmegaBalancedSets out;
  for_each_minimal_balanced_subset(omega.vectors, omega.n, [&](const IndexedBalancedSet& z) {
    OmegaBalancedSet b;
    b.members = z.members;
    for (std::size_t i : z.members) b.set.vectors.push_back(omega.vectors[i]);
    b.set.weights = z.weights;
    b.psi = psi_of(table, z);
    b.in_b0 = in_b0(omega, table, z.members, g);
    if (b.in_b0 != shortcut_b0(omega, z.members)) ++out.shortcut_disagreements;
    out.all.push_back(std::move(b));
    return true;
  });
  return out;
}

bool system_condition_holds(const OmegaSet& omega, const AValueTable& table, const Game& g) {
  bool holds = false;
  for_each_minimal_balanced_subset(omega.vectors, omega.n, [&](const IndexedBalancedSet& z) {
    const Rational psi = psi_of(table, z);
    if (psi > g.grand_value() ||
        (psi == g.grand_value() && in_b0(omega, table, z.members, g))) {
      holds = true;
    }
    return !holds;
  });
  return holds;
}

NestedResult check_nested_balancedness(std::span<const Coalition> collection,
                                       std::span<const Coalition> family,
                                       const MbcDatabase& db, const Game& g,
                                       const NestedLimits& limits) {
  if (db.n() != g.n()) throw std::invalid_argument("database and game sizes differ");
  NestedResult result;
  const SystemProduct product(collection, family, db);
  result.stats.systems = product.size();
  if (product.empty()) return result;
  if (limits.max_systems != 0 && product.size() > limits.max_systems) {
    result.outcome = NestedResult::Outcome::LimitReached;
    result.limit_reason = "system count " +
                          (product.size() == std::numeric_limits<std::uint64_t>::max()
                               ? std::string("overflow")
                               : std::to_string(product.size())) +
                          " exceeds cap " + std::to_string(limits.max_systems);
    return result;
  }
  std::optional<Clock::time_point> deadline = limits.deadline;
  if (limits.time_limit.count() > 0) {
    const auto own = Clock::now() + std::chrono::duration_cast<Clock::duration>(limits.time_limit);
    if (!deadline || own < *deadline) deadline = own;
  }

  const std::size_t m = collection.size();
  // The condition depends on a chosen collection only through (z^S, C-value);
  // group the admissible choices into classes, in order of first appearance.
  std::vector<std::vector<RatVector>> class_z(m);
  std::vector<std::vector<Rational>> class_c(m);
  std::vector<std::vector<std::size_t>> class_rep(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::map<std::pair<RatVector, Rational>, std::size_t> index;
    const auto& choices = product.choices(k);
    for (std::size_t pos = 0; pos < choices.size(); ++pos) {
      const WeightedCollection& b = db[choices[pos]];
      auto key = std::make_pair(singleton_weight_vector(b, collection[k], g.n()),
                                c_value(b, collection[k], g));
      if (index.emplace(key, class_z[k].size()).second) {
        class_z[k].push_back(key.first);
        class_c[k].push_back(key.second);
        class_rep[k].push_back(choices[pos]);
      }
    }
  }

  // Sets drawn only from the system-independent vectors keep their value
  // under every system: later generators can only raise a-values.
  {
    std::vector<Coalition> others;
    for (Coalition t : family)
      if (!in_list(collection, t)) others.push_back(t);
    OmegaSet fixed;
    fixed.n = g.n();
    AValueTable table;
    std::map<RatVector, std::size_t> seen;
    auto add = [&](RatVector z, OmegaEntry e, const Rational& a) {
      auto [it, fresh] = seen.emplace(std::move(z), fixed.vectors.size());
      if (fresh) {
        fixed.vectors.push_back(it->first);
        fixed.provenance.push_back({e});
        table.values.push_back(a);
      } else {
        fixed.provenance[it->second].push_back(e);
        if (a > table.values[it->second]) table.values[it->second] = a;
      }
    };
    for (Coalition t : family) {
      if (in_list(collection, t)) {
        add(indicator_vector(complement(t, g.n()), g.n()), {OmegaSource::A, t},
            g.grand_value() - g.value(t));
      } else {
        add(indicator_vector(t, g.n()), {OmegaSource::B, t}, g.value(t));
      }
    }
    if (system_condition_holds(fixed, table, g)) {
      result.stats.fixed_part_sufficient = true;
      return result;
    }
  }

  std::map<std::vector<std::pair<RatVector, Rational>>, bool> memo;
  std::vector<std::size_t> pos(m, 0);
  std::vector<RatVector> zs(m);
  std::vector<Rational> cs(m);
  for (;;) {
    if (deadline && Clock::now() > *deadline) {
      result.outcome = NestedResult::Outcome::LimitReached;
      result.limit_reason = "time limit reached after " +
                            std::to_string(result.stats.classes_checked) + " distinct systems";
      return result;
    }
    std::vector<std::pair<RatVector, Rational>> key;
    for (std::size_t k = 0; k < m; ++k) {
      zs[k] = class_z[k][pos[k]];
      cs[k] = class_c[k][pos[k]];
      key.emplace_back(zs[k], cs[k]);
    }
    std::sort(key.begin(), key.end());
    bool holds;
    if (auto it = memo.find(key); it != memo.end()) {
      ++result.stats.memo_hits;
      holds = it->second;
    } else {
      auto [omega, table] = assemble(collection, zs, cs, family, g);
      holds = system_condition_holds(omega, table, g);
      ++result.stats.classes_checked;
      if (memo.size() < (std::size_t{1} << 20)) memo.emplace(std::move(key), holds);
    }
    if (!holds) {
      result.outcome = NestedResult::Outcome::Fails;
      for (std::size_t k = 0; k < m; ++k) result.failing_system.push_back(class_rep[k][pos[k]]);
      return result;
    }
    std::size_t k = m;
    while (k-- > 0) {
      if (++pos[k] < class_z[k].size()) break;
      pos[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return result;
}

std::optional<Allocation> undominated_allocation(std::span<const Coalition> collection,
                                                 std::span<const WeightedCollection> system,
                                                 std::span<const Coalition> family,
                                                 const Game& g) {
  if (system.size() != collection.size()) throw std::invalid_argument("system size mismatch");
  check_members(collection, family);
  const int n = g.n();
  const auto un = static_cast<std::size_t>(n);
  // Variables (x, t); maximize t with x(S) <= v(S) - t on the collection.
  LinearSystem p;
  p.dim = un + 1;
  auto row = [&](Coalition s, const Rational& sign) {
    RatVector a(un + 1);
    for (int i : players_of(s)) a[static_cast<std::size_t>(i - 1)] = sign;
    return a;
  };
  p.add_eq(row(g.grand(), 1), g.grand_value());
  for (Coalition t : family) {
    if (t == g.grand()) continue;
    if (in_list(collection, t)) {
      RatVector a = row(t, -1);
      a[un] = -1;
      p.add_ineq(std::move(a), -g.value(t));
    } else {
      p.add_ineq(row(t, 1), g.value(t));
    }
  }
  for (std::size_t k = 0; k < collection.size(); ++k) {
    RatVector a = singleton_weight_vector(system[k], collection[k], n);
    a.emplace_back(0);
    p.add_ineq(std::move(a), c_value(system[k], collection[k], g));
  }
  RatVector cap(un + 1);
  cap[un] = -1;
  p.add_ineq(std::move(cap), -1);
  VertexOptions options;
  options.max_free_dim = un + 1;
  const Decomposition d = decompose(p, options);
  if (d.empty) return std::nullopt;
  const RatVector* best = nullptr;
  for (const RatVector& vertex : d.vertices)
    if (best == nullptr || vertex[un] > (*best)[un]) best = &vertex;
  if (best == nullptr || (*best)[un] <= 0) return std::nullopt;
  return Allocation(best->begin(), best->begin() + n);
}

std::optional<Coalition> dominating_coalition(const Allocation& x, const Game& g,
                                              const MbcDatabase& db) {
  const int n = g.n();
  if (db.n() != n || x.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("size mismatch");
  }
  // A core element y with y(S) = v(S) and y > x on S exists iff for small
  // e > 0 the game with v(S^c) := v(N) - v(S) and v({i}) := max(v({i}), x_i + e)
  // on S is balanced. Each weighted sum is s0 + s1 e near e = 0.
  for (std::uint32_t m = 1; m < g.grand().bits; ++m) {
    const Coalition s{m};
    if (coalition_sum(x, s) >= g.value(s)) continue;
    std::vector<Rational> base = g.values();
    const Coalition rest = complement(s, n);
    const Rational cap = g.grand_value() - g.value(s);
    if (cap > base[rest.bits]) base[rest.bits] = cap;
    std::vector<bool> slope(base.size(), false);
    for (int i : players_of(s)) {
      const auto bit = singleton(i).bits;
      const Rational& xi = x[static_cast<std::size_t>(i - 1)];
      if (xi >= base[bit]) {
        base[bit] = xi;
        slope[bit] = true;
      }
    }
    const ValueTable table(base);
    bool balanced = true;
    for (std::size_t b = 0; b < db.size() && balanced; ++b) {
      const int sign = table.compare_to_grand(db, b);
      if (sign > 0) balanced = false;
      if (sign == 0) {
        for (std::uint32_t mask : db.masks(b))
          if (slope[mask]) balanced = false;
      }
    }
    if (balanced) return s;
  }
  return std::nullopt;
}

bool nested_balancedness_ok(std::span<const Coalition> collection,
                            std::span<const Coalition> family, const MbcDatabase& db,
                            const Game& g) {
  return check_nested_balancedness(collection, family, db, g).outcome !=
         NestedResult::Outcome::Fails;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable:
      return "Stable";
    case Verdict::NotStable:
      return "NotStable";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

std::string to_string(Stage s) {
  switch (s) {
    case Stage::Balancedness:
      return "balancedness";
    case Stage::SingletonExactness:
      return "singleton-exactness";
    case Stage::VitalExact:
      return "vital-exact";
    case Stage::CoreDescribing:
      return "core-describing";
    case Stage::Extendability:
      return "extendability";
    case Stage::FeasibleCollections:
      return "feasible-collections";
    case Stage::Blocking:
      return "blocking";
    case Stage::WeakExtendability:
      return "weak-extendability";
    case Stage::NestedBalancedness:
      return "nested-balancedness";
  }
  return "?";
}

StabilityReport is_core_stable(const Game& g, const MbcDatabase& db,
                               const StabilityOptions& options) {
  if (db.n() != g.n()) throw std::invalid_argument("database and game sizes differ");
  if (db.restricted()) throw std::invalid_argument("stability needs an unrestricted database");
  StabilityReport report;
  const int n = g.n();
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (options.time_limit.count() > 0) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(options.time_limit);
  }
  auto stage_start = start;
  auto enter = [&](Stage s) {
    const auto now = Clock::now();
    if (!report.timings.empty()) {
      report.timings.back().second = std::chrono::duration<double>(now - stage_start).count();
    }
    report.timings.emplace_back(s, 0.0);
    report.stage = s;
    stage_start = now;
  };
  auto finish = [&](Verdict v, std::string reason) {
    if (!report.timings.empty()) {
      report.timings.back().second =
          std::chrono::duration<double>(Clock::now() - stage_start).count();
    }
    report.verdict = v;
    report.reason = std::move(reason);
    return report;
  };

  enter(Stage::Balancedness);
  if (auto bad = first_violation(ValueTable(g), db)) {
    report.witness_collection = db[*bad].coalitions;
    return finish(Verdict::NotStable, "empty core: balancedness violated by a collection");
  }

  enter(Stage::SingletonExactness);
  for (int i = 1; i <= n; ++i) {
    if (!is_exact(singleton(i), g, db)) {
      report.witness_player = i;
      return finish(Verdict::NotStable, "singleton of player " + std::to_string(i) + " is not exact");
    }
  }

  enter(Stage::VitalExact);
  report.vital_exact = strictly_vital_exact_set(g, db);
  report.stats.vital_exact = report.vital_exact.size();
  const std::vector<Coalition>& family = report.vital_exact;

  enter(Stage::CoreDescribing);
  bool describing;
  try {
    describing = is_core_describing(family, g);
  } catch (const UnboundedFamilyError&) {
    describing = false;
  }
  if (!describing) {
    report.witness_collection = family;
    return finish(Verdict::NotStable, "strictly vital-exact coalitions do not describe the core");
  }

  enter(Stage::Extendability);
  MbcCache cache;
  cache.put(std::make_shared<const MbcDatabase>(db));
  for (Coalition s : family)
    if (is_extendable(s, g, cache)) report.extendable.push_back(s);
  report.stats.extendable = report.extendable.size();

  enter(Stage::FeasibleCollections);
  const std::vector<FeasibleCollectionReport> feasible =
      feasible_collections(family, g, db, report.extendable);
  report.stats.feasible = feasible.size();

  enter(Stage::Blocking);
  for (const auto& f : feasible) {
    if (f.blocking) {
      report.witness_collection = f.collection;
      return finish(Verdict::NotStable, "blocking feasible pair");
    }
  }

  enter(Stage::WeakExtendability);
  std::vector<const FeasibleCollectionReport*> surviving;
  for (const auto& f : feasible) {
    if (!f.has_min_extendable) {
      surviving.push_back(&f);
      report.stats.largest_surviving = std::max(report.stats.largest_surviving, f.collection.size());
    }
  }
  report.stats.surviving = surviving.size();
  if (surviving.empty()) {
    return finish(Verdict::Stable,
                  "every feasible collection has a minimal extendable member");
  }

  enter(Stage::NestedBalancedness);
  std::string unknown_reason;
  for (const FeasibleCollectionReport* f : surviving) {
    NestedLimits limits;
    limits.max_systems = options.max_systems;
    limits.deadline = deadline;
    const NestedResult r = check_nested_balancedness(f->collection, family, db, g, limits);
    report.stats.systems_checked += r.stats.classes_checked;
    ++report.stats.collections_checked;
    if (r.outcome == NestedResult::Outcome::Fails) {
      report.witness_collection = f->collection;
      for (std::size_t i : r.failing_system) report.witness_system.push_back(db[i]);
      report.witness_allocation =
          undominated_allocation(f->collection, report.witness_system, family, g);
      return finish(Verdict::NotStable, "nested balancedness fails for a feasible collection");
    }
    if (r.outcome == NestedResult::Outcome::LimitReached) {
      if (unknown_reason.empty()) {
        report.witness_collection = f->collection;
        unknown_reason = "limit reached on collection " + describe(f->collection) + ": " +
                         r.limit_reason;
      }
      if (deadline && Clock::now() > *deadline) break;
    }
  }
  if (!unknown_reason.empty()) return finish(Verdict::Unknown, unknown_reason);
  return finish(Verdict::Stable, "nested balancedness holds for every surviving collection");
}

}  // namespace mbc
