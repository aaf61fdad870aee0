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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mbc/balanced_sets.hpp"
#include "mbc/collection.hpp"
#include "mbc/game_props.hpp"
#include "mbc/peleg.hpp"
#include "mbc/polytope.hpp"
#include "mbc/stability.hpp"

using namespace mbc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Accumulates sub-checks of one criterion and prints a single line.
class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)), start_(Clock::now()) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failed_.push_back(what);
    }
  }
  void note(const std::string& text) { notes_.push_back(text); }
  void budget(double limit_seconds) { limit_ = limit_seconds; }

  bool finish() {
    const double elapsed = seconds_since(start_);
    if (limit_ > 0 && elapsed > limit_) {
      pass_ = false;
      failed_.push_back("time " + fmt(elapsed) + " s exceeds " + fmt(limit_) + " s");
    }
    std::cout << "CRITERION " << id_ << ": " << (pass_ ? "PASS" : "FAIL") << " - " << title_ << " ("
              << fmt(elapsed) << " s)";
    for (const auto& n : notes_) std::cout << "; " << n;
    for (const auto& f : failed_) std::cout << "; failed: " << f;
    std::cout << std::endl;
    return pass_;
  }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
  }

 private:
  int id_;
  std::string title_;
  Clock::time_point start_;
  double limit_ = 0;
  bool pass_ = true;
  std::vector<std::string> failed_;
  std::vector<std::string> notes_;
};

Game load_fixture(const std::string& name) {
  std::ifstream in(std::string(MBC_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

std::vector<Coalition> keys(std::initializer_list<const char*> list, int n) {
  std::vector<Coalition> out;
  for (const char* k : list) out.push_back(parse_coalition_key(k, n));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Coalition> singletons(int n) {
  std::vector<Coalition> out;
  for (int i = 1; i <= n; ++i) out.push_back(singleton(i));
  return out;
}

std::vector<Coalition> merged(std::vector<Coalition> a, const std::vector<Coalition>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Coalition> without_grand(std::vector<Coalition> cs, int n) {
  std::erase(cs, grand_coalition(n));
  return cs;
}

std::string list(std::span<const Coalition> cs) { return describe(cs); }

// The collections reported as feasible without a minimal extendable member.
std::vector<std::vector<Coalition>> surviving(const Game& g, const MbcDatabase& db,
                                              const std::vector<Coalition>& ve) {
  MbcCache cache;
  std::vector<Coalition> ext;
  for (Coalition s : ve)
    if (is_extendable(s, g, cache)) ext.push_back(s);
  std::vector<std::vector<Coalition>> out;
  for (const auto& r : feasible_collections(ve, g, db, ext))
    if (!r.has_min_extendable) out.push_back(r.collection);
  return out;
}

std::vector<std::vector<Coalition>> nonempty_subsets(const std::vector<Coalition>& base) {
  std::vector<std::vector<Coalition>> out;
  for (std::uint32_t pick = 1; pick < (1U << base.size()); ++pick) {
    std::vector<Coalition> c;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (pick >> i & 1U) c.push_back(base[i]);
    std::sort(c.begin(), c.end());
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WeightedCollection> brute_force(int n) {
  const std::vector<Coalition> all = all_coalitions(n);
  std::vector<WeightedCollection> out;
  std::vector<Coalition> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!pick.empty()) {
      const MinimalityResult r = check_minimal_balanced(pick, n);
      if (const auto* m = std::get_if<Minimal>(&r)) out.push_back(canonical_collection(pick, m->weights));
    }
    if (pick.size() == static_cast<std::size_t>(n)) return;
    for (std::size_t i = start; i < all.size(); ++i) {
      pick.push_back(all[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), collection_less);
  return out;
}

void partitions(int n, int next, std::vector<Coalition>& blocks,
                const std::function<void(const std::vector<Coalition>&)>& fn) {
  if (next > n) {
    fn(blocks);
    return;
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i] = blocks[i] | singleton(next);
    partitions(n, next + 1, blocks, fn);
    blocks[i] = Coalition{blocks[i].bits & ~singleton(next).bits};
  }
  blocks.push_back(singleton(next));
  partitions(n, next + 1, blocks, fn);
  blocks.pop_back();
}

WeightedCollection weighted(std::initializer_list<const char*> ks, std::initializer_list<const char*> ws,
                            int n) {
  std::vector<Coalition> cs;
  for (const char* k : ks) cs.push_back(parse_coalition_key(k, n));
  std::vector<Rational> weights;
  for (const char* w : ws) weights.push_back(parse_rational(w));
  return canonical_collection(cs, weights);
}

bool has_exactly(const MbcDatabase& db, const WeightedCollection& c) {
  const auto i = db.find(c.coalitions);
  return i.has_value() && db[*i] == c;
}

bool soundness(const MbcDatabase& db, bool full) {
  const int n = db.n();
  for (std::size_t i = 0; i < db.size(); ++i) {
    const WeightedCollection& c = db[i];
    if (c.size() > static_cast<std::size_t>(n)) return false;
    for (const auto& w : c.weights)
      if (w <= 0) return false;
    for (int p = 1; p <= n; ++p) {
      Rational s = 0;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c.coalitions[k].contains(p)) s += c.weights[k];
      if (s != 1) return false;
    }
    if (rank_of_masks(db.masks(i), n) != c.size()) return false;
    if (full && !is_sound_minimal_balanced(c, n)) return false;
  }
  return true;
}

std::vector<MbcDatabase> dbs;  // index n, filled by criterion 1

bool criterion1() {
  Criterion c(1, "MBC counts for n = 1..6");
  const std::size_t expected[] = {1, 2, 6, 42, 1292, 200214};
  dbs.resize(7);
  const auto small_start = Clock::now();
  for (int n = 1; n <= 5; ++n) dbs[n] = peleg(n);
  const double small = seconds_since(small_start);
  const auto six_start = Clock::now();
  dbs[6] = peleg(6);
  const double six = seconds_since(six_start);
  std::string counts;
  for (int n = 1; n <= 6; ++n) {
    counts += (n > 1 ? "," : "") + std::to_string(dbs[n].size());
    c.check(dbs[n].size() == expected[n - 1], "count for n=" + std::to_string(n));
  }
  c.note("counts " + counts);
  c.note("n<=5 in " + Criterion::fmt(small) + " s, n=6 in " + Criterion::fmt(six) + " s");
  c.check(small < 5.0, "n<=5 within 5 s");
  c.check(six < 300.0, "n=6 within 5 min");
  return c.finish();
}

bool criterion2() {
  Criterion c(2, "peleg = vertex oracle = brute force for n <= 4");
  for (int n = 1; n <= 4; ++n) {
    const auto& p = dbs[n].collections();
    c.check(p == mbc_via_vertices(n).collections(), "vertex oracle n=" + std::to_string(n));
    c.check(p == brute_force(n), "brute force n=" + std::to_string(n));
  }
  return c.finish();
}

bool criterion3() {
  Criterion c(3, "four worked extension cases");
  PelegOptions options;
  options.max_players = 5;
  const MbcDatabase ext = add_new_player(
      MbcDatabase(4, {weighted({"1,2", "1,3", "1,4", "2,3,4"}, {"1/3", "1/3", "1/3", "2/3"}, 4)}), 5, options);
  c.check(has_exactly(ext, weighted({"1,2,5", "1,3", "1,4", "2,3,4,5"}, {"1/3", "1/3", "1/3", "2/3"}, 5)),
          "case 1");
  c.check(has_exactly(ext, weighted({"1,2", "1,3", "1,4", "2,3,4,5", "5"}, {"1/3", "1/3", "1/3", "2/3", "1/3"}, 5)),
          "case 2");
  c.check(has_exactly(ext, weighted({"1,2,5", "1,3,5", "1,4", "2,3,4", "2,3,4,5"},
                                    {"1/3", "1/3", "1/3", "1/3", "1/3"}, 5)),
          "case 3");
  const MbcDatabase two(2, {weighted({"1", "2"}, {"1", "1"}, 2), weighted({"1,2"}, {"1"}, 2)});
  c.check(has_exactly(add_new_player(two, 3), weighted({"1,2", "1,3", "2,3"}, {"1/2", "1/2", "1/2"}, 3)),
          "case 4");
  return c.finish();
}

bool criterion4() {
  Criterion c(4, "balancedness vs vertex oracle on 500 random 4-player games");
  c.budget(30);
  std::mt19937 rng(20260101);
  std::uniform_int_distribution<int> d(0, 500);
  int agree = 0;
  int balanced = 0;
  for (int k = 0; k < 500; ++k) {
    Game g(4);
    for (Coalition s : all_coalitions(4)) g.set_value(s, make_rational(d(rng), 100));
    g.set_value(grand_coalition(4), 50);
    const bool bs = is_balanced_game(g, dbs[4]);
    const bool vertex = !enumerate_vertices(core_system(g)).empty();
    agree += bs == vertex ? 1 : 0;
    balanced += bs ? 1 : 0;
  }
  c.note("agree " + std::to_string(agree) + "/500, balanced " + std::to_string(balanced) + "/500");
  c.check(agree == 500, "agreement");
  c.check(balanced == 500, "all balanced");
  return c.finish();
}

bool criterion5() {
  Criterion c(5, "4-player fixture");
  c.budget(1);
  const Game g = load_fixture("four_player.json");
  const MbcDatabase& db = dbs[4];
  c.check(effective_set(g, db) == std::vector<Coalition>{grand_coalition(4)}, "effective set is {N}");
  const auto ve = strictly_vital_exact_set(g, db);
  c.check(ve == merged(singletons(4), keys({"1,2,3", "1,2,4", "1,3,4", "2,3,4"}, 4)), "VE");
  const StabilityReport r = is_core_stable(g, db);
  c.note("verdict " + to_string(r.verdict) + " at " + to_string(r.stage) + " via " + list(r.witness_collection));
  c.check(r.verdict == Verdict::NotStable && r.stage == Stage::Blocking, "NotStable by a blocking pair");
  c.check(is_blocking(r.witness_collection, 4) && is_feasible(r.witness_collection, ve, g, db),
          "reported witness is a blocking feasible pair");
  const auto stated = keys({"1,3,4", "1,2,3"}, 4);
  c.check(is_blocking(stated, 4) && is_feasible(stated, ve, g, db), "{134,123} is a blocking feasible pair");
  return c.finish();
}

bool criterion6() {
  Criterion c(6, "5-player fixture v(N)=3");
  c.budget(60);
  const Game g = load_fixture("five_player.json");
  const MbcDatabase& db = dbs[5];
  const auto listed = keys({"2,3", "2,4", "2,5", "1,3,4", "1,3,5", "1,4,5"}, 5);
  c.check(without_grand(effective_set(g, db), 5) == listed, "effective proper coalitions");
  const auto ve = strictly_vital_exact_set(g, db);
  c.check(ve == merged(listed, singletons(5)) && ve.size() == 11, "VE = E plus singletons");
  const auto surv = surviving(g, db, ve);
  auto sorted_surv = surv;
  std::sort(sorted_surv.begin(), sorted_surv.end());
  c.check(sorted_surv == nonempty_subsets(keys({"1,3,4", "1,3,5", "1,4,5"}, 5)), "7 surviving collections");
  const StabilityReport r = is_core_stable(g, db);
  c.note("verdict " + to_string(r.verdict) + " via " + list(r.witness_collection));
  c.check(r.verdict == Verdict::NotStable && r.stage == Stage::NestedBalancedness, "NotStable");
  c.check(!nested_balancedness_ok(keys({"1,3,5", "1,4,5"}, 5), ve, db, g), "{135,145} fails the nested test");
  c.check(r.witness_allocation && !dominating_coalition(*r.witness_allocation, g, db),
          "witness allocation is undominated");
  return c.finish();
}

bool criterion7() {
  Criterion c(7, "5-player fixture v(N)=31/10");
  c.budget(600);
  const Game g = load_fixture("five_player_raised_grand.json");
  const MbcDatabase& db = dbs[5];
  c.check(effective_set(g, db) == std::vector<Coalition>{grand_coalition(5)}, "effective set is {N}");
  const auto ve = strictly_vital_exact_set(g, db);
  const auto added = keys({"1,3", "1,4", "1,5"}, 5);
  c.check(ve.size() == 14 && std::includes(ve.begin(), ve.end(), added.begin(), added.end()),
          "VE has 14 with {13,14,15}");
  const auto surv = surviving(g, db, ve);
  std::size_t largest = 0;
  bool blocking = false;
  for (const auto& s : surv) {
    largest = std::max(largest, s.size());
    blocking = blocking || is_blocking(s, 5);
  }
  c.note("VE " + std::to_string(ve.size()) + ", surviving " + std::to_string(surv.size()) + ", largest " +
         std::to_string(largest));
  c.check(surv.size() == 51, "51 surviving collections (got " + std::to_string(surv.size()) + ")");
  c.check(largest == 6, "largest has 6");
  c.check(!blocking, "no blocking pair");
  StabilityOptions options;
  options.time_limit = std::chrono::minutes(10);
  const StabilityReport r = is_core_stable(g, db, options);
  c.note("verdict " + to_string(r.verdict) + " at " + to_string(r.stage) + " via " + list(r.witness_collection));
  if (r.witness_allocation) {
    c.note(std::string("witness allocation ") +
           (dominating_coalition(*r.witness_allocation, g, db) ? "dominated" : "undominated"));
  }
  c.check(r.verdict == Verdict::Unknown && r.stage == Stage::NestedBalancedness,
          "Unknown under the 10-minute cap (got " + to_string(r.verdict) + ")");
  return c.finish();
}

bool criterion8() {
  Criterion c(8, "6-player fixture");
  c.budget(1200);
  const Game g = load_fixture("six_player.json");
  const MbcDatabase& db = dbs[6];
  const auto ve = strictly_vital_exact_set(g, db);
  c.check(ve == merged(singletons(6), keys({"2,5", "3,6", "1,3,5", "2,3,6", "1,2,4,6", "2,3,4,5", "3,4,5,6"}, 6)),
          "VE = the 13 listed coalitions");
  auto surv = surviving(g, db, ve);
  std::sort(surv.begin(), surv.end());
  c.check(surv == nonempty_subsets(keys({"1,3,5", "3,4,5,6", "2,3,4,5"}, 6)), "7 surviving collections");
  const StabilityReport r = is_core_stable(g, db);
  c.note("verdict " + to_string(r.verdict) + " via " + list(r.witness_collection));
  c.check(r.verdict == Verdict::NotStable && r.stage == Stage::NestedBalancedness, "NotStable");
  c.check(!nested_balancedness_ok(keys({"1,3,5", "3,4,5,6"}, 6), ve, db, g), "{135,3456} fails the nested test");
  c.check(r.witness_allocation && !dominating_coalition(*r.witness_allocation, g, db),
          "witness allocation is undominated");
  return c.finish();
}

bool criterion9() {
  Criterion c(9, "property suites");
  bool sound = true;
  for (int n = 1; n <= 6; ++n) sound = sound && soundness(dbs[n], n <= 5);
  c.check(sound, "soundness of every generated collection");
  bool anti = true;
  for (int n = 2; n <= 5; ++n) {
    std::vector<Coalition> blocks;
    partitions(n, 1, blocks, [&](const std::vector<Coalition>& p) {
      if (p.size() < 2) return;
      std::vector<Coalition> cs;
      for (Coalition b : p) cs.push_back(complement(b, n));
      std::sort(cs.begin(), cs.end());
      anti = anti && dbs[n].find(cs).has_value();
    });
  }
  c.check(anti, "anti-partitions present for n <= 5");

  const std::vector<RatVector> rejected = {
      {1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, make_rational(1, 10), 1},
      {0, make_rational(1, 5), make_rational(1, 10), make_rational(1, 2)}};
  const SolveResult delta = solve_unique(RatMatrix::from_columns(rejected, 4), RatVector(4, Rational(1)));
  const RatVector want = {make_rational(25, 31), make_rational(-4, 31), make_rational(10, 31),
                          make_rational(50, 31)};
  c.check(std::holds_alternative<UniqueSolution>(delta) && std::get<UniqueSolution>(delta).x == want &&
              !minimal_balanced_weights(rejected, 4).has_value(),
          "(25/31,-4/31,10/31,50/31) rejection");
  const std::vector<RatVector> accepted = {{1, make_rational(2, 5), 0}, {0, make_rational(3, 5), 1}};
  const auto w = minimal_balanced_weights(accepted, 3);
  c.check(w && *w == RatVector{1, 1}, "two-vector set accepted with weights (1,1)");

  struct Witness {
    int n;
    std::vector<Coalition> cs;
    std::vector<int> y;
  };
  const Witness ws[] = {{3, keys({"1,2", "1,3", "1"}, 3), {2, -1, -1}},
                        {4, keys({"1", "1,2", "1,3", "1,4", "1,2,3", "1,2,4", "1,3,4"}, 4), {3, -1, -1, -1}}};
  bool witnesses = true;
  for (const auto& wt : ws) {
    int total = 0;
    for (int v : wt.y) total += v;
    witnesses = witnesses && total == 0;
    for (Coalition s : wt.cs) {
      int sum = 0;
      for (int i : players_of(s)) sum += wt.y[static_cast<std::size_t>(i - 1)];
      witnesses = witnesses && sum > 0;
    }
    witnesses = witnesses && !is_balanced_collection(wt.cs, dbs[wt.n]);
  }
  c.check(witnesses, "unbalanced-collection witnesses");
  return c.finish();
}

}  // namespace

int main() {
  bool ok = true;
  int id = 0;
  for (auto* run : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7,
                    criterion8, criterion9}) {
    ++id;
    try {
      ok = run() && ok;
    } catch (const std::exception& e) {
      std::cout << "CRITERION " << id << ": FAIL - aborted: " << e.what() << std::endl;
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
