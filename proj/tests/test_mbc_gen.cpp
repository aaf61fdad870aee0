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

#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mbc/collection.hpp"
#include "mbc/mbc_database.hpp"
#include "mbc/peleg.hpp"
#include "mbc/polytope.hpp"
#include "support.hpp"

using namespace mbc;
using namespace mbc::testing;

namespace {

// Every subcollection of 2^N \ {empty} with at most n members that the direct
// minimality test accepts.
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

// Partitions of {1..n} as lists of blocks.
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

MbcDatabase single(int n, std::vector<WeightedCollection> cs) { return MbcDatabase(n, std::move(cs)); }

}  // namespace

TEST_CASE("direct minimality check") {
  const auto r = check_minimal_balanced(coalitions({"1,2", "1,3", "1,4", "2,3,4"}, 4), 4);
  REQUIRE(std::holds_alternative<Minimal>(r));
  CHECK(std::get<Minimal>(r).weights == rats({"1/3", "1/3", "1/3", "2/3"}));
  CHECK(std::holds_alternative<BalancedNotMinimal>(
      check_minimal_balanced(coalitions({"1", "2", "3", "1,2,3"}, 3), 3)));
  CHECK(std::holds_alternative<NotBalanced>(check_minimal_balanced(coalitions({"1,2", "1,3"}, 3), 3)));
  std::vector<Coalition> none;
  CHECK_THROWS(check_minimal_balanced(none, 3));
  int seen = 0;
  std::vector<Coalition> blocks;
  partitions(4, 1, blocks, [&](const std::vector<Coalition>& p) {
    const auto m = check_minimal_balanced(p, 4);
    REQUIRE(std::holds_alternative<Minimal>(m));
    for (const auto& w : std::get<Minimal>(m).weights) CHECK(w == 1);
    ++seen;
  });
  CHECK(seen == 15);
}

TEST_CASE("peleg counts for small n") {
  const std::size_t expected[] = {1, 2, 6, 42, 1292};
  for (int n = 1; n <= 5; ++n) CHECK(peleg(n).size() == expected[n - 1]);
  const MbcDatabase one = peleg(1);
  CHECK(one[0].coalitions == coalitions({"1"}, 1));
  const MbcDatabase two = peleg(2);
  CHECK(two.collections().size() == 2);
  CHECK(two.find(coalitions({"1,2"}, 2)).has_value());
  CHECK(two.find(coalitions({"1", "2"}, 2)).has_value());
}

TEST_CASE("peleg(3) lists the six collections") {
  const MbcDatabase db = peleg(3);
  for (auto keys : {std::vector<const char*>{"1,2,3"}, {"1", "2", "3"}, {"1", "2,3"}, {"2", "1,3"},
                    {"3", "1,2"}, {"1,2", "1,3", "2,3"}}) {
    std::vector<Coalition> cs;
    for (const char* k : keys) cs.push_back(parse_coalition_key(k, 3));
    std::sort(cs.begin(), cs.end());
    CHECK(db.find(cs).has_value());
  }
}

TEST_CASE("three generators agree up to n = 4") {
  for (int n = 1; n <= 4; ++n) {
    const MbcDatabase db = peleg(n);
    CHECK(db.collections() == brute_force(n));
    CHECK(db.collections() == mbc_via_vertices(n).collections());
  }
}

TEST_CASE("worked extension examples") {
  // a..e are players 1..5.
  const WeightedCollection c = canonical_collection(coalitions({"1,2", "1,3", "1,4", "2,3,4"}, 4),
                                                    rats({"1/3", "1/3", "1/3", "2/3"}));
  PelegOptions options;
  options.max_players = 5;
  const MbcDatabase out = add_new_player(single(4, {c}), 5, options);
  auto expect = [&](std::initializer_list<const char*> keys, std::initializer_list<const char*> w) {
    std::vector<Coalition> cs = coalitions(keys, 5);
    const WeightedCollection want = canonical_collection(cs, rats(w));
    const auto i = out.find(want.coalitions);
    REQUIRE(i.has_value());
    CHECK(out[*i] == want);
  };
  expect({"1,2,5", "1,3", "1,4", "2,3,4,5"}, {"1/3", "1/3", "1/3", "2/3"});
  expect({"1,2", "1,3", "1,4", "2,3,4,5", "5"}, {"1/3", "1/3", "1/3", "2/3", "1/3"});
  expect({"1,2,5", "1,3,5", "1,4", "2,3,4", "2,3,4,5"}, {"1/3", "1/3", "1/3", "1/3", "1/3"});

  const MbcDatabase pair = single(2, {canonical_collection(coalitions({"1", "2"}, 2), rats({"1", "1"})),
                                      canonical_collection(coalitions({"1,2"}, 2), rats({"1"}))});
  const MbcDatabase three = add_new_player(pair, 3);
  const auto i = three.find(coalitions({"1,2", "1,3", "2,3"}, 3));
  REQUIRE(i.has_value());
  CHECK(three[*i].weights == rats({"1/2", "1/2", "1/2"}));
  CHECK(three.collections() == peleg(3).collections());
}

TEST_CASE("add_new_player rejects existing players and caps n") {
  CHECK_THROWS(add_new_player(peleg(3), 3));
  CHECK_THROWS(add_new_player(peleg(3), 5));
  CHECK_THROWS(peleg(7));
  CHECK_THROWS(peleg(0));
}

TEST_CASE("soundness of every generated collection") {
  for (int n = 1; n <= 5; ++n) {
    const MbcDatabase db = peleg(n);
    for (std::size_t i = 0; i < db.size(); ++i) {
      const WeightedCollection& c = db[i];
      CHECK(is_sound_minimal_balanced(c, n));
      CHECK(c.size() <= static_cast<std::size_t>(n));
      for (int p = 1; p <= n; ++p) {
        Rational s = 0;
        for (std::size_t k = 0; k < c.size(); ++k)
          if (c.coalitions[k].contains(p)) s += c.weights[k];
        CHECK(s == 1);
      }
      for (const auto& w : c.weights) CHECK(w > 0);
      CHECK(rank_of_masks(db.masks(i), n) == c.size());
      if (i > 0) CHECK(collection_less(db[i - 1], c));
    }
  }
}

TEST_CASE("anti-partitions are present") {
  for (int n = 2; n <= 5; ++n) {
    const MbcDatabase db = peleg(n);
    std::vector<Coalition> blocks;
    partitions(n, 1, blocks, [&](const std::vector<Coalition>& p) {
      if (p.size() < 2) return;
      std::vector<Coalition> anti;
      for (Coalition b : p) anti.push_back(complement(b, n));
      std::sort(anti.begin(), anti.end());
      const auto i = db.find(anti);
      REQUIRE(i.has_value());
      for (const auto& w : db[*i].weights) CHECK(w == make_rational(1, static_cast<long>(p.size() - 1)));
    });
  }
}

TEST_CASE("generation is deterministic across thread counts") {
  PelegOptions one;
  PelegOptions four;
  four.threads = 4;
  std::ostringstream a;
  std::ostringstream b;
  write_database(a, peleg(5, one));
  write_database(b, peleg(5, four));
  CHECK(a.str() == b.str());
}

TEST_CASE("restricted generation matches the filtered brute force") {
  const std::vector<std::vector<const char*>> systems = {
      {"1,2", "2,3", "1,3", "4"}, {"1,2,3", "3,4"}, {"1,2", "3,4"}, {"1,2,3", "2,3,4", "1,4"},
      {"1,2,3,4"}, {"1", "2", "3", "4"}};
  for (const auto& keys : systems) {
    std::vector<Coalition> sys;
    for (const char* k : keys) sys.push_back(parse_coalition_key(k, 4));
    PelegOptions options;
    options.set_system = sys;
    const MbcDatabase got = peleg(4, options);
    CHECK(got.restricted());
    std::vector<WeightedCollection> want;
    for (const auto& c : brute_force(4)) {
      bool inside = true;
      for (Coalition s : c.coalitions) {
        bool ok = false;
        for (Coalition t : sys) ok = ok || s.subset_of(t);
        inside = inside && ok;
      }
      if (inside) want.push_back(c);
    }
    CHECK(got.collections() == want);
  }
  PelegOptions uncovered;
  uncovered.set_system = coalitions({"1,2"}, 3);
  CHECK_THROWS(peleg(3, uncovered));
}

TEST_CASE("database text format") {
  const MbcDatabase db = peleg(3);
  std::ostringstream out;
  write_database(out, db);
  const std::string text = out.str();
  CHECK(text.rfind("MBCDB 1 n=3 count=6\n", 0) == 0);
  CHECK(format_line(canonical_collection(coalitions({"1,2", "1,3", "2,3"}, 3), rats({"1/2", "1/2", "1/2"}))) ==
        "3:1/2 5:1/2 6:1/2");
  std::istringstream in(text);
  const MbcDatabase back = read_database(in, ReadOptions{true});
  CHECK(back.collections() == db.collections());

  std::istringstream stream(text);
  std::size_t lines = 0;
  const DatabaseHeader h = for_each_line(stream, [&](const WeightedCollection&) { ++lines; });
  CHECK(h.n == 3);
  CHECK(h.count == 6);
  CHECK(lines == 6);

  std::istringstream unbalanced("MBCDB 1 n=3 count=1\n3:1/2 5:1/2\n");
  CHECK_THROWS(read_database(unbalanced, ReadOptions{true}));
  CHECK(parse_line("a:3/4", 4).coalitions == coalitions({"2,4"}, 4));
  CHECK_THROWS(parse_line("3:1", 3));                 // weight without denominator
  CHECK_THROWS(parse_line("3:-1/2", 3));
  CHECK_THROWS(parse_line("5:1/2 3:1/2 6:1/2", 3));   // not canonical
  CHECK_THROWS(parse_line("3:1/2 3:1/2 6:1/2", 3));   // duplicate
  CHECK_THROWS(parse_line("8:1", 3));                 // outside N
  CHECK_THROWS(parse_line("7:x", 3));
  std::istringstream bad_count("MBCDB 1 n=3 count=2\n7:1/1\n");
  CHECK_THROWS(read_database(bad_count));
  std::istringstream bad_order("MBCDB 1 n=2 count=2\n3:1/1\n1:1/1 2:1/1\n");
  CHECK_THROWS(read_database(bad_order));
}

TEST_CASE("streamed generation writes the same bytes") {
  const auto dir = std::filesystem::temp_directory_path() / "mbc_stream_test";
  std::filesystem::create_directories(dir);
  StreamOptions stream;
  stream.scratch_dir = dir.string();
  stream.shard_keys = 100;
  std::ostringstream streamed;
  const std::size_t count = peleg_to_stream(5, streamed, PelegOptions{}, stream);
  std::ostringstream direct;
  write_database(direct, peleg(5));
  CHECK(count == 1292);
  CHECK(streamed.str() == direct.str());
  std::filesystem::remove_all(dir);
}

TEST_CASE("balanced collections and unbalanced witnesses") {
  const MbcDatabase db3 = peleg(3);
  CHECK(is_balanced_collection(coalitions({"1", "2", "3", "1,2,3"}, 3), db3));
  CHECK(is_balanced_collection(coalitions({"1,2,3"}, 3), db3));
  CHECK_FALSE(is_balanced_collection(coalitions({"1", "1,2", "1,3"}, 3), db3));

  struct Witness {
    int n;
    std::vector<const char*> keys;
    std::vector<int> y;
  };
  const Witness ws[] = {{3, {"1,2", "1,3", "1"}, {2, -1, -1}},
                        {4, {"1", "1,2", "1,3", "1,4", "1,2,3", "1,2,4", "1,3,4"}, {3, -1, -1, -1}}};
  for (const auto& w : ws) {
    int total = 0;
    for (int v : w.y) total += v;
    CHECK(total == 0);
    std::vector<Coalition> cs;
    for (const char* k : w.keys) cs.push_back(parse_coalition_key(k, w.n));
    for (Coalition s : cs) {
      int sum = 0;
      for (int i : players_of(s)) sum += w.y[static_cast<std::size_t>(i - 1)];
      CHECK(sum > 0);
    }
    std::sort(cs.begin(), cs.end());
    const MbcDatabase db = peleg(w.n);
    CHECK_FALSE(is_balanced_collection(cs, db));
    // Maximality: adding any other coalition makes it balanced.
    for (Coalition t : all_coalitions(w.n)) {
      if (std::find(cs.begin(), cs.end(), t) != cs.end()) continue;
      std::vector<Coalition> more = cs;
      more.push_back(t);
      std::sort(more.begin(), more.end());
      bool contains_balanced = false;
      for (const auto& c : db.collections()) {
        contains_balanced = contains_balanced ||
                            std::includes(more.begin(), more.end(), c.coalitions.begin(), c.coalitions.end());
      }
      CHECK(contains_balanced);
    }
  }
}

TEST_CASE("regular hypergraph view") {
  auto h = to_regular_hypergraph(
      canonical_collection(coalitions({"1,2", "1,3", "2,3"}, 3), rats({"1/2", "1/2", "1/2"})));
  CHECK(h.depth == 2);
  CHECK(h.multiplicities == std::vector<std::int64_t>{1, 1, 1});
  h = to_regular_hypergraph(canonical_collection(coalitions({"1", "2", "3"}, 3), rats({"1", "1", "1"})));
  CHECK(h.depth == 1);
  CHECK(h.multiplicities == std::vector<std::int64_t>{1, 1, 1});
  h = to_regular_hypergraph(canonical_collection(coalitions({"1,2", "1,3", "1,4", "2,3,4"}, 4),
                                                 rats({"1/3", "1/3", "1/3", "2/3"})));
  CHECK(h.depth == 3);
  CHECK(h.multiplicities == std::vector<std::int64_t>{1, 1, 1, 2});
  const MbcDatabase db = peleg(4);
  for (std::size_t i = 0; i < db.size(); ++i) {
    const auto r = to_regular_hypergraph(db[i]);
    CHECK(r.depth == db.depth(i));
    for (int p = 1; p <= 4; ++p) {
      std::int64_t deg = 0;
      for (std::size_t k = 0; k < db[i].size(); ++k)
        if (db[i].coalitions[k].contains(p)) deg += r.multiplicities[k];
      CHECK(deg == r.depth);
    }
  }
}
