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

#include "mbc/peleg.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace mbc {
namespace {

constexpr int kMaxPelegPlayers = 8;

// Collections during generation: at most 8 coalitions with 8-bit masks and
// integer weights mult[i] / depth.
struct IntCollection {
  int k = 0;
  std::array<std::uint8_t, 8> masks{};
  std::array<std::int64_t, 8> mult{};
  std::int64_t depth = 1;
};

// First mask in the most significant byte, zero padded: numeric order of
// keys is lexicographic order of the mask sequences.
std::uint64_t pack_key(const IntCollection& c) {
  std::uint64_t key = 0;
  for (int i = 0; i < 8; ++i) key = (key << 8) | (i < c.k ? c.masks[i] : 0U);
  return key;
}

int unpack_key(std::uint64_t key, std::array<std::uint8_t, 8>& masks) {
  int k = 0;
  for (int i = 0; i < 8; ++i) {
    auto m = static_cast<std::uint8_t>(key >> (56 - 8 * i));
    if (m == 0) break;
    masks[k++] = m;
  }
  return k;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("weight overflow");
  return r;
}

// Sorts by mask and divides out the common factor.
void normalize(IntCollection& c) {
  for (int i = 1; i < c.k; ++i) {
    for (int j = i; j > 0 && c.masks[j - 1] > c.masks[j]; --j) {
      std::swap(c.masks[j - 1], c.masks[j]);
      std::swap(c.mult[j - 1], c.mult[j]);
    }
  }
  std::int64_t g = c.depth;
  for (int i = 0; i < c.k; ++i) g = std::gcd(g, c.mult[i]);
  if (g > 1) {
    c.depth /= g;
    for (int i = 0; i < c.k; ++i) c.mult[i] /= g;
  }
}

IntCollection to_int(const WeightedCollection& w) {
  if (w.size() > 8) throw std::invalid_argument("collection too large for generation");
  RegularHypergraph h = to_regular_hypergraph(w);
  IntCollection c;
  c.k = static_cast<int>(w.size());
  c.depth = h.depth;
  for (int i = 0; i < c.k; ++i) {
    if (w.coalitions[i].bits > 0x7F) throw std::invalid_argument("mask too large");
    c.masks[i] = static_cast<std::uint8_t>(w.coalitions[i].bits);
    c.mult[i] = h.multiplicities[i];
  }
  return c;
}

WeightedCollection to_weighted(const IntCollection& c) {
  WeightedCollection w;
  for (int i = 0; i < c.k; ++i) {
    w.coalitions.emplace_back(c.masks[i]);
    w.weights.push_back(make_rational(c.mult[i], c.depth));
  }
  return w;
}

using Allowed = std::array<bool, 256>;

Allowed allowed_masks(const std::optional<std::vector<Coalition>>& set_system) {
  Allowed allowed{};
  for (std::uint32_t m = 1; m < 256; ++m) {
    if (!set_system) {
      allowed[m] = true;
      continue;
    }
    for (Coalition f : *set_system) {
      if ((m & ~f.bits) == 0) {
        allowed[m] = true;
        break;
      }
    }
  }
  return allowed;
}

struct Parent {
  IntCollection c;
  std::array<std::uint64_t, 2> members{};  // masks < 128
};

using Emit = std::function<void(IntCollection&)>;

// Cases 1 to 3 for one parent.
void extend_single(const IntCollection& c, std::uint8_t pbit, const Emit& emit) {
  const int k = c.k;
  const std::int64_t d = c.depth;
  for (std::uint32_t subset = 0; subset < (1U << k); ++subset) {
    std::int64_t m_sub = 0;
    for (int i = 0; i < k; ++i)
      if (subset >> i & 1U) m_sub += c.mult[i];
    if (m_sub > d) continue;
    IntCollection base = c;
    for (int i = 0; i < k; ++i)
      if (subset >> i & 1U) base.masks[i] |= pbit;
    if (m_sub == d) {
      IntCollection out = base;
      normalize(out);
      emit(out);
      continue;
    }
    IntCollection with_p = base;
    with_p.masks[k] = pbit;
    with_p.mult[k] = d - m_sub;
    with_p.k = k + 1;
    normalize(with_p);
    emit(with_p);
    for (int delta = 0; delta < k; ++delta) {
      if (subset >> delta & 1U) continue;
      if (c.mult[delta] <= d - m_sub) continue;
      IntCollection out = base;
      out.masks[k] = static_cast<std::uint8_t>(c.masks[delta] | pbit);
      out.mult[k] = d - m_sub;
      out.mult[delta] = c.mult[delta] + m_sub - d;
      out.k = k + 1;
      normalize(out);
      emit(out);
    }
  }
}

// Case 4 for one unordered pair whose union has rank k - 1.
void extend_pair(const IntCollection& a, const IntCollection& b, int old_n, std::uint8_t pbit,
                 const Emit& emit) {
  std::array<std::uint8_t, 8> masks{};
  std::array<std::int64_t, 8> mu{}, nu{};
  int k = 0, i = 0, j = 0;
  while (i < a.k || j < b.k) {
    if (k == old_n + 1) return;
    if (j == b.k || (i < a.k && a.masks[i] < b.masks[j])) {
      masks[k] = a.masks[i];
      mu[k] = a.mult[i++];
    } else if (i == a.k || b.masks[j] < a.masks[i]) {
      masks[k] = b.masks[j];
      nu[k] = b.mult[j++];
    } else {
      masks[k] = a.masks[i];
      mu[k] = a.mult[i++];
      nu[k] = b.mult[j++];
    }
    ++k;
  }
  std::array<std::uint32_t, 8> wide{};
  for (int t = 0; t < k; ++t) wide[t] = masks[t];
  if (rank_of_masks(std::span<const std::uint32_t>(wide.data(), k), old_n) !=
      static_cast<std::size_t>(k - 1)) {
    return;
  }
  const std::int64_t d1 = a.depth, d2 = b.depth;
  for (std::uint32_t subset = 0; subset < (1U << k); ++subset) {
    std::int64_t sa = 0, sb = 0;
    for (int t = 0; t < k; ++t) {
      if (subset >> t & 1U) {
        sa += mu[t];
        sb += nu[t];
      }
    }
    // t in ]0,1[ iff one of the two sums is below 1 and the other above.
    const bool below_a = sa < d1, below_b = sb < d2;
    const bool above_a = sa > d1, above_b = sb > d2;
    if (!((below_a && above_b) || (above_a && below_b))) continue;
    std::int64_t den = checked_mul(sb, d1) - checked_mul(sa, d2);
    std::int64_t fa = sb - d2, fb = d1 - sa;
    if (den < 0) {
      den = -den;
      fa = -fa;
      fb = -fb;
    }
    IntCollection out;
    out.k = k;
    out.depth = den;
    bool positive = true;
    for (int t = 0; t < k; ++t) {
      out.masks[t] = static_cast<std::uint8_t>(masks[t] | ((subset >> t & 1U) ? pbit : 0U));
      out.mult[t] = checked_mul(fa, mu[t]) + checked_mul(fb, nu[t]);
      if (out.mult[t] <= 0) positive = false;
    }
    if (!positive) throw std::logic_error("non-positive weight in pair extension");
    normalize(out);
    emit(out);
  }
}

std::vector<Parent> make_parents(const std::vector<IntCollection>& level) {
  std::vector<Parent> parents(level.size());
  for (std::size_t i = 0; i < level.size(); ++i) {
    parents[i].c = level[i];
    for (int t = 0; t < level[i].k; ++t) {
      const std::uint8_t m = level[i].masks[t];
      parents[i].members[m >> 6] |= std::uint64_t{1} << (m & 63);
    }
  }
  return parents;
}

// Runs all four cases over the parents assigned to `worker` (stride
// `workers`), passing every candidate that survives the restriction to emit.
void extend_level_part(const std::vector<Parent>& parents, int p, const Allowed& allowed,
                       int worker, int workers, const Emit& sink) {
  const auto pbit = static_cast<std::uint8_t>(1U << (p - 1));
  const int old_n = p - 1;
  Emit emit = [&](IntCollection& c) {
    for (int i = 0; i < c.k; ++i)
      if (!allowed[c.masks[i]]) return;
    sink(c);
  };
  for (std::size_t i = static_cast<std::size_t>(worker); i < parents.size();
       i += static_cast<std::size_t>(workers)) {
    extend_single(parents[i].c, pbit, emit);
    for (std::size_t j = i + 1; j < parents.size(); ++j) {
      const int united = std::popcount(parents[i].members[0] | parents[j].members[0]) +
                         std::popcount(parents[i].members[1] | parents[j].members[1]);
      if (united > old_n + 1) continue;
      extend_pair(parents[i].c, parents[j].c, old_n, pbit, emit);
    }
  }
}

std::vector<IntCollection> extend_level(const std::vector<IntCollection>& level, int p,
                                        const Allowed& allowed, int threads) {
  const std::vector<Parent> parents = make_parents(level);
  const int workers = std::max(1, threads);
  std::vector<std::unordered_map<std::uint64_t, IntCollection>> maps(
      static_cast<std::size_t>(workers));
  auto run = [&](int w) {
    auto& map = maps[static_cast<std::size_t>(w)];
    extend_level_part(parents, p, allowed, w, workers, [&](IntCollection& c) {
      map.try_emplace(pack_key(c), c);
    });
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  auto& merged = maps[0];
  for (std::size_t w = 1; w < maps.size(); ++w) {
    for (auto& [key, c] : maps[w]) merged.try_emplace(key, c);
    maps[w].clear();
  }
  std::vector<std::pair<std::uint64_t, IntCollection>> sorted(merged.begin(), merged.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<IntCollection> out;
  out.reserve(sorted.size());
  for (auto& [key, c] : sorted) out.push_back(c);
  return out;
}

void validate_set_system(const std::optional<std::vector<Coalition>>& set_system, int n) {
  if (!set_system) return;
  std::uint32_t cover = 0;
  for (Coalition f : *set_system) {
    if (f.empty() || f.bits > full_mask(n)) {
      throw std::invalid_argument("set system element outside N");
    }
    cover |= f.bits;
  }
  if (cover != full_mask(n)) throw std::invalid_argument("set system does not cover N");
}

void check_cap(int n, const PelegOptions& options) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const int cap = std::min(options.max_players, kMaxPelegPlayers);
  if (n > cap) {
    throw std::invalid_argument("n=" + std::to_string(n) + " exceeds the generation cap " +
                                std::to_string(cap));
  }
}

std::vector<IntCollection> levels_up_to(int n, const Allowed& allowed, int threads) {
  std::vector<IntCollection> level;
  if (allowed[1]) {
    IntCollection base;
    base.k = 1;
    base.masks[0] = 1;
    base.mult[0] = 1;
    level.push_back(base);
  }
  for (int p = 2; p <= n; ++p) level = extend_level(level, p, allowed, threads);
  return level;
}

MbcDatabase to_database(int n, const std::vector<IntCollection>& level,
                        const std::optional<std::vector<Coalition>>& set_system) {
  std::vector<WeightedCollection> out;
  out.reserve(level.size());
  for (const IntCollection& c : level) out.push_back(to_weighted(c));
  return MbcDatabase(n, std::move(out), set_system);
}

}  // namespace

MbcDatabase add_new_player(const MbcDatabase& db, int p, const PelegOptions& options) {
  if (p >= 1 && p <= db.n()) {
    throw std::invalid_argument("player " + std::to_string(p) + " is already in N");
  }
  if (p != db.n() + 1) throw std::invalid_argument("new player must be n + 1");
  if (p > kMaxPelegPlayers) throw std::invalid_argument("too many players for generation");
  std::vector<IntCollection> level;
  for (const WeightedCollection& c : db.collections()) level.push_back(to_int(c));
  const Allowed allowed = allowed_masks(options.set_system);
  return to_database(p, extend_level(level, p, allowed, options.threads), options.set_system);
}

MbcDatabase peleg(int n, const PelegOptions& options) {
  check_cap(n, options);
  validate_set_system(options.set_system, n);
  const Allowed allowed = allowed_masks(options.set_system);
  return to_database(n, levels_up_to(n, allowed, options.threads), options.set_system);
}

namespace {

void spill(std::vector<std::uint64_t>& buffer, const std::filesystem::path& path) {
  std::sort(buffer.begin(), buffer.end());
  buffer.erase(std::unique(buffer.begin(), buffer.end()), buffer.end());
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(buffer.data()),
            static_cast<std::streamsize>(buffer.size() * sizeof(std::uint64_t)));
  if (!out) throw std::runtime_error("cannot write shard " + path.string());
  buffer.clear();
}

// k-way merge over sorted shards, calling fn once per distinct key.
void merge_shards(const std::vector<std::filesystem::path>& shards,
                  const std::function<void(std::uint64_t)>& fn) {
  std::vector<std::ifstream> files;
  for (const auto& s : shards) files.emplace_back(s, std::ios::binary);
  using Head = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
  auto advance = [&](std::size_t i) {
    std::uint64_t key;
    if (files[i].read(reinterpret_cast<char*>(&key), sizeof key)) heap.emplace(key, i);
  };
  for (std::size_t i = 0; i < files.size(); ++i) advance(i);
  bool have_last = false;
  std::uint64_t last = 0;
  while (!heap.empty()) {
    auto [key, i] = heap.top();
    heap.pop();
    advance(i);
    if (have_last && key == last) continue;
    have_last = true;
    last = key;
    fn(key);
  }
}

}  // namespace

std::size_t peleg_to_stream(int n, std::ostream& out, const PelegOptions& options,
                            const StreamOptions& stream) {
  check_cap(n, options);
  validate_set_system(options.set_system, n);
  if (n < 2) {
    MbcDatabase db = peleg(n, options);
    write_database(out, db);
    return db.size();
  }
  const Allowed allowed = allowed_masks(options.set_system);
  const std::vector<Parent> parents = make_parents(levels_up_to(n - 1, allowed, options.threads));

  namespace fs = std::filesystem;
  const fs::path dir = stream.scratch_dir.empty() ? fs::temp_directory_path() : fs::path(stream.scratch_dir);
  fs::create_directories(dir);
  std::vector<fs::path> shards;
  std::vector<std::uint64_t> buffer;
  buffer.reserve(std::min<std::size_t>(stream.shard_keys, std::size_t{1} << 20));
  auto flush = [&] {
    if (buffer.empty()) return;
    shards.push_back(dir / ("mbc_shard_" + std::to_string(shards.size()) + ".bin"));
    spill(buffer, shards.back());
  };
  extend_level_part(parents, n, allowed, 0, 1, [&](IntCollection& c) {
    buffer.push_back(pack_key(c));
    if (buffer.size() >= stream.shard_keys) flush();
  });
  flush();

  std::size_t count = 0;
  merge_shards(shards, [&](std::uint64_t) { ++count; });
  out << format_header({n, count, options.set_system.has_value()}) << '\n';
  const RatVector ones(static_cast<std::size_t>(n), Rational(1));
  merge_shards(shards, [&](std::uint64_t key) {
    std::array<std::uint8_t, 8> masks{};
    const int k = unpack_key(key, masks);
    std::vector<Coalition> coalitions;
    for (int i = 0; i < k; ++i) coalitions.emplace_back(masks[i]);
    SolveResult r = solve_unique(incidence_matrix(coalitions, n), ones);
    auto* u = std::get_if<UniqueSolution>(&r);
    if (u == nullptr) throw std::logic_error("generated collection has no unique weights");
    out << format_line(WeightedCollection{std::move(coalitions), std::move(u->x)}) << '\n';
  });
  for (const auto& s : shards) fs::remove(s);
  if (!out) throw std::runtime_error("write failure while streaming database");
  return count;
}

}  // namespace mbc
