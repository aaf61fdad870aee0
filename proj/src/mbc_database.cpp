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

#include "mbc/mbc_database.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mbc {

MemberSet member_set(std::span<const Coalition> coalitions) {
  MemberSet m;
  for (Coalition s : coalitions) m.set(s.bits);
  return m;
}

bool collection_less(const WeightedCollection& a, const WeightedCollection& b) {
  return std::lexicographical_compare(a.coalitions.begin(), a.coalitions.end(),
                                      b.coalitions.begin(), b.coalitions.end());
}

MbcDatabase::MbcDatabase(int n, std::vector<WeightedCollection> collections,
                         std::optional<std::vector<Coalition>> set_system)
    : n_(n),
      restricted_(set_system.has_value()),
      set_system_(std::move(set_system)),
      collections_(std::move(collections)) {
  if (n < 1 || n > kMaxDatabasePlayers) {
    throw std::invalid_argument("database size must be in 1.." +
                                std::to_string(kMaxDatabasePlayers));
  }
  std::sort(collections_.begin(), collections_.end(), collection_less);
  depth_.reserve(collections_.size());
  members_.reserve(collections_.size());
  for (std::size_t i = 0; i < collections_.size(); ++i) {
    const WeightedCollection& c = collections_[i];
    if (i > 0 && !collection_less(collections_[i - 1], c)) {
      throw std::invalid_argument("duplicate collection " + describe(c.coalitions));
    }
    for (Coalition s : c.coalitions) {
      if (s.empty() || s.bits > full_mask(n)) {
        throw std::invalid_argument("coalition outside N in " + describe(c.coalitions));
      }
    }
    RegularHypergraph h = to_regular_hypergraph(c);
    depth_.push_back(h.depth);
    for (std::size_t j = 0; j < c.size(); ++j) {
      mult_.push_back(h.multiplicities[j]);
      masks_.push_back(c.coalitions[j].bits);
    }
    offset_.push_back(mult_.size());
    members_.push_back(member_set(c.coalitions));
  }
}

std::optional<std::size_t> MbcDatabase::find(std::span<const Coalition> sorted) const {
  WeightedCollection probe;
  probe.coalitions.assign(sorted.begin(), sorted.end());
  auto it = std::lower_bound(collections_.begin(), collections_.end(), probe, collection_less);
  if (it == collections_.end() || it->coalitions != probe.coalitions) return std::nullopt;
  return static_cast<std::size_t>(it - collections_.begin());
}

bool is_balanced_collection(std::span<const Coalition> coalitions, const MbcDatabase& db) {
  if (coalitions.empty()) return false;
  for (Coalition s : coalitions) {
    if (s.empty() || s.bits > full_mask(db.n())) {
      throw std::invalid_argument("coalition outside the database's player set");
    }
  }
  const MemberSet allowed = member_set(coalitions);
  MemberSet covered;
  for (std::size_t i = 0; i < db.size(); ++i) {
    if ((db.members(i) & ~allowed).none()) covered |= db.members(i);
  }
  return covered == allowed;
}

std::string format_header(const DatabaseHeader& h) {
  std::string out = "MBCDB 1 n=" + std::to_string(h.n) + " count=" + std::to_string(h.count);
  if (h.restricted) out += " restricted";
  return out;
}

std::string format_line(const WeightedCollection& c) {
  std::string out;
  char buf[16];
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) out += ' ';
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, c.coalitions[i].bits, 16);
    (void)ec;
    out.append(buf, end);
    out += ':';
    out += c.weights[i].get_num().get_str();
    out += '/';
    out += c.weights[i].get_den().get_str();
  }
  return out;
}

WeightedCollection parse_line(std::string_view line, int n) {
  auto fail = [&](const std::string& why) -> WeightedCollection {
    throw std::invalid_argument("bad database line '" + std::string(line) + "': " + why);
  };
  std::vector<Coalition> coalitions;
  std::vector<Rational> weights;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    std::string_view item = line.substr(pos, end - pos);
    pos = end + 1;
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) return fail("missing ':'");
    std::uint32_t mask = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + colon, mask, 16);
    if (colon == 0 || ec != std::errc{} || ptr != item.data() + colon) return fail("bad mask");
    if (mask == 0 || mask > full_mask(n)) return fail("mask outside N");
    std::string_view w = item.substr(colon + 1);
    if (w.find('/') == std::string_view::npos) return fail("weight must be p/q");
    Rational weight;
    try {
      weight = parse_rational(w);
    } catch (const std::invalid_argument&) {
      return fail("bad weight");
    }
    if (weight <= 0) return fail("weight must be positive");
    if (!coalitions.empty() && coalitions.back().bits >= mask) {
      return fail("masks must be strictly increasing");
    }
    coalitions.emplace_back(mask);
    weights.push_back(std::move(weight));
  }
  if (coalitions.empty()) return fail("empty collection");
  return WeightedCollection{std::move(coalitions), std::move(weights)};
}

void write_database(std::ostream& out, const MbcDatabase& db) {
  out << format_header({db.n(), db.size(), db.restricted()}) << '\n';
  for (const WeightedCollection& c : db.collections()) out << format_line(c) << '\n';
}

namespace {

DatabaseHeader parse_header(const std::string& line) {
  std::istringstream in(line);
  std::string magic, version, n_tok, count_tok, extra;
  in >> magic >> version >> n_tok >> count_tok;
  if (magic != "MBCDB" || version != "1" || n_tok.rfind("n=", 0) != 0 ||
      count_tok.rfind("count=", 0) != 0) {
    throw std::invalid_argument("not an MBCDB 1 file");
  }
  DatabaseHeader h;
  try {
    h.n = std::stoi(n_tok.substr(2));
    h.count = std::stoull(count_tok.substr(6));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad MBCDB header '" + line + "'");
  }
  if (in >> extra) {
    if (extra != "restricted") throw std::invalid_argument("bad MBCDB header '" + line + "'");
    h.restricted = true;
    if (in >> extra) throw std::invalid_argument("bad MBCDB header '" + line + "'");
  }
  if (h.n < 1 || h.n > kMaxPlayers) throw std::invalid_argument("bad n in MBCDB header");
  return h;
}

void check_weight_sums(const WeightedCollection& c, int n) {
  for (int p = 1; p <= n; ++p) {
    Rational sum = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c.coalitions[i].contains(p)) sum += c.weights[i];
    if (sum != 1) {
      throw std::invalid_argument("weights of " + describe(c.coalitions) +
                                  " do not sum to 1 for player " + std::to_string(p));
    }
  }
}

}  // namespace

DatabaseHeader for_each_line(std::istream& in,
                             const std::function<void(const WeightedCollection&)>& fn) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty database file");
  DatabaseHeader h = parse_header(line);
  std::size_t seen = 0;
  WeightedCollection prev;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    WeightedCollection c = parse_line(line, h.n);
    check_weight_sums(c, h.n);
    if (seen > 0 && !collection_less(prev, c)) {
      throw std::invalid_argument("database lines not strictly sorted at line " +
                                  std::to_string(seen + 2));
    }
    ++seen;
    fn(c);
    prev = std::move(c);
  }
  if (seen != h.count) {
    throw std::invalid_argument("header announces " + std::to_string(h.count) +
                                " collections but file has " + std::to_string(seen));
  }
  return h;
}

MbcDatabase read_database(std::istream& in, const ReadOptions& options) {
  std::vector<WeightedCollection> all;
  int n = 0;
  DatabaseHeader h = for_each_line(in, [&](const WeightedCollection& c) {
    all.push_back(c);
  });
  n = h.n;
  if (n > kMaxDatabasePlayers) {
    throw std::invalid_argument("database too large to load in memory (n=" +
                                std::to_string(n) + ")");
  }
  if (options.verify_minimality) {
    for (const WeightedCollection& c : all) {
      MinimalityResult r = check_minimal_balanced(c.coalitions, n);
      auto* m = std::get_if<Minimal>(&r);
      if (m == nullptr || m->weights != c.weights) {
        throw std::invalid_argument("collection " + describe(c.coalitions) +
                                    " is not minimal balanced with the stored weights");
      }
    }
  }
  MbcDatabase db(n, std::move(all));
  if (h.restricted) db.mark_restricted();
  return db;
}

MbcDatabase load_database(const std::string& path, const ReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open database '" + path + "'");
  return read_database(in, options);
}

}  // namespace mbc
