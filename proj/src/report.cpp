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

#include "mbc/report.hpp"

#include <cstdio>
#include <sstream>

namespace mbc {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string game_hash(const Game& g) { return hex64(fnv1a64(serialize_game(g))); }

std::string database_hash(const MbcDatabase& db) {
  std::ostringstream out;
  write_database(out, db);
  return hex64(fnv1a64(out.str()));
}

Json database_identity(const MbcDatabase& db) {
  Json j;
  j["n"] = db.n();
  j["count"] = db.size();
  j["restricted"] = db.restricted();
  j["hash"] = database_hash(db);
  return j;
}

Json coalition_list(std::span<const Coalition> coalitions) {
  Json j = Json::array();
  for (Coalition s : coalitions) j.push_back(to_key(s));
  return j;
}

Json collection_json(const WeightedCollection& c) {
  Json j;
  j["coalitions"] = coalition_list(c.coalitions);
  Json w = Json::array();
  for (const Rational& x : c.weights) w.push_back(to_string(x));
  j["weights"] = std::move(w);
  return j;
}

Json allocation_json(const Allocation& x) {
  Json j = Json::array();
  for (const Rational& v : x) j.push_back(to_string(v));
  return j;
}

Json feasible_json(std::span<const FeasibleCollectionReport> reports) {
  Json list = Json::array();
  std::size_t surviving = 0;
  std::size_t largest = 0;
  bool blocking = false;
  for (const auto& r : reports) {
    Json e;
    e["collection"] = coalition_list(r.collection);
    e["blocking"] = r.blocking;
    e["minimal_extendable_member"] = r.has_min_extendable;
    list.push_back(std::move(e));
    blocking = blocking || r.blocking;
    if (!r.has_min_extendable) {
      ++surviving;
      largest = std::max(largest, r.collection.size());
    }
  }
  Json j;
  j["count"] = reports.size();
  j["without_minimal_extendable"] = surviving;
  j["largest_without_minimal_extendable"] = largest;
  j["any_blocking"] = blocking;
  j["collections"] = std::move(list);
  return j;
}

Json stability_json(const StabilityReport& report, bool timings) {
  Json j;
  j["verdict"] = to_string(report.verdict);
  j["stage"] = to_string(report.stage);
  j["reason"] = report.reason;
  Json w = Json::object();
  if (!report.witness_collection.empty()) w["collection"] = coalition_list(report.witness_collection);
  if (!report.witness_system.empty()) {
    Json sys = Json::array();
    for (const auto& c : report.witness_system) sys.push_back(collection_json(c));
    w["system"] = std::move(sys);
  }
  if (report.witness_player) w["player"] = *report.witness_player;
  if (report.witness_allocation) w["allocation"] = allocation_json(*report.witness_allocation);
  j["witness"] = std::move(w);
  j["vital_exact"] = coalition_list(report.vital_exact);
  j["extendable"] = coalition_list(report.extendable);
  Json s;
  s["vital_exact"] = report.stats.vital_exact;
  s["extendable"] = report.stats.extendable;
  s["feasible"] = report.stats.feasible;
  s["without_minimal_extendable"] = report.stats.surviving;
  s["largest_without_minimal_extendable"] = report.stats.largest_surviving;
  s["collections_checked"] = report.stats.collections_checked;
  s["systems_checked"] = report.stats.systems_checked;
  j["stats"] = std::move(s);
  if (timings) {
    Json t = Json::object();
    for (const auto& [stage, seconds] : report.timings) t[to_string(stage)] = seconds;
    j["timings"] = std::move(t);
  }
  return j;
}

}  // namespace mbc
