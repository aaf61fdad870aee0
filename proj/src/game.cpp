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

#include "mbc/game.hpp"

#include <set>
#include <stdexcept>

#include "json.hpp"

namespace mbc {

Game::Game(int n) : n_(n) {
  if (n < 1 || n > kMaxGamePlayers) {
    throw std::invalid_argument("game size must be in 1.." +
                                std::to_string(kMaxGamePlayers));
  }
  values_.resize(std::size_t{1} << n);
}

const Rational& Game::value(Coalition s) const {
  if (s.bits > full_mask(n_)) throw std::out_of_range("coalition outside N");
  return values_[s.bits];
}

void Game::set_value(Coalition s, Rational value) {
  if (s.empty()) throw std::invalid_argument("v(empty) is fixed at 0");
  if (s.bits > full_mask(n_)) throw std::out_of_range("coalition outside N");
  values_[s.bits] = std::move(value);
}

Rational coalition_sum(const Allocation& x, Coalition s) {
  Rational total = 0;
  for (int p : players_of(s)) total += x.at(p - 1);
  return total;
}

Game parse_game(std::string_view text) {
  using nlohmann::json;
  std::set<std::string> top_keys;
  std::set<std::string> value_keys;
  auto reject_duplicates = [&](int depth, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::key) {
      const auto& key = parsed.get_ref<const std::string&>();
      auto& seen = depth == 1 ? top_keys : value_keys;
      if (depth <= 2 && !seen.insert(key).second) {
        throw std::invalid_argument("duplicate key '" + key + "'");
      }
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), reject_duplicates);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("game file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("game file must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "values") {
      throw std::invalid_argument("unknown field '" + key + "'");
    }
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw std::invalid_argument("field 'n' must be an integer");
  }
  const int n = doc["n"].get<int>();
  Game game(n);
  if (!doc.contains("values")) return game;
  const json& values = doc["values"];
  if (!values.is_object()) throw std::invalid_argument("field 'values' must be an object");
  for (const auto& [key, raw] : values.items()) {
    Coalition s = parse_coalition_key(key, n);
    Rational value;
    if (raw.is_string()) {
      value = parse_rational(raw.get<std::string>());
    } else if (raw.is_number_integer()) {
      value = parse_rational(raw.dump());
    } else {
      throw std::invalid_argument("value of '" + key +
                                  "' must be a number string such as \"3/5\" or \"0.6\"");
    }
    game.set_value(s, std::move(value));
  }
  return game;
}

std::string serialize_game(const Game& game) {
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  const auto& dense = game.values();
  for (std::size_t mask = 1; mask < dense.size(); ++mask) {
    if (dense[mask] == 0) continue;
    values[to_key(Coalition{static_cast<std::uint32_t>(mask)})] = to_string(dense[mask]);
  }
  nlohmann::ordered_json doc;
  doc["n"] = game.n();
  doc["values"] = std::move(values);
  return doc.dump();
}

}  // namespace mbc
