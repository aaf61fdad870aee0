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

#ifndef MBC_TESTS_SUPPORT_HPP
#define MBC_TESTS_SUPPORT_HPP

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "mbc/coalition.hpp"
#include "mbc/game.hpp"
#include "mbc/rational.hpp"

namespace mbc::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(MBC_FIXTURE_DIR) + "/" + name;
}

inline Game load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

inline Rational q(const char* text) { return parse_rational(text); }

// {"1,2", "3"} -> coalitions, in the given order.
inline std::vector<Coalition> coalitions(std::initializer_list<const char*> keys, int n) {
  std::vector<Coalition> out;
  for (const char* k : keys) out.push_back(parse_coalition_key(k, n));
  return out;
}

inline std::vector<Rational> rats(std::initializer_list<const char*> values) {
  std::vector<Rational> out;
  for (const char* v : values) out.push_back(parse_rational(v));
  return out;
}

}  // namespace mbc::testing

#endif  // MBC_TESTS_SUPPORT_HPP
