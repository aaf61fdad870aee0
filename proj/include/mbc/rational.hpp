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

#ifndef MBC_RATIONAL_HPP
#define MBC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mbc {

// Exact fraction. GMP keeps every value canonical (reduced, positive
// denominator) after each arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts an optional sign followed by either `digits[.digits]` or `p/q`.
// Decimals are read exactly: "0.6" becomes 3/5. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r{BigInt{static_cast<long>(num)}, BigInt{static_cast<long>(den)}};
  r.canonicalize();
  return r;
}

}  // namespace mbc

#endif  // MBC_RATIONAL_HPP
