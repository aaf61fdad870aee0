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

#ifndef MBC_LINALG_HPP
#define MBC_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mbc/rational.hpp"

namespace mbc {

using RatVector = std::vector<Rational>;

// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix(std::size_t rows, std::size_t cols);

  // Builds the (rows x k) matrix whose j-th column is columns[j].
  static RatMatrix from_columns(std::span<const RatVector> columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RatMatrix transposed() const;
  RatVector multiply(const RatVector& x) const;
  RatVector column(std::size_t c) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

std::size_t rank(const RatMatrix& a);

struct UniqueSolution {
  RatVector x;
};
struct NoSolution {};
struct NonUnique {};
using SolveResult = std::variant<UniqueSolution, NoSolution, NonUnique>;

// Solves A x = b. UniqueSolution iff rank(A) = cols = rank([A b]).
SolveResult solve_unique(const RatMatrix& a, const RatVector& b);

// Basis of {x : A x = 0} (vectors of length cols).
std::vector<RatVector> kernel_basis(const RatMatrix& a);

// Basis of {y : y^T A = 0} (vectors of length rows), i.e. the orthogonal
// complement of the column span.
std::vector<RatVector> left_kernel_basis(const RatMatrix& a);

bool in_column_span(const RatMatrix& a, const RatVector& b);

// Rank of the 0/1 matrix whose columns are the characteristic vectors of the
// given masks over n rows. Uses machine integers and falls back to the exact
// big-integer path on overflow.
std::size_t rank_of_masks(std::span<const std::uint32_t> masks, int n);

}  // namespace mbc

#endif  // MBC_LINALG_HPP
