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

#include "mbc/linalg.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace mbc {
namespace {

using IntRow = std::vector<BigInt>;

// Row echelon form of an integer matrix obtained by fraction-free (Bareiss)
// elimination. Entries stay minors of the input, so they never blow up the
// way naive rational elimination does.
struct Echelon {
  std::vector<IntRow> rows;
  std::vector<std::size_t> pivot_cols;
};

// Scales each row by the lcm of its denominators.
std::vector<IntRow> clear_denominators(const RatMatrix& a) {
  std::vector<IntRow> out(a.rows(), IntRow(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    BigInt l = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out[r][c] = a(r, c).get_num() * (l / a(r, c).get_den());
    }
  }
  return out;
}

Echelon bareiss(std::vector<IntRow> m, std::size_t cols) {
  Echelon e;
  const std::size_t nrows = m.size();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < nrows; ++c) {
    std::size_t pivot = r;
    while (pivot < nrows && m[pivot][c] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

// Back substitution on an echelon system restricted to the first `vars`
// columns. `rhs_col`, when set, is the augmented column. Free variables take
// the values given in `free_values` (indexed by column).
RatVector back_substitute(const Echelon& e, std::size_t vars, RatVector x,
                          std::size_t rhs_col, bool has_rhs) {
  for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
    const std::size_t pc = e.pivot_cols[k];
    if (pc >= vars) continue;
    const IntRow& row = e.rows[k];
    Rational acc = has_rhs ? Rational(row[rhs_col]) : Rational(0);
    for (std::size_t j = pc + 1; j < vars; ++j) {
      if (row[j] != 0) acc -= Rational(row[j]) * x[j];
    }
    x[pc] = acc / Rational(row[pc]);
  }
  return x;
}

}  // namespace

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix RatMatrix::from_columns(std::span<const RatVector> columns, std::size_t rows) {
  RatMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatVector RatMatrix::multiply(const RatVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch");
  RatVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

RatVector RatMatrix::column(std::size_t c) const {
  RatVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::size_t rank(const RatMatrix& a) {
  return bareiss(clear_denominators(a), a.cols()).pivot_cols.size();
}

SolveResult solve_unique(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  Echelon e = bareiss(clear_denominators(aug), aug.cols());
  const std::size_t k = a.cols();
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == k) return NoSolution{};
  if (e.pivot_cols.size() < k) return NonUnique{};
  return UniqueSolution{back_substitute(e, k, RatVector(k), k, true)};
}

std::vector<RatVector> kernel_basis(const RatMatrix& a) {
  Echelon e = bareiss(clear_denominators(a), a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t pc : e.pivot_cols) is_pivot[pc] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector x(a.cols());
    x[f] = 1;
    basis.push_back(back_substitute(e, a.cols(), std::move(x), 0, false));
  }
  return basis;
}

std::vector<RatVector> left_kernel_basis(const RatMatrix& a) {
  return kernel_basis(a.transposed());
}

bool in_column_span(const RatMatrix& a, const RatVector& b) {
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b.at(r);
  }
  return rank(aug) == rank(a);
}

std::size_t rank_of_masks(std::span<const std::uint32_t> masks, int n) {
  const std::size_t cols = masks.size();
  const std::size_t rows = static_cast<std::size_t>(n);
  std::vector<std::int64_t> m(rows * cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) m[r * cols + c] = (masks[c] >> r) & 1U;

  std::int64_t prev = 1;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t pivot = rk;
    while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rk)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[rk * cols + j], m[pivot * cols + j]);
    const std::int64_t p = m[rk * cols + c];
    for (std::size_t i = rk + 1; i < rows; ++i) {
      const std::int64_t f = m[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        std::int64_t t1, t2, t;
        if (__builtin_mul_overflow(p, m[i * cols + j], &t1) ||
            __builtin_mul_overflow(f, m[rk * cols + j], &t2) ||
            __builtin_sub_overflow(t1, t2, &t)) {
          RatMatrix big(rows, cols);
          for (std::size_t cc = 0; cc < cols; ++cc)
            for (std::size_t rr = 0; rr < rows; ++rr) big(rr, cc) = (masks[cc] >> rr) & 1U;
          return rank(big);
        }
        m[i * cols + j] = t / prev;
      }
      m[i * cols + c] = 0;
    }
    prev = p;
    ++rk;
  }
  return rk;
}

}  // namespace mbc
