// Copyright 2026 The steplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEPLAB_LINALG_HPP
#define STEPLAB_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "steplab/prime.hpp"

namespace steplab {

// Dense row-major matrix of residues mod p.
class Matrix {
 public:
  Matrix(Prime p, std::size_t rows, std::size_t cols, const WorkBudget& budget = {})
      : p_(p), rows_(rows), cols_(cols) {
    budget.require(static_cast<u64>(rows) * cols, "constraint matrix");
    a_.assign(rows * cols, 0);
  }

  const Prime& modulus() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  u64 at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  u64& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  void add(std::size_t r, std::size_t c, u64 v) { a_[r * cols_ + c] = p_.add(a_[r * cols_ + c], v); }
  u64* row(std::size_t r) { return a_.data() + r * cols_; }
  const u64* row(std::size_t r) const { return a_.data() + r * cols_; }

  std::vector<u64> apply(const std::vector<u64>& v) const {
    std::vector<u64> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const u64* x = row(r);
      u64 s = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (x[c]) s = p_.mul_add(x[c], v[c], s);
      }
      out[r] = s;
    }
    return out;
  }

 private:
  Prime p_;
  std::size_t rows_, cols_;
  std::vector<u64> a_;
};

// Row echelon form: pivot rows with leading entry 1 in strictly increasing
// pivot columns.  Columns without a pivot are free.
class Echelon {
 public:
  explicit Echelon(Matrix m) : p_(m.modulus()), cols_(m.cols()) {
    const Prime& p = p_;
    std::vector<std::size_t> live(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) live[r] = r;
    std::size_t top = 0;  // live[0..top) are used pivot rows
    for (std::size_t c = 0; c < cols_ && top < live.size(); ++c) {
      // pivot: first remaining row with a nonzero entry in column c
      std::size_t found = live.size();
      for (std::size_t i = top; i < live.size(); ++i) {
        if (m.at(live[i], c) != 0) {
          found = i;
          break;
        }
      }
      if (found == live.size()) {
        free_.push_back(c);
        continue;
      }
      std::swap(live[top], live[found]);
      u64* pr = m.row(live[top]);
      const u64 inv = p.inv(pr[c]);
      for (std::size_t j = c; j < cols_; ++j) pr[j] = p.mul(pr[j], inv);
      for (std::size_t i = top + 1; i < live.size(); ++i) {
        u64* rr = m.row(live[i]);
        const u64 f = rr[c];
        if (f == 0) continue;
        const u64 nf = p.neg(f);
        for (std::size_t j = c; j < cols_; ++j) {
          if (pr[j]) rr[j] = p.mul_add(nf, pr[j], rr[j]);
        }
      }
      pivot_cols_.push_back(c);
      pivots_.emplace_back(pr + c, pr + cols_);
      ++top;
    }
    for (std::size_t c = pivot_cols_.empty() ? 0 : pivot_cols_.back() + 1; c < cols_; ++c) {
      if (free_.empty() || free_.back() < c) free_.push_back(c);
    }
  }

  std::size_t rank() const noexcept { return pivot_cols_.size(); }
  std::size_t nullity() const noexcept { return cols_ - rank(); }
  const std::vector<std::size_t>& free_columns() const noexcept { return free_; }

  // Kernel basis vector for the i-th free column: that variable is 1, the
  // other free variables 0, pivots by back substitution; then scaled so the
  // first nonzero entry is 1.
  std::vector<u64> basis_vector(std::size_t i) const {
    const Prime& p = p_;
    std::vector<u64> x(cols_, 0);
    x[free_.at(i)] = 1;
    for (std::size_t r = pivots_.size(); r-- > 0;) {
      const std::size_t c = pivot_cols_[r];
      const auto& row = pivots_[r];  // entries for columns c..cols-1
      u64 s = 0;
      for (std::size_t j = 1; j < row.size(); ++j) {
        if (row[j] && x[c + j]) s = p.mul_add(row[j], x[c + j], s);
      }
      x[c] = p.neg(s);
    }
    for (u64 v : x) {
      if (v == 0) continue;
      const u64 inv = p.inv(v);
      for (auto& y : x) y = p.mul(y, inv);
      break;
    }
    return x;
  }

 private:
  Prime p_;
  std::size_t cols_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::vector<u64>> pivots_;
  std::vector<std::size_t> free_;
};

// First kernel basis vector, or nullopt when M has full column rank.
inline std::optional<std::vector<u64>> nullspace_vector(const Matrix& m) {
  Echelon e(m);
  if (e.nullity() == 0) return std::nullopt;
  return e.basis_vector(0);
}

inline bool is_kernel_vector(const Matrix& m, const std::vector<u64>& v) {
  for (u64 y : m.apply(v))
    if (y != 0) return false;
  return true;
}

}  // namespace steplab

#endif  // STEPLAB_LINALG_HPP
