// Copyright 2026 The fastmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense matrices for verification at toy scale. Nothing on the fast
// path touches these.

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fastmatch/error.hpp"

namespace fastmatch {

template <typename T>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const T> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<T> multiply(std::span<const T> v) const {
    detail::require(v.size() == cols_, "DenseMatrix::multiply: dimension mismatch");
    std::vector<T> out(rows_, T{});
    for (std::size_t r = 0; r < rows_; ++r) {
      T acc{};
      const T* a = data_.data() + r * cols_;
      for (std::size_t c = 0; c < cols_; ++c) acc += a[c] * v[c];
      out[r] = acc;
    }
    return out;
  }

  DenseMatrix multiply(const DenseMatrix& rhs) const {
    detail::require(cols_ == rhs.rows_, "DenseMatrix::multiply: dimension mismatch");
    DenseMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const T a = (*this)(r, k);
        if (a == T{}) continue;
        for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
      }
    }
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  void write_csv(std::ostream& os) const {
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c) os << ',';
        os << (*this)(r, c);
      }
      os << '\n';
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

/// First `rows` rows of circ(seed): row j is the seed circularly shifted right
/// j times, so entry (j, i) = seed[(i - j) mod n]. `rows` may exceed n.
template <typename T>
DenseMatrix<T> partial_circulant(std::span<const T> seed, std::size_t rows) {
  const std::size_t n = seed.size();
  detail::require(n >= 1, "partial_circulant: empty seed");
  DenseMatrix<T> out(rows, n);
  for (std::size_t j = 0; j < rows; ++j) {
    const std::size_t shift = j % n;
    for (std::size_t i = 0; i < n; ++i) out(j, i) = seed[(i + n - shift) % n];
  }
  return out;
}

template <typename T>
DenseMatrix<T> circulant(std::span<const T> seed) {
  return partial_circulant(seed, seed.size());
}

/// circ([t 0_{1 x (n-K)}]) with t zero-padded to length n.
template <typename T>
DenseMatrix<T> padded_circulant(std::span<const T> t, std::size_t n) {
  detail::require(t.size() <= n, "padded_circulant: seed longer than n");
  std::vector<T> seed(n, T{});
  for (std::size_t i = 0; i < t.size(); ++i) seed[i] = t[i];
  return circulant<T>(seed);
}

}  // namespace fastmatch
