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

// Folding a length-N signal down to O(M) samples with additions only.
//
// Extended strategy: y_k = sum_{i < ceil(N/M)} x_{(k + iM) mod N} for
// k = 0..M+K-1, i.e. y = D_{M+K}(circ(r)) x with r_k = 1 iff k mod M == 0.
// The K extra rows let a length-(M+K) circular correlation reproduce the
// folded full correlation on every index in [0, M-1].
//
// Block strategy: x is zero-padded to a multiple of M and the M-sample
// blocks are summed, i.e. y = [I_M I_M ... I_M] x_pad.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fastmatch/dense.hpp"
#include "fastmatch/error.hpp"
#include "fastmatch/signal.hpp"

namespace fastmatch {

enum class DownsampleStrategy { kExtended, kBlock };

struct OpCounts {
  std::uint64_t additions = 0;
  std::uint64_t multiplications = 0;

  OpCounts& operator+=(const OpCounts& o) noexcept {
    additions += o.additions;
    multiplications += o.multiplications;
    return *this;
  }
  friend OpCounts operator+(OpCounts a, const OpCounts& b) noexcept { return a += b; }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

struct DownsampledSignal {
  std::vector<double> values;
  std::size_t modulus = 0;
  std::size_t origin_length = 0;
  DownsampleStrategy strategy = DownsampleStrategy::kExtended;
};

constexpr std::size_t ceil_div(std::size_t a, std::size_t b) noexcept {
  return (a + b - 1) / b;
}

/// Extended fold of an arbitrary-typed sequence. Costs (ceil(N/M)-1)*M
/// additions for the first M outputs plus at most one addition per extra
/// output; when M divides N the extra outputs are copies.
template <typename T>
std::vector<T> fold_extended(std::span<const T> x, std::size_t m, std::size_t k,
                             OpCounts* ops = nullptr) {
  const std::size_t n = x.size();
  detail::require(m >= 1 && m <= n, "downsample_extended: need 1 <= M <= N");
  detail::require(k <= m, "downsample_extended: need K <= M");

  const std::size_t c = ceil_div(n, m);
  const std::size_t wrap = c * m - n;  // samples read twice through modulo-N wrap
  std::vector<T> y(m + k);
  std::uint64_t adds = 0;

  if (wrap == 0) {
    for (std::size_t r = 0; r < m; ++r) y[r] = x[r];
    for (std::size_t row = 1; row < c; ++row) {
      const T* src = x.data() + row * m;
      for (std::size_t r = 0; r < m; ++r) y[r] += src[r];
    }
    adds += static_cast<std::uint64_t>(c - 1) * m;
    // Class k+M is class k again.
    for (std::size_t r = 0; r < k; ++r) y[m + r] = y[r];
  } else {
    // tail[r] sums every term of class r except the leading x_r; the class
    // and its shifted copy y_{M+r} then differ only in one term each.
    std::vector<T> tail(m);
    const std::size_t last = (c - 1) * m;
    const std::size_t head = m - wrap;  // entries present in the last row
    for (std::size_t r = 0; r < head; ++r) tail[r] = x[last + r];
    for (std::size_t r = head; r < m; ++r) tail[r] = x[r - head];
    for (std::size_t row = 1; row + 1 < c; ++row) {
      const T* src = x.data() + row * m;
      for (std::size_t r = 0; r < m; ++r) tail[r] += src[r];
    }
    for (std::size_t r = 0; r < m; ++r) y[r] = x[r] + tail[r];
    for (std::size_t r = 0; r < k; ++r) y[m + r] = tail[r] + x[(r + c * m) % n];
    adds += static_cast<std::uint64_t>(c - 2) * m + m + k;
  }
  if (ops) ops->additions += adds;
  return y;
}

/// Block fold: zero-pad to a multiple of M, then sum the M-sample blocks.
/// Padding zeros are skipped, so the cost is N - M additions.
template <typename T>
std::vector<T> fold_block(std::span<const T> x, std::size_t m, OpCounts* ops = nullptr) {
  const std::size_t n = x.size();
  detail::require(m >= 1, "downsample_block: M must be positive");
  detail::require(m <= n, "downsample_block: need M <= N");
  std::vector<T> y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t start = m; start < n; start += m) {
    const std::size_t len = std::min(m, n - start);
    const T* src = x.data() + start;
    for (std::size_t r = 0; r < len; ++r) y[r] += src[r];
  }
  if (ops) ops->additions += n - m;
  return y;
}

inline DownsampledSignal downsample_extended(const Signal& x, std::size_t m_factor,
                                             std::size_t k_template,
                                             OpCounts* ops = nullptr) {
  detail::require(m_factor <= x.size(), "downsample_extended: M > N");
  detail::require(k_template <= m_factor, "downsample_extended: K > M");
  return {fold_extended<double>(x.samples(), m_factor, k_template, ops), m_factor, x.size(),
          DownsampleStrategy::kExtended};
}

inline DownsampledSignal downsample_block(const Signal& x, std::size_t m_factor,
                                          OpCounts* ops = nullptr) {
  detail::require(m_factor >= 1, "downsample_block: M must be positive");
  return {fold_block<double>(x.samples(), m_factor, ops), m_factor, x.size(),
          DownsampleStrategy::kBlock};
}

inline constexpr std::size_t kMaxDensePhiLength = std::size_t{1} << 16;

/// D_{M+K}(circ(r)) as an explicit (M+K) x N matrix, r_k = 1 iff k mod M == 0.
template <typename T = double>
DenseMatrix<T> build_phi_extended(std::size_t n, std::size_t m_factor, std::size_t k_template) {
  detail::require(n >= 1 && m_factor >= 1, "build_phi_extended: n and M must be positive");
  detail::require(n <= kMaxDensePhiLength,
                  "build_phi_extended: n exceeds the dense verification limit");
  std::vector<T> seed(n, T{});
  for (std::size_t i = 0; i < n; i += m_factor) seed[i] = T{1};
  return partial_circulant<T>(seed, m_factor + k_template);
}

/// [Phi_M Phi_M ... Phi_M] with Phi_M = circ(phi_seed); needs M | n.
template <typename T = double>
DenseMatrix<T> build_phi_block(std::size_t n, std::span<const T> phi_seed) {
  const std::size_t m = phi_seed.size();
  detail::require(m >= 1 && n % m == 0, "build_phi_block: M must divide n");
  detail::require(n <= kMaxDensePhiLength,
                  "build_phi_block: n exceeds the dense verification limit");
  const DenseMatrix<T> block = circulant<T>(phi_seed);
  DenseMatrix<T> out(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = block(r, c % m);
  }
  return out;
}

}  // namespace fastmatch
