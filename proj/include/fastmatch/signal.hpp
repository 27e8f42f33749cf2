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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "fastmatch/error.hpp"
#include "fastmatch/rng.hpp"

namespace fastmatch {

/// Real-valued signal of length N >= 1 with circular (modulo-N) indexing.
class Signal {
 public:
  explicit Signal(std::vector<double> samples) : samples_(std::move(samples)) {
    detail::require(!samples_.empty(), "signal must have at least one sample");
  }
  Signal(std::initializer_list<double> samples)
      : Signal(std::vector<double>(samples)) {}

  std::size_t size() const noexcept { return samples_.size(); }

  double operator[](std::size_t i) const noexcept { return samples_[i]; }

  /// Sample at any integer index, read modulo N.
  double at(std::int64_t i) const noexcept {
    const auto n = static_cast<std::int64_t>(samples_.size());
    std::int64_t r = i % n;
    if (r < 0) r += n;
    return samples_[static_cast<std::size_t>(r)];
  }

  std::span<const double> samples() const noexcept { return samples_; }
  std::vector<double>& mutable_samples() noexcept { return samples_; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> samples_;
};

/// Length-K template searched for inside a Signal.
class Template {
 public:
  explicit Template(std::vector<double> samples) : samples_(std::move(samples)) {
    detail::require(!samples_.empty(), "template must have at least one sample");
  }
  Template(std::initializer_list<double> samples)
      : Template(std::vector<double>(samples)) {}

  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }
  std::span<const double> samples() const noexcept { return samples_; }

  friend bool operator==(const Template&, const Template&) = default;

 private:
  std::vector<double> samples_;
};

/// Cross-correlation scores (Tx)_k for k = 0..N-1.
struct ScoreVector {
  std::vector<double> scores;

  std::size_t size() const noexcept { return scores.size(); }
  double operator[](std::size_t k) const noexcept { return scores[k]; }
};

inline bool is_integral(std::span<const double> values) noexcept {
  return std::all_of(values.begin(), values.end(), [](double v) {
    return std::isfinite(v) && std::nearbyint(v) == v;
  });
}

/// i.i.d. +-1 samples with probability 1/2 each. Bits are consumed LSB first
/// from successive mt19937_64 outputs, so the result is bit-exact for a seed.
inline Signal generate_binary_signal(std::size_t n, std::uint64_t seed) {
  detail::require(n >= 1, "generate_binary_signal: n must be positive");
  Engine engine = make_engine(seed, Stream::kSignal);
  std::vector<double> samples(n);
  std::size_t i = 0;
  while (i < n) {
    std::uint64_t bits = engine();
    const std::size_t take = std::min<std::size_t>(64, n - i);
    for (std::size_t b = 0; b < take; ++b, bits >>= 1) {
      samples[i++] = (bits & 1U) ? 1.0 : -1.0;
    }
  }
  return Signal(std::move(samples));
}

/// [x_m, x_{m+1}, ..., x_{m+k-1}] read modulo N.
inline Template extract_template(const Signal& x, std::size_t m, std::size_t k) {
  detail::require(k >= 1 && k <= x.size(),
                  "extract_template: need 1 <= k <= N");
  detail::require(m < x.size(), "extract_template: m must lie in [0, N)");
  std::vector<double> out(k);
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < k; ++i) out[i] = x[(m + i) % n];
  return Template(std::move(out));
}

/// Brute-force circular cross-correlation, scores[k] = sum_i t_i x_{(k+i) mod N}.
/// O(NK); this is the ground-truth oracle for every faster path.
inline ScoreVector cross_correlation_full(const Signal& x, const Template& t) {
  const std::size_t n = x.size();
  const std::size_t k = t.size();
  detail::require(k <= n, "cross_correlation_full: template longer than signal");

  // x followed by its first k-1 samples, so windows never wrap.
  std::vector<double> unrolled(n + k - 1);
  for (std::size_t i = 0; i < unrolled.size(); ++i) unrolled[i] = x[i % n];

  std::vector<double> scores(n, 0.0);
  constexpr std::size_t kTile = 1024;  // keeps the accumulator tile in L1
  for (std::size_t base = 0; base < n; base += kTile) {
    const std::size_t len = std::min(kTile, n - base);
    double* acc = scores.data() + base;
    for (std::size_t i = 0; i < k; ++i) {
      const double ti = t[i];
      if (ti == 0.0) continue;
      const double* src = unrolled.data() + base + i;
      for (std::size_t j = 0; j < len; ++j) acc[j] += ti * src[j];
    }
  }
  return ScoreVector{std::move(scores)};
}

/// Index of the maximum; ties go to the lowest index.
inline std::size_t argmax_index(std::span<const double> v) {
  detail::require(!v.empty(), "argmax_index: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline double signal_power(const Signal& x) noexcept {
  double acc = 0.0;
  for (double v : x.samples()) acc += v * v;
  return acc / static_cast<double>(x.size());
}

/// x + e with e ~ N(0, sigma^2), sigma^2 = P_x * 10^(-snr_db/10) and P_x the
/// empirical power of x.
inline Signal add_awgn(const Signal& x, double snr_db, std::uint64_t seed) {
  const double variance = signal_power(x) * std::pow(10.0, -snr_db / 10.0);
  const double sigma = std::sqrt(variance);
  std::vector<double> out(x.samples().begin(), x.samples().end());
  if (sigma == 0.0) return Signal(std::move(out));
  Engine engine = make_engine(seed, Stream::kNoise);
  std::normal_distribution<double> gauss(0.0, sigma);
  for (double& v : out) v += gauss(engine);
  return Signal(std::move(out));
}

}  // namespace fastmatch
