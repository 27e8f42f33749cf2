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

// Probabilistic fast template matching.
//
// The signal is folded at two coprime moduli M1, M2 >= K. Correlating each
// folded signal with the template gives, at index i < M_j, the sum of the
// full correlation scores (Tx)_p over every p congruent to i mod M_j. The
// best residue modulo each M_j then pins the match position down through
// the Chinese Remainder Theorem, since M1 * M2 > N.

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fastmatch/downsample.hpp"
#include "fastmatch/error.hpp"
#include "fastmatch/signal.hpp"
#include "fastmatch/spectral.hpp"

namespace fastmatch {

namespace detail {
__extension__ typedef unsigned __int128 uint128;
}  // namespace detail

struct MatcherConfig {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  DownsampleStrategy strategy = DownsampleStrategy::kExtended;

  /// Throws InvalidArgument unless gcd(m1, m2) = 1, m1*m2 > n, and
  /// k <= min(m1, m2) <= max(m1, m2) <= n.
  void validate() const {
    detail::require(n >= 1 && k >= 1, "MatcherConfig: n and k must be positive");
    detail::require(m1 >= k && m2 >= k, "MatcherConfig: moduli must be >= k");
    detail::require(m1 <= n && m2 <= n, "MatcherConfig: moduli must not exceed n");
    detail::require(std::gcd(m1, m2) == 1, "MatcherConfig: moduli must be coprime");
    detail::require(static_cast<detail::uint128>(m1) * m2 > n,
                    "MatcherConfig: m1 * m2 must exceed n");
  }
};

enum class MatchStatus { kResolved, kEmptyIntersection, kAmbiguousIntersection };

inline const char* to_string(MatchStatus s) noexcept {
  switch (s) {
    case MatchStatus::kResolved: return "resolved";
    case MatchStatus::kEmptyIntersection: return "empty_intersection";
    case MatchStatus::kAmbiguousIntersection: return "ambiguous_intersection";
  }
  return "unknown";
}

struct StageTimes {
  std::int64_t downsample_ns = 0;
  std::int64_t transform_ns = 0;
  std::int64_t resolve_ns = 0;
};

struct MatchResult {
  std::size_t residue1 = 0;
  std::size_t residue2 = 0;
  std::vector<std::size_t> candidates1;
  std::vector<std::size_t> candidates2;
  std::optional<std::size_t> resolved;
  MatchStatus status = MatchStatus::kEmptyIntersection;
  // Folded correlation scores over [0, m_j).
  std::vector<double> scores1;
  std::vector<double> scores2;
  OpCounts downsample_ops;
  OpCounts transform_ops;
};

/// Smallest m >= k with m(m+1) > n.
inline std::size_t smallest_covering_modulus(std::size_t n, std::size_t k) {
  detail::require(n >= 1 && k >= 1, "pick_coprime_moduli: n and k must be positive");
  auto covers = [n](std::size_t m) {
    return static_cast<detail::uint128>(m) * (m + 1) > n;
  };
  if (covers(k)) return k;
  std::size_t lo = k, hi = n;  // covers(n) always holds
  while (lo + 1 < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (covers(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// (k, k+1); requires k(k+1) > n.
inline std::pair<std::size_t, std::size_t> pick_coprime_moduli(std::size_t n, std::size_t k) {
  const std::size_t m = smallest_covering_modulus(n, k);
  if (m != k) throw TemplateTooSmall(n, k, m);
  return {k, k + 1};
}

inline MatcherConfig default_config(std::size_t n, std::size_t k,
                                    DownsampleStrategy strategy = DownsampleStrategy::kExtended) {
  const auto [m1, m2] = pick_coprime_moduli(n, k);
  return MatcherConfig{n, k, m1, m2, strategy};
}

/// { residue + i * m : i = 0..ceil(n/m)-1 } restricted to [0, n).
inline std::vector<std::size_t> candidate_set(std::size_t residue, std::size_t m_factor,
                                              std::size_t n) {
  detail::require(m_factor >= 1, "candidate_set: modulus must be positive");
  detail::require(residue < m_factor, "candidate_set: residue must be < modulus");
  std::vector<std::size_t> out;
  out.reserve(ceil_div(n, m_factor));
  for (std::size_t p = residue; p < n; p += m_factor) out.push_back(p);
  return out;
}

namespace detail {

// Inverse of a modulo m for gcd(a, m) = 1, by the extended Euclidean algorithm.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a % m, r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) throw InvalidArgument("crt_resolve: moduli are not coprime");
  std::int64_t inv = old_s % m;
  return inv < 0 ? inv + m : inv;
}

}  // namespace detail

/// Unique z in [0, m1*m2) with z = r1 (mod m1), z = r2 (mod m2); empty when z >= n.
inline std::optional<std::size_t> crt_resolve(std::size_t r1, std::size_t m1, std::size_t r2,
                                              std::size_t m2, std::size_t n) {
  detail::require(m1 >= 1 && m2 >= 1, "crt_resolve: moduli must be positive");
  detail::require(r1 < m1 && r2 < m2, "crt_resolve: residue out of range");
  detail::require(std::gcd(m1, m2) == 1, "crt_resolve: moduli are not coprime");
  detail::require(static_cast<detail::uint128>(m1) * m2 >= n,
                  "crt_resolve: m1 * m2 must cover n");
  detail::require(m1 < (std::size_t{1} << 62) && m2 < (std::size_t{1} << 62),
                  "crt_resolve: moduli too large");
  if (m2 == 1) return r1 < n ? std::optional<std::size_t>(r1) : std::nullopt;

  const auto sm1 = static_cast<std::int64_t>(m1);
  const auto sm2 = static_cast<std::int64_t>(m2);
  const std::int64_t inv = detail::mod_inverse(sm1 % sm2, sm2);
  std::int64_t diff = (static_cast<std::int64_t>(r2) - static_cast<std::int64_t>(r1 % m2)) % sm2;
  if (diff < 0) diff += sm2;
  const auto lift = static_cast<detail::uint128>(diff) * static_cast<detail::uint128>(inv) %
                    static_cast<detail::uint128>(m2);
  const detail::uint128 z = r1 + static_cast<detail::uint128>(m1) * lift;
  if (z >= n) return std::nullopt;
  return static_cast<std::size_t>(z);
}

/// Reusable matcher for one configuration. Holds FFT workspaces, so an
/// instance belongs to one thread at a time.
class Matcher {
 public:
  explicit Matcher(MatcherConfig config)
      : config_((config.validate(), config)),
        correlator1_(transform_length(config_.m1)),
        correlator2_(transform_length(config_.m2)) {}

  const MatcherConfig& config() const noexcept { return config_; }

  MatchResult match(const Signal& x, const Template& t, StageTimes* times = nullptr) {
    detail::require(x.size() == config_.n, "match_fast: signal length differs from config");
    detail::require(t.size() == config_.k, "match_fast: template length differs from config");
    using Clock = std::chrono::steady_clock;
    MatchResult result;

    const auto t0 = Clock::now();
    const DownsampledSignal y1 = fold(x, config_.m1, &result.downsample_ops);
    const DownsampledSignal y2 = fold(x, config_.m2, &result.downsample_ops);
    const auto t1 = Clock::now();

    std::vector<double> r1 = correlator1_.correlate(y1.values, t.samples(), &result.transform_ops);
    std::vector<double> r2 = correlator2_.correlate(y2.values, t.samples(), &result.transform_ops);
    // Only [0, M) is free of wrap-around mismatches, and [0, M) already
    // covers every residue class.
    r1.resize(config_.m1);
    r2.resize(config_.m2);
    result.residue1 = argmax_index(r1);
    result.residue2 = argmax_index(r2);
    result.scores1 = std::move(r1);
    result.scores2 = std::move(r2);
    const auto t2 = Clock::now();

    result.candidates1 = candidate_set(result.residue1, config_.m1, config_.n);
    result.candidates2 = candidate_set(result.residue2, config_.m2, config_.n);
    std::vector<std::size_t> common;
    std::set_intersection(result.candidates1.begin(), result.candidates1.end(),
                          result.candidates2.begin(), result.candidates2.end(),
                          std::back_inserter(common));
    const auto crt = crt_resolve(result.residue1, config_.m1, result.residue2, config_.m2,
                                 config_.n);
    if (common.size() == 1) {
      result.status = MatchStatus::kResolved;
      assert(crt && *crt == common.front());
      result.resolved = crt;
    } else if (common.empty()) {
      result.status = MatchStatus::kEmptyIntersection;
      assert(!crt);
    } else {
      result.status = MatchStatus::kAmbiguousIntersection;
    }
    const auto t3 = Clock::now();

    if (times) {
      auto ns = [](auto d) {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(d).count();
      };
      times->downsample_ns = ns(t1 - t0);
      times->transform_ns = ns(t2 - t1);
      times->resolve_ns = ns(t3 - t2);
    }
    return result;
  }

 private:
  std::size_t transform_length(std::size_t m) const noexcept {
    return config_.strategy == DownsampleStrategy::kExtended ? m + config_.k : m;
  }

  DownsampledSignal fold(const Signal& x, std::size_t m, OpCounts* ops) const {
    return config_.strategy == DownsampleStrategy::kExtended
               ? downsample_extended(x, m, config_.k, ops)
               : downsample_block(x, m, ops);
  }

  MatcherConfig config_;
  CircularCorrelator correlator1_;
  CircularCorrelator correlator2_;
};

inline MatchResult match_fast(const Signal& x, const Template& t, const MatcherConfig& cfg) {
  Matcher matcher(cfg);
  return matcher.match(x, t);
}

/// Ground truth: argmax of the brute-force full correlation.
inline std::size_t match_oracle(const Signal& x, const Template& t) {
  return argmax_index(cross_correlation_full(x, t).scores);
}

}  // namespace fastmatch
