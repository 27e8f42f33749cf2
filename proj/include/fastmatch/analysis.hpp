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

// Executable checks of the commutation identities behind the matcher, the
// deterministic sufficient condition for a correct residue, and the
// explicit success-probability lower bound for binary signals.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "fastmatch/dense.hpp"
#include "fastmatch/downsample.hpp"
#include "fastmatch/error.hpp"
#include "fastmatch/rng.hpp"
#include "fastmatch/signal.hpp"

namespace fastmatch {

/// Index-wise comparison of T^ (Phi x) against Phi (T x) over [0, M).
struct CommutationReport {
  std::vector<std::size_t> match_indices;
  std::vector<std::size_t> mismatch_indices;
  double max_abs_discrepancy = 0.0;
  std::size_t compared = 0;  // M
  // Equality is guaranteed on [0, guaranteed_last].
  std::size_t guaranteed_last = 0;

  bool guaranteed_region_holds() const noexcept {
    return std::none_of(mismatch_indices.begin(), mismatch_indices.end(),
                        [this](std::size_t i) { return i <= guaranteed_last; });
  }
  /// Mismatches outside the guaranteed region.
  std::size_t unguaranteed_mismatches() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(mismatch_indices.begin(), mismatch_indices.end(),
                      [this](std::size_t i) { return i > guaranteed_last; }));
  }
};

struct ProbabilityBound {
  double p_fail_m1 = 0.0;
  double p_fail_m2 = 0.0;
  double p_success_lower = 0.0;
  std::size_t alpha = 0;  // min(m1, m2)
  std::size_t beta = 0;   // max(m1, m2)
};

inline constexpr std::size_t kDefaultDenseLimit = std::size_t{1} << 12;

namespace detail {

template <typename T>
CommutationReport compare_indexwise(const std::vector<T>& lhs, const std::vector<T>& rhs,
                                    std::size_t guaranteed_last, double tolerance) {
  CommutationReport report;
  report.compared = lhs.size();
  report.guaranteed_last = guaranteed_last;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double diff = std::abs(static_cast<double>(lhs[i]) - static_cast<double>(rhs[i]));
    report.max_abs_discrepancy = std::max(report.max_abs_discrepancy, diff);
    (diff <= tolerance ? report.match_indices : report.mismatch_indices).push_back(i);
  }
  return report;
}

template <typename T>
constexpr double exact_tolerance() {
  return std::is_integral_v<T> ? 0.0 : 1e-9;
}

// +-1 signal and a non-zero integer template in [-4, 4], both from `seed`.
inline std::vector<std::int64_t> binary_signal_i64(std::size_t n, std::uint64_t seed) {
  const Signal x = generate_binary_signal(n, seed);
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::int64_t>(x[i]);
  return out;
}

inline std::vector<std::int64_t> random_template_i64(std::size_t k, std::uint64_t seed) {
  Engine engine = make_engine(seed, Stream::kTemplate);
  std::vector<std::int64_t> t(k);
  for (auto& v : t) v = static_cast<std::int64_t>(engine() % 9) - 4;
  if (std::all_of(t.begin(), t.end(), [](std::int64_t v) { return v == 0; })) t[0] = 1;
  return t;
}

}  // namespace detail

/// Basic partial-circulant sampling Phi = D_M(circ(r)) with T^ = circ([t 0]) of
/// size M: equality holds exactly on [0, M-K]; indices in (M-K, M-1] may differ.
template <typename T>
CommutationReport verify_commutation_extended(std::span<const T> x, std::span<const T> t,
                                              std::size_t m_factor,
                                              std::size_t max_n = kDefaultDenseLimit) {
  const std::size_t n = x.size();
  const std::size_t k = t.size();
  detail::require(k >= 1 && k <= m_factor && m_factor <= n,
                  "verify_commutation_extended: need 1 <= K <= M <= N");
  detail::require(n <= max_n, "verify_commutation_extended: n exceeds the dense limit");

  const DenseMatrix<T> full = padded_circulant<T>(t, n);
  const DenseMatrix<T> phi = build_phi_extended<T>(n, m_factor, 0);
  const DenseMatrix<T> small = padded_circulant<T>(t, m_factor);

  const std::vector<T> lhs = small.multiply(std::span<const T>(phi.multiply(x)));
  const std::vector<T> rhs = phi.multiply(std::span<const T>(full.multiply(x)));
  return detail::compare_indexwise(lhs, rhs, m_factor - k, detail::exact_tolerance<T>());
}

inline CommutationReport verify_commutation_extended(std::size_t n, std::size_t m_factor,
                                                     std::size_t k_template, std::uint64_t seed,
                                                     std::size_t max_n = kDefaultDenseLimit) {
  detail::require(n <= max_n, "verify_commutation_extended: n exceeds the dense limit");
  const auto x = detail::binary_signal_i64(n, seed);
  const auto t = detail::random_template_i64(k_template, seed);
  return verify_commutation_extended<std::int64_t>(x, t, m_factor, max_n);
}

/// Block sampling Phi = [Phi_M ... Phi_M] with Phi_M = circ(phi_seed), a
/// length-M template t, T = circ([t 0]) and T^ = circ(t): equality on all of
/// [0, M-1] whenever M divides N.
template <typename T>
CommutationReport verify_commutation_block(std::span<const T> x, std::span<const T> t,
                                           std::span<const T> phi_seed,
                                           std::size_t max_n = kDefaultDenseLimit) {
  const std::size_t n = x.size();
  const std::size_t m = phi_seed.size();
  detail::require(m >= 1 && n % m == 0, "verify_commutation_block: M must divide N");
  detail::require(t.size() >= 1 && t.size() <= m,
                  "verify_commutation_block: template longer than M");
  detail::require(n <= max_n, "verify_commutation_block: n exceeds the dense limit");

  const DenseMatrix<T> full = padded_circulant<T>(t, n);
  const DenseMatrix<T> phi = build_phi_block<T>(n, phi_seed);
  const DenseMatrix<T> small = padded_circulant<T>(t, m);

  const std::vector<T> lhs = small.multiply(std::span<const T>(phi.multiply(x)));
  const std::vector<T> rhs = phi.multiply(std::span<const T>(full.multiply(x)));
  return detail::compare_indexwise(lhs, rhs, m - 1, detail::exact_tolerance<T>());
}

/// Seeded instance: +-1 signal, random integer template of length M. Integer
/// seeds run in exact int64 arithmetic, real seeds in double.
inline CommutationReport verify_commutation_block(std::size_t n, std::size_t m_factor,
                                                  const Template& phi_seed, std::uint64_t seed,
                                                  std::size_t max_n = kDefaultDenseLimit) {
  detail::require(phi_seed.size() == m_factor,
                  "verify_commutation_block: seed length must equal M");
  detail::require(m_factor >= 1 && n % m_factor == 0,
                  "verify_commutation_block: M must divide N");
  detail::require(n <= max_n, "verify_commutation_block: n exceeds the dense limit");
  const auto x = detail::binary_signal_i64(n, seed);
  const auto t = detail::random_template_i64(m_factor, seed);
  if (is_integral(phi_seed.samples())) {
    std::vector<std::int64_t> seed_i(phi_seed.samples().begin(), phi_seed.samples().end());
    return verify_commutation_block<std::int64_t>(x, t, seed_i, max_n);
  }
  std::vector<double> xd(x.begin(), x.end()), td(t.begin(), t.end());
  std::vector<double> sd(phi_seed.samples().begin(), phi_seed.samples().end());
  return verify_commutation_block<double>(xd, td, sd, max_n);
}

/// True iff scores[m] / (2 ceil(N/M) + 1) > max_{k != m} scores[k], m = argmax.
inline bool sufficient_condition_holds(std::span<const double> scores, std::size_t m_factor) {
  const std::size_t n = scores.size();
  detail::require(n >= 2, "sufficient_condition_holds: need at least two scores");
  detail::require(m_factor >= 1, "sufficient_condition_holds: modulus must be positive");
  const std::size_t m = argmax_index(scores);
  double runner_up = -INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != m) runner_up = std::max(runner_up, scores[k]);
  }
  const double factor = 2.0 * static_cast<double>(ceil_div(n, m_factor)) + 1.0;
  return scores[m] / factor > runner_up;
}

inline bool sufficient_condition_holds(const ScoreVector& scores, std::size_t m_factor) {
  return sufficient_condition_holds(std::span<const double>(scores.scores), m_factor);
}

/// Per-modulus failure bound M e^{-K / (8 ceil(N/M))} + 4 (ceil(N/M) - 1) / K.
inline double failure_bound(std::size_t n, std::size_t k, std::size_t m) {
  const double c = static_cast<double>(ceil_div(n, m));
  const double kd = static_cast<double>(k);
  return static_cast<double>(m) * std::exp(-kd / (8.0 * c)) + 4.0 * (c - 1.0) / kd;
}

/// Lower bound on the success probability for +-1 signals. Each factor
/// (1 - P_F) is clamped to [0, 1] before multiplying.
inline ProbabilityBound success_probability_bound(std::size_t n, std::size_t k, std::size_t m1,
                                                  std::size_t m2) {
  detail::require(n >= 1 && k >= 1 && m1 >= 1 && m2 >= 1,
                  "success_probability_bound: arguments must be positive");
  ProbabilityBound b;
  b.p_fail_m1 = failure_bound(n, k, m1);
  b.p_fail_m2 = failure_bound(n, k, m2);
  const double s1 = std::clamp(1.0 - b.p_fail_m1, 0.0, 1.0);
  const double s2 = std::clamp(1.0 - b.p_fail_m2, 0.0, 1.0);
  b.p_success_lower = s1 * s2;
  b.alpha = std::min(m1, m2);
  b.beta = std::max(m1, m2);
  return b;
}

}  // namespace fastmatch
