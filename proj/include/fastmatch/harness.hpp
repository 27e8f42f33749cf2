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

// Monte-Carlo drivers and timing benchmarks.
//
// Trial i of a sweep uses seed base_seed + i. Within a trial the signal, the
// planted position and the noise come from separate sub-streams of that
// seed, so the same trial sees the same clean signal at every SNR.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fastmatch/analysis.hpp"
#include "fastmatch/downsample.hpp"
#include "fastmatch/error.hpp"
#include "fastmatch/matcher.hpp"
#include "fastmatch/rng.hpp"
#include "fastmatch/signal.hpp"
#include "fastmatch/spectral.hpp"

namespace fastmatch {

inline const char* to_string(DownsampleStrategy s) noexcept {
  return s == DownsampleStrategy::kExtended ? "extended" : "block";
}

struct TrialOutcome {
  std::size_t trial_index = 0;
  std::size_t planted_m = 0;
  std::optional<std::size_t> resolved;
  MatchStatus status = MatchStatus::kEmptyIntersection;
  bool success = false;
  // Brute-force argmax, filled only when SweepOptions::check_oracle is set.
  std::optional<std::size_t> oracle_m;
  StageTimes times;
};

struct TimingSummary {
  std::int64_t median_downsample_ns = 0;
  std::int64_t median_transform_ns = 0;
  std::int64_t median_resolve_ns = 0;
  std::int64_t total_ns = 0;
};

struct ExperimentReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  DownsampleStrategy strategy = DownsampleStrategy::kExtended;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  std::optional<double> snr_db;

  std::size_t successes = 0;
  double success_rate = 0.0;
  ProbabilityBound bound;
  // Trials whose resolved index equals the brute-force argmax (check_oracle only).
  std::optional<std::size_t> oracle_agreements;
  TimingSummary timing;
  std::vector<TrialOutcome> outcomes;

  bool skipped = false;
  std::string skip_reason;
};

/// How the template length follows from n in a sweep.
struct KRule {
  enum class Kind { kFixed, kRatio };
  Kind kind = Kind::kFixed;
  std::size_t value = 1;

  static KRule fixed(std::size_t k) { return {Kind::kFixed, k}; }
  /// k = n / ratio.
  static KRule ratio(std::size_t r) { return {Kind::kRatio, r}; }

  std::size_t apply(std::size_t n) const noexcept {
    return kind == Kind::kFixed ? value : n / value;
  }
};

struct SweepOptions {
  DownsampleStrategy strategy = DownsampleStrategy::kExtended;
  bool keep_outcomes = false;
  bool check_oracle = false;
  unsigned threads = 1;
  // Use (M, M+1) with M the smallest covering modulus >= k when (k, k+1)
  // cannot cover n, instead of skipping the cell.
  bool widen_moduli = false;
};

namespace detail {

inline std::int64_t median_of(std::vector<std::int64_t> v) {
  if (v.empty()) return 0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const auto lower = *std::max_element(v.begin(), mid);
  return (lower + *mid) / 2;
}

// Runs fn(matcher, trial) for every trial, one Matcher per worker.
template <typename Fn>
std::vector<TrialOutcome> run_trials(const MatcherConfig& cfg, std::size_t trials,
                                     unsigned threads, Fn fn) {
  std::vector<TrialOutcome> outcomes(trials);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, trials));
  auto work = [&](unsigned w) {
    Matcher matcher(cfg);
    for (std::size_t i = w; i < trials; i += workers) outcomes[i] = fn(matcher, i);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return outcomes;
}

inline void summarize(ExperimentReport& report, std::vector<TrialOutcome> outcomes,
                      bool keep_outcomes) {
  std::vector<std::int64_t> ds, tr, rs;
  std::size_t agree = 0;
  bool have_oracle = false;
  for (const auto& o : outcomes) {
    report.successes += o.success ? 1 : 0;
    ds.push_back(o.times.downsample_ns);
    tr.push_back(o.times.transform_ns);
    rs.push_back(o.times.resolve_ns);
    report.timing.total_ns += o.times.downsample_ns + o.times.transform_ns + o.times.resolve_ns;
    if (o.oracle_m) {
      have_oracle = true;
      agree += (o.resolved && *o.resolved == *o.oracle_m) ? 1 : 0;
    }
  }
  report.success_rate =
      static_cast<double>(report.successes) / static_cast<double>(report.trials);
  report.timing.median_downsample_ns = median_of(std::move(ds));
  report.timing.median_transform_ns = median_of(std::move(tr));
  report.timing.median_resolve_ns = median_of(std::move(rs));
  if (have_oracle) report.oracle_agreements = agree;
  if (keep_outcomes) report.outcomes = std::move(outcomes);
}

inline ExperimentReport make_report(std::size_t n, std::size_t k, std::size_t trials,
                                    std::uint64_t base_seed, const SweepOptions& options) {
  ExperimentReport report;
  report.n = n;
  report.k = k;
  report.strategy = options.strategy;
  report.trials = trials;
  report.base_seed = base_seed;
  return report;
}

// Fills m1/m2/bound, or marks the cell skipped.
inline std::optional<MatcherConfig> configure(ExperimentReport& report, bool widen_moduli) {
  try {
    detail::require(report.k >= 1, "template length must be positive");
    MatcherConfig cfg;
    if (widen_moduli && report.k <= report.n) {
      const std::size_t m = smallest_covering_modulus(report.n, report.k);
      cfg = MatcherConfig{report.n, report.k, m, m + 1, report.strategy};
    } else {
      cfg = default_config(report.n, report.k, report.strategy);
    }
    cfg.validate();
    report.m1 = cfg.m1;
    report.m2 = cfg.m2;
    report.bound = success_probability_bound(report.n, report.k, cfg.m1, cfg.m2);
    return cfg;
  } catch (const InvalidArgument& e) {
    report.skipped = true;
    report.skip_reason = e.what();
    return std::nullopt;
  }
}

}  // namespace detail

/// One noiseless (snr_db empty) or noisy trial: draw x and m, cut the
/// template from the clean x, optionally add noise to x, then match.
inline TrialOutcome run_trial(Matcher& matcher, std::uint64_t base_seed, std::size_t trial_index,
                              std::optional<double> snr_db = std::nullopt,
                              bool check_oracle = false) {
  const MatcherConfig& cfg = matcher.config();
  const std::uint64_t seed = trial_seed(base_seed, trial_index);
  const Signal clean = generate_binary_signal(cfg.n, seed);
  Engine position_engine = make_engine(seed, Stream::kPosition);
  const std::size_t planted = static_cast<std::size_t>(uniform_index(position_engine, cfg.n));
  const Template t = extract_template(clean, planted, cfg.k);

  TrialOutcome out;
  out.trial_index = trial_index;
  out.planted_m = planted;
  std::optional<Signal> noisy;
  if (snr_db) noisy = add_awgn(clean, *snr_db, seed);
  const Signal& received = noisy ? *noisy : clean;
  const MatchResult r = matcher.match(received, t, &out.times);
  out.resolved = r.resolved;
  out.status = r.status;
  out.success = r.resolved.has_value() && *r.resolved == planted;
  if (check_oracle) out.oracle_m = match_oracle(received, t);
  return out;
}

inline std::vector<ExperimentReport> run_success_sweep(const std::vector<std::size_t>& n_list,
                                                       KRule k_rule, std::size_t trials,
                                                       std::uint64_t base_seed,
                                                       const SweepOptions& options = {}) {
  detail::require(trials >= 1, "run_success_sweep: trials must be positive");
  detail::require(k_rule.value >= 1, "run_success_sweep: k rule value must be positive");
  std::vector<ExperimentReport> reports;
  for (std::size_t n : n_list) {
    ExperimentReport report = detail::make_report(n, k_rule.apply(n), trials, base_seed, options);
    if (const auto cfg = detail::configure(report, options.widen_moduli)) {
      auto outcomes = detail::run_trials(
          *cfg, trials, options.threads, [&](Matcher& m, std::size_t i) {
            return run_trial(m, base_seed, i, std::nullopt, options.check_oracle);
          });
      detail::summarize(report, std::move(outcomes), options.keep_outcomes);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

inline std::vector<ExperimentReport> run_noise_sweep(std::size_t n, std::size_t k,
                                                     const std::vector<double>& snr_db_list,
                                                     std::size_t trials, std::uint64_t base_seed,
                                                     const SweepOptions& options = {}) {
  detail::require(trials >= 1, "run_noise_sweep: trials must be positive");
  std::vector<ExperimentReport> reports;
  for (double snr : snr_db_list) {
    ExperimentReport report = detail::make_report(n, k, trials, base_seed, options);
    report.snr_db = snr;
    if (const auto cfg = detail::configure(report, options.widen_moduli)) {
      auto outcomes = detail::run_trials(
          *cfg, trials, options.threads, [&](Matcher& m, std::size_t i) {
            return run_trial(m, base_seed, i, snr, options.check_oracle);
          });
      detail::summarize(report, std::move(outcomes), options.keep_outcomes);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Timing

enum class BenchMode { kFixNSweepK, kFixKSweepN };

struct BenchParams {
  std::size_t fixed = 0;             // n for kFixNSweepK, k for kFixKSweepN
  std::vector<std::size_t> sweep;    // k values or n values
  std::size_t repetitions = 5;
  std::size_t warmup = 1;
  std::uint64_t seed = 0;
  bool include_naive = true;
  std::size_t naive_max_work = std::size_t{1} << 30;  // n * k above this skips naive
  bool include_full_fft = true;
  // When k(k+1) <= n, time the fast path with (M, M+1), M the smallest
  // covering modulus, instead of skipping it. Only the cost is meaningful.
  bool widen_moduli = false;
};

struct TimingRow {
  std::string method;  // "fast", "full_fft" or "naive"
  std::size_t n = 0;
  std::size_t k = 0;
  std::int64_t median_ns = 0;
  std::uint64_t add_count = 0;
  std::uint64_t mul_count = 0;
};

namespace detail {

template <typename Fn>
std::int64_t median_wall_time(std::size_t warmup, std::size_t reps, Fn&& fn) {
  for (std::size_t i = 0; i < warmup; ++i) fn();
  std::vector<std::int64_t> samples;
  samples.reserve(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    samples.push_back(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
  }
  return median_of(std::move(samples));
}

// Keeps results observable so the timed work is not optimized away.
inline volatile std::size_t bench_sink = 0;

}  // namespace detail

inline std::vector<TimingRow> run_timing_benchmark(BenchMode mode, const BenchParams& params) {
  detail::require(params.repetitions >= 1, "run_timing_benchmark: repetitions must be positive");
  std::vector<TimingRow> rows;
  for (std::size_t v : params.sweep) {
    const std::size_t n = mode == BenchMode::kFixNSweepK ? params.fixed : v;
    const std::size_t k = mode == BenchMode::kFixNSweepK ? v : params.fixed;
    if (n == 0 || k == 0 || k > n) continue;

    const Signal x = generate_binary_signal(n, params.seed);
    Engine engine = make_engine(params.seed, Stream::kPosition);
    const Template t = extract_template(x, uniform_index(engine, n), k);

    std::optional<MatcherConfig> cfg;
    try {
      if (params.widen_moduli) {
        const std::size_t m = smallest_covering_modulus(n, k);
        cfg = MatcherConfig{n, k, m, m + 1, DownsampleStrategy::kExtended};
      } else {
        cfg = default_config(n, k);
      }
      cfg->validate();
    } catch (const InvalidArgument&) {
      cfg.reset();
    }
    if (cfg) {
      Matcher matcher(*cfg);
      MatchResult last;
      const auto ns = detail::median_wall_time(params.warmup, params.repetitions, [&] {
        last = matcher.match(x, t);
        detail::bench_sink = last.residue1 + last.residue2;
      });
      const OpCounts ops = last.downsample_ops + last.transform_ops;
      rows.push_back({"fast", n, k, ns, ops.additions, ops.multiplications});
    }
    if (params.include_full_fft) {
      FullFftMatcher full(n);
      const auto ns = detail::median_wall_time(params.warmup, params.repetitions, [&] {
        detail::bench_sink = full.match(x, t);
      });
      rows.push_back({"full_fft", n, k, ns, full.ops_per_call().additions,
                      full.ops_per_call().multiplications});
    }
    if (params.include_naive && n * k <= params.naive_max_work) {
      const auto ns = detail::median_wall_time(params.warmup, params.repetitions, [&] {
        detail::bench_sink = match_oracle(x, t);
      });
      rows.push_back({"naive", n, k, ns, static_cast<std::uint64_t>(n) * (k - 1),
                      static_cast<std::uint64_t>(n) * k});
    }
  }
  return rows;
}

}  // namespace fastmatch
