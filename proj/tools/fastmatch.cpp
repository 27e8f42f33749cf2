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

// Command-line front end: signal generation, single matches, verifiers,
// bound evaluation and the sweep/benchmark drivers.
//
// Exit codes: 0 success, 2 invalid configuration or usage, 3 I/O error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fastmatch/fastmatch.hpp"

namespace {

using namespace fastmatch;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::string out;
  std::string format;  // empty: command default
  std::string strategy = "extended";
  unsigned threads = 1;
};

DownsampleStrategy parse_strategy(const std::string& s) {
  return s == "block" ? DownsampleStrategy::kBlock : DownsampleStrategy::kExtended;
}

void emit(const GlobalFlags& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream os(g.out, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open output file: " + g.out);
  os << text;
  if (!os) throw IoError("write failed: " + g.out);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

bool want_csv(const GlobalFlags& g, bool csv_by_default) {
  return g.format.empty() ? csv_by_default : g.format == "csv";
}

std::string reports_text(const GlobalFlags& g, const std::vector<ExperimentReport>& reports) {
  if (!want_csv(g, false)) return dump(to_json(reports));
  std::ostringstream os;
  write_reports_csv(os, reports);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fastmatch: fast template matching via coprime downsampling"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Base seed")->envname("FASTMATCH_SEED");
  app.add_option("--trials", g.trials, "Monte-Carlo trials per configuration");
  app.add_option("--out", g.out, "Output path (stdout when omitted)");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--strategy", g.strategy, "Downsampling strategy")
      ->check(CLI::IsMember({"extended", "block"}));
  app.add_option("--threads", g.threads, "Worker threads for sweeps");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a seeded +-1 signal (.csv or binary)");
  std::size_t gen_n = 0;
  gen->add_option("--n", gen_n, "Signal length")->required();

  // match
  auto* match = app.add_subcommand("match", "Locate a template in a signal file");
  std::string match_signal, match_template;
  std::optional<std::size_t> template_from;
  std::size_t match_k = 0;
  std::optional<std::size_t> match_m1, match_m2;
  bool match_oracle_flag = false;
  match->add_option("--signal", match_signal, "Signal file")->required();
  auto* tf = match->add_option("--template-from", template_from,
                               "Cut the template from the signal at this index");
  match->add_option("--k", match_k, "Template length (with --template-from)");
  auto* tpath = match->add_option("--template", match_template, "Template file");
  tf->excludes(tpath);
  match->add_option("--m1", match_m1, "First modulus (default k)");
  match->add_option("--m2", match_m2, "Second modulus (default k+1)");
  match->add_flag("--oracle", match_oracle_flag, "Also report the brute-force argmax");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the commutation and sufficient-condition checks");
  std::size_t verify_n = 1024, verify_m = 64, verify_k = 32;
  verify->add_option("--n", verify_n, "Signal length")->capture_default_str();
  verify->add_option("--m", verify_m, "Downsampling factor")->capture_default_str();
  verify->add_option("--k", verify_k, "Template length")->capture_default_str();

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate the success-probability lower bound");
  std::size_t bound_n = 0, bound_k = 0;
  std::optional<std::size_t> bound_m1, bound_m2;
  bound->add_option("--n", bound_n, "Signal length")->required();
  bound->add_option("--k", bound_k, "Template length")->required();
  bound->add_option("--m1", bound_m1, "First modulus (default k)");
  bound->add_option("--m2", bound_m2, "Second modulus (default k+1)");

  // sweep-prob
  auto* sweep_prob = app.add_subcommand("sweep-prob", "Success rate versus signal length");
  std::vector<std::size_t> sweep_n{std::size_t{1} << 18, std::size_t{1} << 20,
                                   std::size_t{1} << 22};
  std::optional<std::size_t> sweep_k;
  std::size_t sweep_ratio = 1024;
  bool sweep_keep = false, sweep_check_oracle = false;
  sweep_prob->add_option("--n", sweep_n, "Signal lengths")->capture_default_str();
  auto* sk = sweep_prob->add_option("--k", sweep_k, "Fixed template length");
  sweep_prob->add_option("--ratio", sweep_ratio, "k = n / ratio when --k is absent")
      ->capture_default_str()
      ->excludes(sk);
  sweep_prob->add_flag("--outcomes", sweep_keep, "Include per-trial outcomes");
  sweep_prob->add_flag("--oracle", sweep_check_oracle, "Check each trial against brute force");
  bool sweep_widen = false;
  sweep_prob->add_flag("--widen-moduli", sweep_widen,
                       "Use larger moduli instead of skipping cells where k is too short");

  // sweep-noise
  auto* sweep_noise = app.add_subcommand("sweep-noise", "Success rate versus SNR");
  std::size_t noise_n = std::size_t{1} << 16, noise_k = std::size_t{1} << 12;
  std::vector<double> noise_snr{20, 10, 6, 1, -2, -6};
  bool noise_keep = false;
  sweep_noise->add_option("--n", noise_n, "Signal length")->capture_default_str();
  sweep_noise->add_option("--k", noise_k, "Template length")->capture_default_str();
  sweep_noise->add_option("--snr", noise_snr, "SNR values in dB")->capture_default_str();
  sweep_noise->add_flag("--outcomes", noise_keep, "Include per-trial outcomes");

  // bench
  auto* bench = app.add_subcommand("bench", "Wall-time benchmark against full FFT and brute force");
  std::string bench_mode = "fix-k";
  BenchParams bp;
  bp.fixed = 1024;
  bp.sweep = {std::size_t{1} << 14, std::size_t{1} << 16, std::size_t{1} << 18};
  bool bench_no_naive = false;
  bench->add_option("--mode", bench_mode, "fix-n (sweep k) or fix-k (sweep n)")
      ->check(CLI::IsMember({"fix-n", "fix-k"}))
      ->capture_default_str();
  bench->add_option("--fixed", bp.fixed, "The fixed n or k")->capture_default_str();
  bench->add_option("--sweep", bp.sweep, "Swept values")->capture_default_str();
  bench->add_option("--reps", bp.repetitions, "Timed repetitions")->capture_default_str();
  bench->add_option("--warmup", bp.warmup, "Warm-up runs")->capture_default_str();
  bench->add_flag("--no-naive", bench_no_naive, "Skip the brute-force method");
  bench->add_flag("--widen-moduli", bp.widen_moduli,
                  "Time the fast path with larger moduli when k is too short for n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitInvalid;
  }

  const DownsampleStrategy strategy = parse_strategy(g.strategy);

  try {
    if (*gen) {
      detail::require(gen_n >= 1, "gen: --n must be positive");
      const Signal x = generate_binary_signal(gen_n, g.seed);
      if (g.out.empty()) {
        for (double v : x.samples()) std::cout << v << '\n';
      } else {
        write_signal(g.out, x);
      }
    } else if (*match) {
      const Signal x = read_signal(match_signal);
      Template t = [&] {
        if (template_from) {
          detail::require(match_k >= 1, "match: --k is required with --template-from");
          return extract_template(x, *template_from, match_k);
        }
        detail::require(!match_template.empty(),
                        "match: need --template-from or --template");
        const Signal raw = read_signal(match_template);
        return Template(std::vector<double>(raw.samples().begin(), raw.samples().end()));
      }();
      MatcherConfig cfg = default_config(x.size(), t.size(), strategy);
      if (match_m1) cfg.m1 = *match_m1;
      if (match_m2) cfg.m2 = *match_m2;
      Matcher matcher(cfg);
      const MatchResult r = matcher.match(x, t);
      Json j = to_json(r, cfg);
      if (match_oracle_flag) j["oracle"] = match_oracle(x, t);
      emit(g, dump(j));
    } else if (*verify) {
      Json j{{"schema_version", kReportSchemaVersion},
             {"n", verify_n},
             {"m", verify_m},
             {"k", verify_k},
             {"seed", g.seed}};
      j["extended_commutation"] =
          to_json(verify_commutation_extended(verify_n, verify_m, verify_k, g.seed));
      if (verify_n % verify_m == 0) {
        const auto seed_row = detail::random_template_i64(verify_m, g.seed + 1);
        const Template phi(std::vector<double>(seed_row.begin(), seed_row.end()));
        j["block_commutation"] = to_json(verify_commutation_block(verify_n, verify_m, phi, g.seed));
      } else {
        j["block_commutation"] = nullptr;
      }
      // Sufficient condition on one seeded noiseless trial at (n, k).
      Matcher matcher(default_config(verify_n, verify_k, strategy));
      const Signal x = generate_binary_signal(verify_n, g.seed);
      Engine engine = make_engine(g.seed, Stream::kPosition);
      const std::size_t planted = uniform_index(engine, verify_n);
      const Template t = extract_template(x, planted, verify_k);
      const MatchResult r = matcher.match(x, t);
      const ScoreVector full = cross_correlation_full(x, t);
      j["sufficient_condition"] = {
          {"planted_m", planted},
          {"holds_m1", sufficient_condition_holds(full, matcher.config().m1)},
          {"holds_m2", sufficient_condition_holds(full, matcher.config().m2)},
          {"resolved", r.resolved ? Json(*r.resolved) : Json(nullptr)}};
      emit(g, dump(j));
    } else if (*bound) {
      const std::size_t m1 = bound_m1.value_or(bound_k);
      const std::size_t m2 = bound_m2.value_or(bound_k + 1);
      Json j = to_json(success_probability_bound(bound_n, bound_k, m1, m2));
      j["schema_version"] = kReportSchemaVersion;
      j["n"] = bound_n;
      j["k"] = bound_k;
      j["m1"] = m1;
      j["m2"] = m2;
      emit(g, dump(j));
    } else if (*sweep_prob) {
      SweepOptions opt{strategy, sweep_keep, sweep_check_oracle, g.threads, sweep_widen};
      const KRule rule = sweep_k ? KRule::fixed(*sweep_k) : KRule::ratio(sweep_ratio);
      emit(g, reports_text(g, run_success_sweep(sweep_n, rule, g.trials, g.seed, opt)));
    } else if (*sweep_noise) {
      SweepOptions opt{strategy, noise_keep, false, g.threads};
      emit(g, reports_text(
                  g, run_noise_sweep(noise_n, noise_k, noise_snr, g.trials, g.seed, opt)));
    } else if (*bench) {
      bp.seed = g.seed;
      bp.include_naive = !bench_no_naive;
      const auto rows = run_timing_benchmark(
          bench_mode == "fix-n" ? BenchMode::kFixNSweepK : BenchMode::kFixKSweepN, bp);
      if (want_csv(g, true)) {
        std::ostringstream os;
        write_timing_csv(os, rows);
        emit(g, os.str());
      } else {
        emit(g, dump(to_json(rows)));
      }
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
