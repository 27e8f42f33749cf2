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

// JSON and CSV views of library results. JSON objects use sorted keys and
// carry a schema_version; fields under "timing" (and per-outcome "times")
// are the only ones that differ between identical seeded runs.

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "fastmatch/analysis.hpp"
#include "fastmatch/harness.hpp"
#include "fastmatch/matcher.hpp"
#include "json.hpp"

namespace fastmatch {

inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::json;

inline Json to_json(const ProbabilityBound& b) {
  return Json{{"alpha", b.alpha},
              {"beta", b.beta},
              {"p_fail_m1", b.p_fail_m1},
              {"p_fail_m2", b.p_fail_m2},
              {"p_success_lower", b.p_success_lower}};
}

inline Json to_json(const CommutationReport& r) {
  return Json{{"compared", r.compared},
              {"guaranteed_last", r.guaranteed_last},
              {"guaranteed_region_holds", r.guaranteed_region_holds()},
              {"match_indices", r.match_indices},
              {"mismatch_indices", r.mismatch_indices},
              {"max_abs_discrepancy", r.max_abs_discrepancy}};
}

inline Json to_json(const OpCounts& ops) {
  return Json{{"additions", ops.additions}, {"multiplications", ops.multiplications}};
}

inline Json to_json(const MatchResult& r, const MatcherConfig& cfg) {
  Json j{{"schema_version", kReportSchemaVersion},
         {"n", cfg.n},
         {"k", cfg.k},
         {"m1", cfg.m1},
         {"m2", cfg.m2},
         {"strategy", to_string(cfg.strategy)},
         {"residue1", r.residue1},
         {"residue2", r.residue2},
         {"candidates1_size", r.candidates1.size()},
         {"candidates2_size", r.candidates2.size()},
         {"status", to_string(r.status)},
         {"downsample_ops", to_json(r.downsample_ops)},
         {"transform_ops", to_json(r.transform_ops)}};
  j["resolved"] = r.resolved ? Json(*r.resolved) : Json(nullptr);
  return j;
}

inline Json to_json(const TrialOutcome& o) {
  Json j{{"trial_index", o.trial_index},
         {"planted_m", o.planted_m},
         {"status", to_string(o.status)},
         {"success", o.success},
         {"times",
          {{"downsample_ns", o.times.downsample_ns},
           {"transform_ns", o.times.transform_ns},
           {"resolve_ns", o.times.resolve_ns}}}};
  j["resolved"] = o.resolved ? Json(*o.resolved) : Json(nullptr);
  if (o.oracle_m) j["oracle_m"] = *o.oracle_m;
  return j;
}

inline Json to_json(const ExperimentReport& r) {
  Json config{{"n", r.n},
              {"k", r.k},
              {"m1", r.m1},
              {"m2", r.m2},
              {"strategy", to_string(r.strategy)},
              {"trials", r.trials},
              {"base_seed", r.base_seed}};
  if (r.snr_db) config["snr_db"] = *r.snr_db;

  Json j{{"schema_version", kReportSchemaVersion},
         {"config", config},
         {"skipped", r.skipped}};
  if (r.skipped) {
    j["skip_reason"] = r.skip_reason;
    return j;
  }
  j["successes"] = r.successes;
  j["success_rate"] = r.success_rate;
  j["theoretical_lower_bound"] = to_json(r.bound);
  if (r.oracle_agreements) j["oracle_agreements"] = *r.oracle_agreements;
  j["timing"] = Json{{"median_downsample_ns", r.timing.median_downsample_ns},
                     {"median_transform_ns", r.timing.median_transform_ns},
                     {"median_resolve_ns", r.timing.median_resolve_ns},
                     {"total_ns", r.timing.total_ns}};
  if (!r.outcomes.empty()) {
    Json outcomes = Json::array();
    for (const auto& o : r.outcomes) outcomes.push_back(to_json(o));
    j["outcomes"] = std::move(outcomes);
  }
  return j;
}

inline Json to_json(const std::vector<ExperimentReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return Json{{"schema_version", kReportSchemaVersion}, {"reports", std::move(arr)}};
}

inline constexpr const char* kReportCsvHeader =
    "n,k,m1,m2,strategy,trials,base_seed,snr_db,successes,success_rate,p_success_lower,"
    "median_downsample_ns,median_transform_ns,median_resolve_ns,skipped";

inline void write_reports_csv(std::ostream& os, const std::vector<ExperimentReport>& reports) {
  os << kReportCsvHeader << '\n';
  for (const auto& r : reports) {
    os << r.n << ',' << r.k << ',' << r.m1 << ',' << r.m2 << ',' << to_string(r.strategy) << ','
       << r.trials << ',' << r.base_seed << ',';
    if (r.snr_db) os << *r.snr_db;
    os << ',' << r.successes << ',' << r.success_rate << ',' << r.bound.p_success_lower << ','
       << r.timing.median_downsample_ns << ',' << r.timing.median_transform_ns << ','
       << r.timing.median_resolve_ns << ',' << (r.skipped ? 1 : 0) << '\n';
  }
}

inline constexpr const char* kTimingCsvHeader = "method,n,k,median_wall_time_ns,add_count,mul_count";

inline void write_timing_csv(std::ostream& os, const std::vector<TimingRow>& rows) {
  os << kTimingCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.method << ',' << r.n << ',' << r.k << ',' << r.median_ns << ',' << r.add_count << ','
       << r.mul_count << '\n';
  }
}

inline Json to_json(const std::vector<TimingRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back(Json{{"method", r.method},
                       {"n", r.n},
                       {"k", r.k},
                       {"median_wall_time_ns", r.median_ns},
                       {"add_count", r.add_count},
                       {"mul_count", r.mul_count}});
  }
  return Json{{"schema_version", kReportSchemaVersion}, {"rows", std::move(arr)}};
}

}  // namespace fastmatch
