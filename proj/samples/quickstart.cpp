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

// Locate a 4096-sample code inside a 2^20-sample received signal, then
// compare against a full-length FFT correlation.

#include <cstdio>

#include "fastmatch/fastmatch.hpp"

int main() {
  using namespace fastmatch;

  constexpr std::size_t n = std::size_t{1} << 20;
  constexpr std::size_t k = std::size_t{1} << 12;
  constexpr std::size_t planted = 123457;

  const Signal clean = generate_binary_signal(n, /*seed=*/42);
  const Template code = extract_template(clean, planted, k);
  const Signal received = add_awgn(clean, /*snr_db=*/0.0, /*seed=*/42);

  Matcher matcher(default_config(n, k));
  const MatchResult r = matcher.match(received, code);

  std::printf("moduli      : %zu, %zu\n", matcher.config().m1, matcher.config().m2);
  std::printf("residues    : %zu, %zu\n", r.residue1, r.residue2);
  std::printf("status      : %s\n", to_string(r.status));
  if (r.resolved) std::printf("resolved    : %zu (planted %zu)\n", *r.resolved, planted);
  std::printf("full FFT    : %zu\n", full_fft_match(received, code));

  const ProbabilityBound b = success_probability_bound(n, k, matcher.config().m1,
                                                       matcher.config().m2);
  std::printf("lower bound : %.4f\n", b.p_success_lower);
  return r.resolved == planted ? 0 : 1;
}
