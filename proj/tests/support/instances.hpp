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

// Instance generators shared by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fastmatch/matcher.hpp"
#include "fastmatch/signal.hpp"
#include "support/oracles.hpp"

namespace fastmatch::testing {

struct SpikeInstance {
  Signal x;
  Template t;
  std::size_t planted = 0;
  MatcherConfig config;
};

// Nonnegative signal with one dominant spike, built so the full scores meet
// the sufficient condition for both moduli:
//   background x_i in {0, 1}, spike x_m = A = 4F with F = 2 max_j ceil(N/M_j) + 1,
//   template t = [1, e, ..., e] with e = 1 / (4 F K).
// Every off-peak score is then at most 1 + 1 + 1/4 < A / F = 4, while the peak
// is at least A. The spike sits at m >= max_j (ceil(N/M_j) M_j - N) so it is
// not one of the wrapped positions that the fold counts in two classes.
inline SpikeInstance make_spike_instance(Gen& gen) {
  const std::size_t n = gen.size(64, 4096);
  const std::size_t k = gen.size(1, 8);
  std::size_t m1 = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))) +
                   gen.size(0, 6);
  m1 = std::max(m1, k);
  const std::size_t m2 = m1 + 1;
  const MatcherConfig cfg{n, k, m1, m2, DownsampleStrategy::kExtended};

  const std::size_t c1 = (n + m1 - 1) / m1;
  const std::size_t c2 = (n + m2 - 1) / m2;
  const std::size_t w = std::max(c1 * m1 - n, c2 * m2 - n);
  const double f = 2.0 * static_cast<double>(std::max(c1, c2)) + 1.0;

  std::vector<double> xv(n);
  for (auto& v : xv) v = gen.coin() ? 1.0 : 0.0;
  const std::size_t planted = gen.size(w, n - 1);
  xv[planted] = 4.0 * f;

  std::vector<double> tv(k, 1.0 / (4.0 * f * static_cast<double>(k)));
  tv[0] = 1.0;
  return {Signal(std::move(xv)), Template(std::move(tv)), planted, cfg};
}

}  // namespace fastmatch::testing
