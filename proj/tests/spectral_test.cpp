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
#include <complex>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "fastmatch/spectral.hpp"
#include "support/oracles.hpp"

namespace fastmatch {
namespace {

using testing::Gen;

double max_abs_value(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

TEST(DftTest, DeltaAndConstant) {
  const SpectrumBuffer delta = dft_forward(std::vector<double>{1, 0, 0, 0});
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(delta[j].real(), 1.0, 1e-15);
    EXPECT_NEAR(delta[j].imag(), 0.0, 1e-15);
  }
  const SpectrumBuffer flat = dft_forward(std::vector<double>{1, 1, 1, 1});
  EXPECT_NEAR(flat[0].real(), 4.0, 1e-15);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_NEAR(std::abs(flat[j]), 0.0, 1e-15);
}

TEST(DftTest, MatchesNaiveDft) {
  Gen gen(31);
  for (std::size_t l : {1u, 2u, 3u, 7u, 64u, 97u, 100u}) {
    const auto v = gen.reals(l);
    const auto expected = testing::naive_dft(v);
    const SpectrumBuffer got = dft_forward(v);
    ASSERT_EQ(got.size(), l);
    for (std::size_t j = 0; j < l; ++j) EXPECT_LT(std::abs(got[j] - expected[j]), 1e-9) << l;
  }
}

TEST(DftTest, RoundTripParsevalAndSymmetry) {
  Gen gen(32);
  for (std::size_t l : {128u, 1u, 5u, 96u, 1000u, 1024u}) {
    const auto v = gen.reals(l);
    const SpectrumBuffer spec = dft_forward(v);
    const auto back = dft_inverse(spec);
    double energy = 0.0, spectral_energy = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      EXPECT_NEAR(back[i].real(), v[i], 1e-9 * (1.0 + std::abs(v[i])));
      EXPECT_NEAR(back[i].imag(), 0.0, 1e-9);
      energy += v[i] * v[i];
      spectral_energy += std::norm(spec[i]);
    }
    EXPECT_NEAR(energy, spectral_energy / static_cast<double>(l), 1e-9 * energy);
    for (std::size_t j = 1; j < l; ++j) {
      EXPECT_LT(std::abs(spec[j] - std::conj(spec[l - j])), 1e-9 * (1.0 + std::abs(spec[j])));
    }
  }
}

TEST(CircularCorrelateTest, Examples) {
  const std::vector<double> y{3, -1, 4, 1, -5, 9};
  EXPECT_EQ(circular_correlate_fast(y, std::vector<double>{1}), y);
  const auto r = circular_correlate_fast(std::vector<double>(8, 1.0), std::vector<double>{1, 1});
  for (double v : r) EXPECT_EQ(v, 2.0);
}

TEST(CircularCorrelateTest, MatchesNaiveAtL96) {
  Gen gen(96);
  const auto y = gen.reals(96);
  const auto t = gen.reals(16);
  const auto expected = testing::naive_circular_correlation(y, t);
  const auto got = circular_correlate_fast(y, t);
  for (std::size_t i = 0; i < 96; ++i) {
    EXPECT_NEAR(got[i], expected[i], 1e-9 * max_abs_value(expected));
  }
}

TEST(CircularCorrelateTest, RandomizedAgainstNaive) {
  Gen gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t l = gen.size(1, 1024);
    const std::size_t k = gen.size(1, l);
    const bool integral = gen.coin();
    const auto y = integral ? gen.signs(l) : gen.reals(l, -10, 10);
    const auto t = integral ? gen.signs(k) : gen.reals(k, -10, 10);
    const auto expected = testing::naive_circular_correlation(y, t);
    const auto got = circular_correlate_fast(y, t);
    const double scale = std::max(max_abs_value(expected), 1e-300);
    for (std::size_t i = 0; i < l; ++i) {
      if (integral) {
        ASSERT_EQ(got[i], expected[i]);
      } else {
        ASSERT_LE(std::abs(got[i] - expected[i]), 1e-9 * scale) << "L=" << l << " K=" << k;
      }
    }
  }
}

TEST(CircularCorrelateTest, DownsampledOverload) {
  const Signal x = generate_binary_signal(200, 5);
  const auto y = downsample_extended(x, 20, 8);
  const Template t = extract_template(x, 3, 8);
  const auto got = circular_correlate_fast(y, t);
  EXPECT_EQ(got, testing::naive_circular_correlation(
                     y.values, std::vector<double>(t.samples().begin(), t.samples().end())));
}

TEST(CircularCorrelateTest, Errors) {
  EXPECT_THROW(circular_correlate_fast(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}),
               InvalidArgument);
  CircularCorrelator c(8);
  EXPECT_THROW(c.correlate(std::vector<double>(7, 1.0), std::vector<double>{1}), InvalidArgument);
  EXPECT_THROW(c.correlate(std::vector<double>(8, 1.0), std::vector<double>{}), InvalidArgument);
}

TEST(CircularCorrelateTest, ZeroInputsDoNotTripResidueCheck) {
  const auto r = circular_correlate_fast(std::vector<double>(16, 0.0), std::vector<double>{0.5});
  for (double v : r) EXPECT_EQ(v, 0.0);
}

TEST(CircularCorrelateTest, ReusedWorkspaceAcrossThreads) {
  // One correlator per thread; plans are created concurrently.
  std::vector<std::jthread> threads;
  std::vector<int> ok(4, 0);
  for (int w = 0; w < 4; ++w) {
    threads.emplace_back([w, &ok] {
      Gen gen(900 + w);
      CircularCorrelator c(129);
      bool good = true;
      for (int i = 0; i < 20; ++i) {
        const auto y = gen.signs(129);
        const auto t = gen.signs(17);
        good = good && c.correlate(y, t) == testing::naive_circular_correlation(y, t);
      }
      ok[w] = good ? 1 : 0;
    });
  }
  threads.clear();
  for (int v : ok) EXPECT_EQ(v, 1);
}

TEST(CircularCorrelateTest, OpCountsScaleLikeLLogL) {
  const double small = static_cast<double>(CircularCorrelator(1024).ops_per_call().multiplications);
  const double large = static_cast<double>(CircularCorrelator(8192).ops_per_call().multiplications);
  EXPECT_GT(small, 0.0);
  // 8x the length at log factor 13/10: ratio near 10.4, clearly below quadratic.
  EXPECT_GT(large / small, 7.0);
  EXPECT_LT(large / small, 16.0);
}

TEST(FullFftTest, PlantedTemplate) {
  const Signal x = generate_binary_signal(256, 11);
  EXPECT_EQ(full_fft_match(x, extract_template(x, 17, 32)), 17u);
}

TEST(FullFftTest, AllTiesGoToZero) {
  EXPECT_EQ(full_fft_match(Signal(std::vector<double>(32, 1.0)), Template{1, 1, 1}), 0u);
}

TEST(FullFftTest, AgreesWithBruteForce) {
  Gen gen(4096);
  FullFftMatcher matcher(4096);
  for (int trial = 0; trial < 100; ++trial) {
    const Signal x = generate_binary_signal(4096, 5000 + trial);
    const Template t = extract_template(x, gen.size(0, 4095), 256);
    const std::vector<double> xv(x.samples().begin(), x.samples().end());
    const std::vector<double> tv(t.samples().begin(), t.samples().end());
    EXPECT_EQ(matcher.match(x, t), testing::brute_force_match(xv, tv));
  }
}

TEST(FullFftTest, ScoresMatchOracleOnRealInputs) {
  Gen gen(8);
  const std::size_t n = 777;
  const auto xv = gen.reals(n);
  const auto tv = gen.reals(40);
  FullFftMatcher matcher(n);
  const ScoreVector s = matcher.scores(Signal(xv), Template(tv));
  const auto expected = testing::naive_circular_correlation(xv, tv);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s[i], expected[i], 1e-9);
}

TEST(FullFftTest, Errors) {
  EXPECT_THROW(full_fft_match(Signal{1, 2}, Template{1, 2, 3}), InvalidArgument);
  FullFftMatcher m(8);
  EXPECT_THROW(m.scores(Signal{1, 2}, Template{1}), InvalidArgument);
}

}  // namespace
}  // namespace fastmatch
