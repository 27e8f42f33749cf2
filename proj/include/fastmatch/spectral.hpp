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

// DFT-based circular cross-correlation.
//
// The circulant convention used throughout (row j of circ(v) is v shifted
// right j times) makes circ([t 0]) y a cross-correlation,
//   r_k = sum_i t_i y_{(k+i) mod L},
// whose spectrum is conj(T) .* Y rather than the plain product T .* Y.
//
// FFTW does the transforms. Its planner is not reentrant, so plan creation
// and destruction go through one process-wide mutex; execution uses the
// new-array API on buffers owned by each workspace object. A workspace
// (CircularCorrelator, FullFftMatcher) must not be shared between threads.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fastmatch/downsample.hpp"
#include "fastmatch/error.hpp"
#include "fastmatch/signal.hpp"

namespace fastmatch {

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwArray = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwArray<T> fftw_array(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
  if (!p) throw std::bad_alloc();
  return FftwArray<T>(p);
}

// Move-only owner of an fftw_plan.
class FftwPlan {
 public:
  FftwPlan() = default;
  explicit FftwPlan(fftw_plan plan) : plan_(plan) {
    if (!plan_) throw NumericalFailure("FFTW failed to create a plan");
  }
  FftwPlan(FftwPlan&& other) noexcept : plan_(std::exchange(other.plan_, nullptr)) {}
  FftwPlan& operator=(FftwPlan&& other) noexcept {
    if (this != &other) {
      reset();
      plan_ = std::exchange(other.plan_, nullptr);
    }
    return *this;
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  ~FftwPlan() { reset(); }

  fftw_plan get() const noexcept { return plan_; }

  OpCounts flops() const {
    double add = 0, mul = 0, fma = 0;
    fftw_flops(plan_, &add, &mul, &fma);
    return {static_cast<std::uint64_t>(add + fma), static_cast<std::uint64_t>(mul + fma)};
  }

 private:
  void reset() noexcept {
    if (plan_) {
      std::lock_guard<std::mutex> lock(fftw_planner_mutex());
      fftw_destroy_plan(plan_);
      plan_ = nullptr;
    }
  }
  fftw_plan plan_ = nullptr;
};

inline FftwPlan plan_c2c(std::size_t n, fftw_complex* in, fftw_complex* out, int sign) {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  return FftwPlan(fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE));
}

inline FftwPlan plan_r2c(std::size_t n, double* in, fftw_complex* out) {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  return FftwPlan(fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE));
}

inline FftwPlan plan_c2r(std::size_t n, fftw_complex* in, double* out) {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  return FftwPlan(fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE));
}

inline double max_abs(std::span<const double> v) noexcept {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double l1_norm(std::span<const double> v) noexcept {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace detail

/// Complex coefficients of a length-L transform.
class SpectrumBuffer {
 public:
  SpectrumBuffer() = default;
  explicit SpectrumBuffer(std::vector<std::complex<double>> coeffs)
      : coeffs_(std::move(coeffs)) {}

  std::size_t size() const noexcept { return coeffs_.size(); }
  const std::complex<double>& operator[](std::size_t j) const noexcept { return coeffs_[j]; }
  std::span<const std::complex<double>> coeffs() const noexcept { return coeffs_; }

 private:
  std::vector<std::complex<double>> coeffs_;
};

/// Exact-size length-L DFT, X_j = sum_n v_n e^{-2 pi i jn / L}.
inline SpectrumBuffer dft_forward(std::span<const double> v) {
  const std::size_t n = v.size();
  detail::require(n >= 1, "dft_forward: empty input");
  auto in = detail::fftw_array<fftw_complex>(n);
  auto out = detail::fftw_array<fftw_complex>(n);
  const auto plan = detail::plan_c2c(n, in.get(), out.get(), FFTW_FORWARD);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = v[i];
    in[i][1] = 0.0;
  }
  fftw_execute_dft(plan.get(), in.get(), out.get());
  std::vector<std::complex<double>> coeffs(n);
  for (std::size_t i = 0; i < n; ++i) coeffs[i] = {out[i][0], out[i][1]};
  return SpectrumBuffer(std::move(coeffs));
}

/// Normalized inverse, so dft_inverse(dft_forward(v)) == v.
inline std::vector<std::complex<double>> dft_inverse(const SpectrumBuffer& spectrum) {
  const std::size_t n = spectrum.size();
  detail::require(n >= 1, "dft_inverse: empty spectrum");
  auto in = detail::fftw_array<fftw_complex>(n);
  auto out = detail::fftw_array<fftw_complex>(n);
  const auto plan = detail::plan_c2c(n, in.get(), out.get(), FFTW_BACKWARD);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = spectrum[i].real();
    in[i][1] = spectrum[i].imag();
  }
  fftw_execute_dft(plan.get(), in.get(), out.get());
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<std::complex<double>> result(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = {out[i][0] * scale, out[i][1] * scale};
  return result;
}

/// Reusable length-L workspace for r_k = sum_i t_i y_{(k+i) mod L}.
class CircularCorrelator {
 public:
  // Imaginary residue tolerated after the inverse transform, relative to |r|_inf.
  static constexpr double kImagTolerance = 1e-6;

  explicit CircularCorrelator(std::size_t length)
      : length_(length),
        time_(detail::fftw_array<fftw_complex>(length)),
        spec_y_(detail::fftw_array<fftw_complex>(length)),
        spec_t_(detail::fftw_array<fftw_complex>(length)) {
    detail::require(length >= 1, "CircularCorrelator: length must be positive");
    forward_ = detail::plan_c2c(length, time_.get(), spec_y_.get(), FFTW_FORWARD);
    backward_ = detail::plan_c2c(length, spec_y_.get(), time_.get(), FFTW_BACKWARD);
    // Three transforms, L complex products (4 mul + 2 add), L scalings.
    const OpCounts f = forward_.flops();
    const OpCounts b = backward_.flops();
    ops_per_call_.additions = 2 * f.additions + b.additions + 2 * length;
    ops_per_call_.multiplications = 2 * f.multiplications + b.multiplications + 5 * length;
  }

  std::size_t length() const noexcept { return length_; }
  const OpCounts& ops_per_call() const noexcept { return ops_per_call_; }

  /// y must have exactly length() values; t at most length() (zero-padded).
  /// When both inputs are integer-valued the result is rounded to integers.
  std::vector<double> correlate(std::span<const double> y, std::span<const double> t,
                                OpCounts* ops = nullptr) {
    detail::require(y.size() == length_, "circular_correlate_fast: signal length mismatch");
    detail::require(!t.empty() && t.size() <= length_,
                    "circular_correlate_fast: template longer than transform length");
    const std::size_t n = length_;

    for (std::size_t i = 0; i < n; ++i) {
      time_[i][0] = i < t.size() ? t[i] : 0.0;
      time_[i][1] = 0.0;
    }
    fftw_execute_dft(forward_.get(), time_.get(), spec_t_.get());
    for (std::size_t i = 0; i < n; ++i) {
      time_[i][0] = y[i];
      time_[i][1] = 0.0;
    }
    fftw_execute_dft(forward_.get(), time_.get(), spec_y_.get());

    for (std::size_t j = 0; j < n; ++j) {
      const double yr = spec_y_[j][0], yi = spec_y_[j][1];
      const double tr = spec_t_[j][0], ti = -spec_t_[j][1];  // conj(T)
      spec_y_[j][0] = tr * yr - ti * yi;
      spec_y_[j][1] = tr * yi + ti * yr;
    }
    fftw_execute_dft(backward_.get(), spec_y_.get(), time_.get());

    const double scale = 1.0 / static_cast<double>(n);
    std::vector<double> r(n);
    double imag_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = time_[i][0] * scale;
      imag_max = std::max(imag_max, std::abs(time_[i][1] * scale));
    }
    // An all-zero correlation still carries rounding noise; measure the
    // residue against the input magnitude as well.
    const double reference =
        std::max(detail::max_abs(r), 1e-9 * detail::max_abs(y) * detail::l1_norm(t));
    if (imag_max > kImagTolerance * reference) {
      throw NumericalFailure("circular_correlate_fast: imaginary residue " +
                             std::to_string(imag_max) + " exceeds tolerance");
    }
    if (is_integral(y) && is_integral(t)) {
      for (double& v : r) v = std::nearbyint(v);
    }
    if (ops) *ops += ops_per_call_;
    return r;
  }

 private:
  std::size_t length_;
  detail::FftwArray<fftw_complex> time_;
  detail::FftwArray<fftw_complex> spec_y_;
  detail::FftwArray<fftw_complex> spec_t_;
  detail::FftwPlan forward_;
  detail::FftwPlan backward_;
  OpCounts ops_per_call_;
};

inline std::vector<double> circular_correlate_fast(std::span<const double> y,
                                                   std::span<const double> t) {
  detail::require(!y.empty(), "circular_correlate_fast: empty signal");
  detail::require(t.size() <= y.size(),
                  "circular_correlate_fast: template longer than transform length");
  CircularCorrelator correlator(y.size());
  return correlator.correlate(y, t);
}

inline std::vector<double> circular_correlate_fast(const DownsampledSignal& y,
                                                   const Template& t) {
  return circular_correlate_fast(y.values, t.samples());
}

/// Full-length FFT correlation baseline: the cost is set by N alone.
class FullFftMatcher {
 public:
  explicit FullFftMatcher(std::size_t n)
      : n_(n),
        real_(detail::fftw_array<double>(n)),
        spec_x_(detail::fftw_array<fftw_complex>(n / 2 + 1)),
        spec_t_(detail::fftw_array<fftw_complex>(n / 2 + 1)) {
    detail::require(n >= 1, "FullFftMatcher: n must be positive");
    forward_ = detail::plan_r2c(n, real_.get(), spec_x_.get());
    backward_ = detail::plan_c2r(n, spec_x_.get(), real_.get());
    const OpCounts f = forward_.flops();
    const OpCounts b = backward_.flops();
    const std::size_t bins = n / 2 + 1;
    ops_per_call_.additions = 2 * f.additions + b.additions + 2 * bins;
    ops_per_call_.multiplications = 2 * f.multiplications + b.multiplications + 4 * bins + n;
  }

  std::size_t size() const noexcept { return n_; }
  const OpCounts& ops_per_call() const noexcept { return ops_per_call_; }

  /// All N scores (Tx)_k; rounded to integers when x and t are integer-valued.
  ScoreVector scores(const Signal& x, const Template& t) {
    detail::require(x.size() == n_, "FullFftMatcher: signal length mismatch");
    detail::require(t.size() <= n_, "full_fft_match: template longer than signal");
    const std::size_t bins = n_ / 2 + 1;

    std::fill(real_.get(), real_.get() + n_, 0.0);
    std::copy(t.samples().begin(), t.samples().end(), real_.get());
    fftw_execute_dft_r2c(forward_.get(), real_.get(), spec_t_.get());
    std::copy(x.samples().begin(), x.samples().end(), real_.get());
    fftw_execute_dft_r2c(forward_.get(), real_.get(), spec_x_.get());

    for (std::size_t j = 0; j < bins; ++j) {
      const double xr = spec_x_[j][0], xi = spec_x_[j][1];
      const double tr = spec_t_[j][0], ti = -spec_t_[j][1];
      spec_x_[j][0] = tr * xr - ti * xi;
      spec_x_[j][1] = tr * xi + ti * xr;
    }
    fftw_execute_dft_c2r(backward_.get(), spec_x_.get(), real_.get());

    const double scale = 1.0 / static_cast<double>(n_);
    std::vector<double> out(real_.get(), real_.get() + n_);
    const bool snap = is_integral(x.samples()) && is_integral(t.samples());
    for (double& v : out) v = snap ? std::nearbyint(v * scale) : v * scale;
    return ScoreVector{std::move(out)};
  }

  std::size_t match(const Signal& x, const Template& t) {
    const ScoreVector s = scores(x, t);
    return argmax_index(s.scores);
  }

 private:
  std::size_t n_;
  detail::FftwArray<double> real_;
  detail::FftwArray<fftw_complex> spec_x_;
  detail::FftwArray<fftw_complex> spec_t_;
  detail::FftwPlan forward_;
  detail::FftwPlan backward_;
  OpCounts ops_per_call_;
};

/// argmax of the full correlation computed via one length-N transform pair.
inline std::size_t full_fft_match(const Signal& x, const Template& t) {
  detail::require(t.size() <= x.size(), "full_fft_match: template longer than signal");
  FullFftMatcher matcher(x.size());
  return matcher.match(x, t);
}

}  // namespace fastmatch
