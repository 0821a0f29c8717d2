// Copyright 2026 The Variability Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "variability/stl.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "variability/loess.h"

namespace variability {

int DefaultTrendSpan(const StlParams& p) {
  const double target = 1.5 * p.period / (1.0 - 1.5 / p.seasonal_span);
  int span = static_cast<int>(std::ceil(target));
  if (span % 2 == 0) ++span;
  return span;
}

int DefaultLowpassSpan(const StlParams& p) {
  return p.period % 2 == 0 ? p.period + 1 : p.period;
}

namespace {

std::vector<double> MovingAverage(std::span<const double> x, int len) {
  const int n = static_cast<int>(x.size());
  std::vector<double> out(n - len + 1);
  double sum = 0;
  for (int i = 0; i < len; ++i) sum += x[i];
  out[0] = sum / len;
  for (int i = len; i < n; ++i) {
    sum += x[i] - x[i - len];
    out[i - len + 1] = sum / len;
  }
  return out;
}

// Smooths `values` (at x = 1..m) and evaluates at 1..m plus one extrapolated
// point on each side.
template <bool kParallel>
std::vector<double> SmoothExtended(std::span<const double> values,
                                   std::span<const double> robustness,
                                   int span, int degree) {
  const int m = static_cast<int>(values.size());
  std::vector<double> x(m);
  std::iota(x.begin(), x.end(), 1.0);
  std::vector<double> at(m + 2);
  std::iota(at.begin(), at.end(), 0.0);
  auto fits = kParallel
                  ? loess::FitMany(x, values, robustness, span, degree, at)
                  : loess::FitManySerial(x, values, robustness, span, degree, at);
  std::vector<double> out(m + 2);
  for (int i = 0; i < m + 2; ++i) {
    // A window with no usable weight keeps the nearest observed value.
    out[i] = fits[i] ? *fits[i] : values[std::clamp(i - 1, 0, m - 1)];
  }
  return out;
}

template <bool kParallel>
std::vector<double> SmoothAll(std::span<const double> values,
                              std::span<const double> robustness, int span,
                              int degree) {
  const int n = static_cast<int>(values.size());
  std::vector<double> x(n);
  std::iota(x.begin(), x.end(), 1.0);
  auto fits = kParallel
                  ? loess::FitMany(x, values, robustness, span, degree, x)
                  : loess::FitManySerial(x, values, robustness, span, degree, x);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = fits[i] ? *fits[i] : values[i];
  return out;
}

// Cycle-subseries smoothing: returns C of length n + 2 * period, where
// C[period + t] is the smoothed value for sample t.
template <bool kParallel>
std::vector<double> CycleSubseries(std::span<const double> detrended,
                                   std::span<const double> robustness,
                                   const StlParams& p) {
  const int n = static_cast<int>(detrended.size());
  const int np = p.period;
  std::vector<double> c(n + 2 * np);
#pragma omp parallel for schedule(static) if (kParallel)
  for (int phase = 0; phase < np; ++phase) {
    const int m = (n - phase + np - 1) / np;
    std::vector<double> sub(m), rw;
    for (int i = 0; i < m; ++i) sub[i] = detrended[phase + i * np];
    if (!robustness.empty()) {
      rw.resize(m);
      for (int i = 0; i < m; ++i) rw[i] = robustness[phase + i * np];
    }
    const std::vector<double> smooth =
        SmoothExtended<false>(sub, rw, p.seasonal_span, p.seasonal_degree);
    for (int i = 0; i < m + 2; ++i) c[i * np + phase] = smooth[i];
  }
  return c;
}

std::vector<double> RobustnessWeights(std::span<const double> y,
                                      std::span<const double> fit) {
  const std::size_t n = y.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = std::abs(y[i] - fit[i]);
  std::vector<double> sorted = r;
  const std::size_t mid0 = (n - 1) / 2;
  const std::size_t mid1 = n / 2;
  std::nth_element(sorted.begin(), sorted.begin() + mid1, sorted.end());
  const double hi = sorted[mid1];
  std::nth_element(sorted.begin(), sorted.begin() + mid0, sorted.end());
  const double lo = sorted[mid0];
  const double cmad = 3.0 * (lo + hi);  // six times the median
  const double c9 = 0.999 * cmad;
  const double c1 = 0.001 * cmad;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i] <= c1) {
      w[i] = 1;
    } else if (r[i] <= c9) {
      const double u = r[i] / cmad;
      w[i] = (1 - u * u) * (1 - u * u);
    } else {
      w[i] = 0;
    }
  }
  return w;
}

absl::Status CheckParams(std::size_t n, const StlParams& p) {
  if (p.period < 2) return absl::InvalidArgumentError("period must be >= 2");
  if (n < static_cast<std::size_t>(2 * p.period)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "STL needs at least two periods (", 2 * p.period, " samples), got ", n));
  }
  auto odd_at_least_3 = [](int s) { return s >= 3 && s % 2 == 1; };
  if (!odd_at_least_3(p.seasonal_span) ||
      (p.trend_span != 0 && !odd_at_least_3(p.trend_span)) ||
      (p.lowpass_span != 0 && !odd_at_least_3(p.lowpass_span))) {
    return absl::InvalidArgumentError("STL spans must be odd and >= 3");
  }
  for (int d : {p.seasonal_degree, p.trend_degree, p.lowpass_degree}) {
    if (d != 0 && d != 1) {
      return absl::InvalidArgumentError("STL degrees must be 0 or 1");
    }
  }
  if (p.inner_iterations < 1 || p.outer_iterations < 0) {
    return absl::InvalidArgumentError(
        "need inner_iterations >= 1 and outer_iterations >= 0");
  }
  return absl::OkStatus();
}

template <bool kParallel>
absl::StatusOr<Decomposition> Decompose(std::span<const double> y,
                                        const StlParams& params) {
  if (auto s = CheckParams(y.size(), params); !s.ok()) return s;
  for (double v : y) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("series contains non-finite values");
    }
  }
  const int n = static_cast<int>(y.size());
  const int np = params.period;
  const int trend_span =
      params.trend_span ? params.trend_span : DefaultTrendSpan(params);
  const int lowpass_span =
      params.lowpass_span ? params.lowpass_span : DefaultLowpassSpan(params);

  std::vector<double> trend(n, 0.0), seasonal(n, 0.0);
  std::vector<double> robustness;  // empty until the first outer pass
  std::vector<double> work(n);

  for (int outer = 0; outer <= params.outer_iterations; ++outer) {
    for (int inner = 0; inner < params.inner_iterations; ++inner) {
      for (int i = 0; i < n; ++i) work[i] = y[i] - trend[i];
      const std::vector<double> c =
          CycleSubseries<kParallel>(work, robustness, params);
      // Low-pass: MA(np), MA(np), MA(3), then LOESS.
      std::vector<double> low = MovingAverage(c, np);
      low = MovingAverage(low, np);
      low = MovingAverage(low, 3);
      low = SmoothAll<kParallel>(low, {}, lowpass_span, params.lowpass_degree);
      for (int i = 0; i < n; ++i) seasonal[i] = c[np + i] - low[i];
      for (int i = 0; i < n; ++i) work[i] = y[i] - seasonal[i];
      trend = SmoothAll<kParallel>(work, robustness, trend_span,
                                   params.trend_degree);
    }
    if (outer < params.outer_iterations) {
      for (int i = 0; i < n; ++i) work[i] = trend[i] + seasonal[i];
      robustness = RobustnessWeights(y, work);
    }
  }

  const double mean_s =
      std::accumulate(seasonal.begin(), seasonal.end(), 0.0) / n;
  Decomposition d;
  d.period = np;
  d.trend.resize(n);
  d.seasonal.resize(n);
  d.remainder.resize(n);
  for (int i = 0; i < n; ++i) {
    d.seasonal[i] = seasonal[i] - mean_s;
    d.trend[i] = trend[i] + mean_s;
    d.remainder[i] = y[i] - d.trend[i] - d.seasonal[i];
  }
  return d;
}

}  // namespace

absl::StatusOr<Decomposition> StlDecompose(std::span<const double> y,
                                           const StlParams& params) {
  return Decompose<true>(y, params);
}

absl::StatusOr<Decomposition> StlDecomposeSerial(std::span<const double> y,
                                                 const StlParams& params) {
  return Decompose<false>(y, params);
}

absl::StatusOr<Decomposition> StlDecompose(const TimeSeries& series,
                                           const StlParams& params) {
  if (series.FillFraction() > params.fill_fraction_max) {
    return absl::FailedPreconditionError(absl::StrCat(
        "series is ", 100 * series.FillFraction(),
        "% interpolated, above the ", 100 * params.fill_fraction_max,
        "% limit"));
  }
  return StlDecompose(std::span<const double>(series.values), params);
}

}  // namespace variability
