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

#include "variability/loess.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace variability {
namespace loess {

std::optional<double> FitAt(std::span<const double> x, std::span<const double> y,
                            std::span<const double> robustness, int span,
                            int degree, double x0) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return std::nullopt;
  const int q = std::min(span, n);

  // Grow the window one neighbour at a time from the insertion point.
  int right = static_cast<int>(std::lower_bound(x.begin(), x.end(), x0) - x.begin());
  int left = right;  // window is [left, right)
  while (right - left < q) {
    if (left == 0) {
      ++right;
    } else if (right == n) {
      --left;
    } else if (x0 - x[left - 1] <= x[right] - x0) {
      --left;
    } else {
      ++right;
    }
  }
  double h = std::max(x0 - x[left], x[right - 1] - x0);
  if (span > n) h += static_cast<double>((span - n) / 2);

  const double h9 = 0.999 * h;
  const double h1 = 0.001 * h;
  std::vector<double> weights(q);
  double total = 0;
  for (int j = left; j < right; ++j) {
    const double r = std::abs(x[j] - x0);
    double wj = 0;
    if (r <= h9) {
      if (r <= h1) {
        wj = 1;
      } else {
        const double u = r / h;
        const double t = 1 - u * u * u;
        wj = t * t * t;
      }
      if (!robustness.empty()) wj *= robustness[j];
    }
    weights[j - left] = wj;
    total += wj;
  }
  if (total <= 0) return std::nullopt;
  for (int j = 0; j < q; ++j) weights[j] /= total;

  if (degree > 0 && h > 0) {
    double a = 0;
    for (int j = left; j < right; ++j) a += weights[j - left] * x[j];
    double b = x0 - a;
    double c = 0;
    for (int j = left; j < right; ++j) {
      c += weights[j - left] * (x[j] - a) * (x[j] - a);
    }
    const double range = x[n - 1] - x[0];
    if (std::sqrt(c) > 0.001 * range) {
      b /= c;
      for (int j = left; j < right; ++j) {
        weights[j - left] *= b * (x[j] - a) + 1;
      }
    }
  }
  double fit = 0;
  for (int j = left; j < right; ++j) fit += weights[j - left] * y[j];
  return fit;
}

std::vector<std::optional<double>> FitMany(std::span<const double> x,
                                           std::span<const double> y,
                                           std::span<const double> robustness,
                                           int span, int degree,
                                           std::span<const double> at) {
  std::vector<std::optional<double>> out(at.size());
  const long m = static_cast<long>(at.size());
#pragma omp parallel for schedule(static) if (m > 256)
  for (long i = 0; i < m; ++i) {
    out[i] = FitAt(x, y, robustness, span, degree, at[i]);
  }
  return out;
}

std::vector<std::optional<double>> FitManySerial(
    std::span<const double> x, std::span<const double> y,
    std::span<const double> robustness, int span, int degree,
    std::span<const double> at) {
  std::vector<std::optional<double>> out(at.size());
  for (std::size_t i = 0; i < at.size(); ++i) {
    out[i] = FitAt(x, y, robustness, span, degree, at[i]);
  }
  return out;
}

}  // namespace loess

namespace {

absl::Status CheckArgs(std::span<const double> x, std::span<const double> y,
                       int span, int degree,
                       std::span<const double> robustness) {
  if (x.size() != y.size() || x.empty()) {
    return absl::InvalidArgumentError("x and y must be non-empty and equal length");
  }
  if (!robustness.empty() && robustness.size() != x.size()) {
    return absl::InvalidArgumentError("one robustness weight per point");
  }
  if (span <= 0 || span % 2 == 0 || span > static_cast<int>(x.size())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "span must be odd and in [1, ", x.size(), "], got ", span));
  }
  if (degree != 0 && degree != 1) {
    return absl::InvalidArgumentError("degree must be 0 or 1");
  }
  if (!std::is_sorted(x.begin(), x.end())) {
    return absl::InvalidArgumentError("x must be non-decreasing");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> Unwrap(
    const std::vector<std::optional<double>>& fits) {
  std::vector<double> out(fits.size());
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (!fits[i]) {
      return absl::FailedPreconditionError(absl::StrCat(
          "rank deficient: no positive weight in the window of point ", i));
    }
    out[i] = *fits[i];
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<double>> LoessSmooth(
    std::span<const double> x, std::span<const double> y, int span, int degree,
    std::span<const double> robustness) {
  if (auto s = CheckArgs(x, y, span, degree, robustness); !s.ok()) return s;
  return Unwrap(loess::FitMany(x, y, robustness, span, degree, x));
}

absl::StatusOr<std::vector<double>> LoessSmoothSerial(
    std::span<const double> x, std::span<const double> y, int span, int degree,
    std::span<const double> robustness) {
  if (auto s = CheckArgs(x, y, span, degree, robustness); !s.ok()) return s;
  return Unwrap(loess::FitManySerial(x, y, robustness, span, degree, x));
}

}  // namespace variability
