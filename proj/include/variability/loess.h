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

#ifndef VARIABILITY_LOESS_H_
#define VARIABILITY_LOESS_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace variability {

// Locally weighted regression over the `span` nearest neighbours of each
// evaluation point, with tricube weights (1 - (d/h)^3)^3 where h is the
// distance to the farthest neighbour in the window (widened by
// (span - n) / 2 when span exceeds the sample). Points at d >= 0.999h get no
// weight. A degree-1 fit falls back to the weighted mean when the weighted
// spread of x in the window is negligible, as in the reference STL code.
namespace loess {

// Fitted value at x0 from the sorted sample (x, y). `robustness` is empty or
// one weight per sample. Returns nullopt when every weight in the window is
// zero.
std::optional<double> FitAt(std::span<const double> x, std::span<const double> y,
                            std::span<const double> robustness, int span,
                            int degree, double x0);

// Fits at every evaluation point. The OpenMP version splits the points
// across threads; both produce bit-identical output.
std::vector<std::optional<double>> FitMany(std::span<const double> x,
                                           std::span<const double> y,
                                           std::span<const double> robustness,
                                           int span, int degree,
                                           std::span<const double> at);
std::vector<std::optional<double>> FitManySerial(
    std::span<const double> x, std::span<const double> y,
    std::span<const double> robustness, int span, int degree,
    std::span<const double> at);

}  // namespace loess

// Smooths y over the sample points themselves. x must be non-decreasing,
// span odd with span <= n, degree 0 or 1. A window whose weights all vanish
// is a FailedPrecondition ("rank") error.
absl::StatusOr<std::vector<double>> LoessSmooth(
    std::span<const double> x, std::span<const double> y, int span, int degree,
    std::span<const double> robustness = {});
absl::StatusOr<std::vector<double>> LoessSmoothSerial(
    std::span<const double> x, std::span<const double> y, int span, int degree,
    std::span<const double> robustness = {});

}  // namespace variability

#endif  // VARIABILITY_LOESS_H_
