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

#ifndef VARIABILITY_CHANGE_POINT_H_
#define VARIABILITY_CHANGE_POINT_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace variability {

// 10 * var(diff(x)) * ln(n).
double DefaultChangePointPenalty(std::span<const double> x);

// 2 * var(residual) * ln(n): the Schwarz criterion for an L2 cost, with the
// noise level read from a residual series such as the STL remainder. A
// smoothed trend has almost no point-to-point variation, so the difference
// based default above splits every ramp of it.
double ResidualChangePointPenalty(std::span<const double> residual);

struct ChangePointOptions {
  // Cost added per breakpoint; DefaultChangePointPenalty when absent.
  std::optional<double> penalty;
  // Shortest admissible segment, in samples.
  int min_segment = 1;
};

// PELT with an L2 (segment sum of squares) cost. Returns the sorted indices
// at which a new segment starts; never 0 or n.
absl::StatusOr<std::vector<int>> DetectChangePoints(
    std::span<const double> x, const ChangePointOptions& options = {});

// Sum of squared deviations from the mean of x[begin, end), from prefix sums.
class SegmentCost {
 public:
  explicit SegmentCost(std::span<const double> x);
  double operator()(int begin, int end) const;

 private:
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
};

}  // namespace variability

#endif  // VARIABILITY_CHANGE_POINT_H_
