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

#ifndef VARIABILITY_OUTLIERS_H_
#define VARIABILITY_OUTLIERS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace variability {

// Linear-interpolation quantile of sorted data (R type 7).
double Quantile(std::span<const double> sorted, double p);

struct OutlierOptions {
  double k = 4.0;
  // When IQR is 0 but the data is not constant, flag every nonzero deviation
  // instead of nothing.
  bool flag_any_deviation_when_degenerate = false;
};

struct OutlierReport {
  std::vector<int> indices;
  double mean = 0;
  double q1 = 0;
  double q3 = 0;
  double iqr = 0;
  double threshold = 0;  // k * IQR
  bool degenerate = false;  // IQR == 0 on a non-constant population
};

// Flags index t iff |values[t] - mean| > k * IQR, where mean and quartiles
// come from `population` (the values themselves when empty). Needs >= 8
// population samples.
absl::StatusOr<OutlierReport> DetectOutliers(
    std::span<const double> values, const OutlierOptions& options = {},
    std::span<const double> population = {});

}  // namespace variability

#endif  // VARIABILITY_OUTLIERS_H_
