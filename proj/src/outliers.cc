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

#include "variability/outliers.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace variability {

double Quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) return 0;
  const double pos = p * (sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - lo;
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

absl::StatusOr<OutlierReport> DetectOutliers(std::span<const double> values,
                                             const OutlierOptions& options,
                                             std::span<const double> population) {
  if (population.empty()) population = values;
  if (population.size() < 8) {
    return absl::FailedPreconditionError(absl::StrCat(
        "outlier detection needs at least 8 samples, got ", population.size()));
  }
  if (!(options.k > 0)) {
    return absl::InvalidArgumentError("k must be positive");
  }
  std::vector<double> sorted(population.begin(), population.end());
  std::sort(sorted.begin(), sorted.end());
  OutlierReport rep;
  double sum = 0;
  for (double v : population) sum += v;
  rep.mean = sum / population.size();
  rep.q1 = Quantile(sorted, 0.25);
  rep.q3 = Quantile(sorted, 0.75);
  rep.iqr = rep.q3 - rep.q1;
  rep.threshold = options.k * rep.iqr;
  rep.degenerate = rep.iqr == 0 && sorted.front() != sorted.back();
  if (sorted.front() == sorted.back()) {
    // Constant population; rounding in the mean must not flag anything.
    rep.mean = sorted.front();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] != rep.mean) rep.indices.push_back(static_cast<int>(i));
    }
    return rep;
  }
  if (rep.degenerate && !options.flag_any_deviation_when_degenerate) {
    return rep;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - rep.mean) > rep.threshold) {
      rep.indices.push_back(static_cast<int>(i));
    }
  }
  return rep;
}

}  // namespace variability
