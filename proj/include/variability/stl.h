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

#ifndef VARIABILITY_STL_H_
#define VARIABILITY_STL_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "variability/hourly_series.h"

namespace variability {

// Spans of 0 select the defaults: lowpass = smallest odd >= period,
// trend = smallest odd >= 1.5 * period / (1 - 1.5 / seasonal_span).
struct StlParams {
  int period = 24;
  int seasonal_span = 25;
  int trend_span = 0;
  int lowpass_span = 0;
  int seasonal_degree = 1;
  int trend_degree = 1;
  int lowpass_degree = 1;
  int inner_iterations = 2;
  int outer_iterations = 1;
  // Series with more interpolated points than this are rejected.
  double fill_fraction_max = 0.2;
};

struct Decomposition {
  std::vector<double> trend;
  std::vector<double> seasonal;
  std::vector<double> remainder;
  int period = 24;
};

int DefaultTrendSpan(const StlParams& params);
int DefaultLowpassSpan(const StlParams& params);

// y = trend + seasonal + remainder, with the seasonal component centred to
// zero mean (its mean moved into the trend). Needs at least two periods.
absl::StatusOr<Decomposition> StlDecompose(std::span<const double> y,
                                           const StlParams& params = {});
absl::StatusOr<Decomposition> StlDecompose(const TimeSeries& series,
                                           const StlParams& params = {});

// Reference implementation: same arithmetic, no OpenMP.
absl::StatusOr<Decomposition> StlDecomposeSerial(std::span<const double> y,
                                                 const StlParams& params = {});

}  // namespace variability

#endif  // VARIABILITY_STL_H_
