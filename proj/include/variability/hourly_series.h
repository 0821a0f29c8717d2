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

#ifndef VARIABILITY_HOURLY_SERIES_H_
#define VARIABILITY_HOURLY_SERIES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/time/time.h"

namespace variability {

struct Classified;

// Regularly spaced series. filled[i] marks values produced by interpolation.
struct TimeSeries {
  absl::Time start;
  double step_s = 3600;
  std::vector<double> values;
  std::vector<bool> filled;

  std::size_t size() const { return values.size(); }
  absl::Time TimeAt(std::size_t i) const {
    return start + absl::Seconds(step_s) * static_cast<int64_t>(i);
  }
  double FillFraction() const;
};

struct HourlySeriesOptions {
  int max_gap_h = 6;
  int min_hours = 48;
};

// Mean billed duration of non-degenerate ExpectedWarm records per UTC hour.
// Runs of up to max_gap_h empty hours are linearly interpolated and flagged;
// longer runs are an error naming the window.
absl::StatusOr<TimeSeries> HourlySeries(std::span<const Classified> records,
                                        const HourlySeriesOptions& options = {});

struct TrendSummary {
  double min = 0;
  double max = 0;
  double rel_change = 0;  // (max - min) / min
};

absl::StatusOr<TrendSummary> SummarizeTrend(std::span<const double> trend);

}  // namespace variability

#endif  // VARIABILITY_HOURLY_SERIES_H_
