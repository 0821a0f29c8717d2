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

#include "variability/hourly_series.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "absl/strings/str_cat.h"
#include "variability/stats.h"
#include "variability/time_util.h"

namespace variability {

double TimeSeries::FillFraction() const {
  if (filled.empty()) return 0;
  return static_cast<double>(std::count(filled.begin(), filled.end(), true)) /
         filled.size();
}

namespace {

int64_t HourIndex(absl::Time t) {
  const int64_t s = absl::ToUnixSeconds(t);
  return s >= 0 ? s / 3600 : -((-s + 3599) / 3600);
}

}  // namespace

absl::StatusOr<TimeSeries> HourlySeries(std::span<const Classified> records,
                                        const HourlySeriesOptions& options) {
  std::map<int64_t, std::pair<double, int64_t>> hours;  // sum, count
  for (const Classified& c : records) {
    if (c.degenerate || c.start_class != StartClass::kExpectedWarm) continue;
    auto& [sum, n] = hours[HourIndex(c.record->timestamp_utc)];
    sum += c.record->billed_duration_ms;
    ++n;
  }
  if (hours.empty()) {
    return absl::FailedPreconditionError("no warm calls to build a series from");
  }
  const int64_t first = hours.begin()->first;
  const int64_t last = hours.rbegin()->first;
  const int64_t length = last - first + 1;
  if (length < options.min_hours) {
    return absl::FailedPreconditionError(absl::StrCat(
        "insufficient data: warm calls span ", length, " hours, need ",
        options.min_hours));
  }

  TimeSeries ts;
  ts.start = absl::FromUnixSeconds(first * 3600);
  ts.step_s = 3600;
  ts.values.assign(length, 0.0);
  ts.filled.assign(length, false);
  int64_t prev = -1;
  for (const auto& [hour, acc] : hours) {
    const int64_t i = hour - first;
    ts.values[i] = acc.first / acc.second;
    if (prev >= 0 && i - prev > 1) {
      const int64_t gap = i - prev - 1;
      if (gap > options.max_gap_h) {
        return absl::FailedPreconditionError(absl::StrCat(
            "unfillable gap of ", gap, " hours from ",
            FormatTimestamp(ts.TimeAt(prev + 1)), " to ",
            FormatTimestamp(ts.TimeAt(i))));
      }
      for (int64_t k = prev + 1; k < i; ++k) {
        const double f = static_cast<double>(k - prev) / (i - prev);
        ts.values[k] = ts.values[prev] * (1 - f) + ts.values[i] * f;
        ts.filled[k] = true;
      }
    }
    prev = i;
  }
  return ts;
}

absl::StatusOr<TrendSummary> SummarizeTrend(std::span<const double> trend) {
  if (trend.empty()) {
    return absl::InvalidArgumentError("trend summary of an empty series");
  }
  const auto [lo, hi] = std::minmax_element(trend.begin(), trend.end());
  if (!(*lo > 0)) {
    return absl::OutOfRangeError(
        absl::StrCat("trend minimum must be positive, got ", *lo));
  }
  return TrendSummary{*lo, *hi, (*hi - *lo) / *lo};
}

}  // namespace variability
