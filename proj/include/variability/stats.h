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

#ifndef VARIABILITY_STATS_H_
#define VARIABILITY_STATS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "variability/record.h"

namespace variability {

// An ok record with its start class. `degenerate` marks records whose pair
// cannot be trusted: a call in the loop failed, or call 2 came >= cooldown
// after call 1. Degenerate second calls are left out of every statistic.
struct Classified {
  const InvocationRecord* record = nullptr;
  StartClass start_class = StartClass::kExpectedCold;
  bool degenerate = false;
};

struct ClassifyOptions {
  double cooldown_s = 1200;
};

// Drops status=error records; the input must outlive the result.
std::vector<Classified> ClassifyAll(std::span<const InvocationRecord> records,
                                    const ClassifyOptions& options = {});

struct ClassCounts {
  std::map<StartClass, int64_t> by_class;
  int64_t first_calls = 0;              // ok, call_index 1
  int64_t second_calls = 0;             // ok, call_index 2, non-degenerate
  int64_t degenerate_second_calls = 0;
  int64_t error_records = 0;
};

ClassCounts CountClasses(std::span<const Classified> classified,
                         int64_t error_records = 0);

enum class Bucketing { kHourOfDay, kHourOfWeek };

int BucketKey(absl::Time t, Bucketing bucketing, absl::TimeZone tz);

// Mean (or rate) per bucket with a normal-approximation 95% interval.
// ci95_half_width is absent for n < 2; ci_low/ci_high are clamped to [0, 1]
// for rates.
struct BucketStat {
  int bucket_key = 0;
  int64_t n = 0;
  double mean = 0;
  std::optional<double> ci95_half_width;
  double ci_low = 0;
  double ci_high = 0;
};

// Sample mean with 1.96 * s / sqrt(n), s the (n-1) sample deviation.
BucketStat SummarizeValues(int key, std::span<const double> values);
// Proportion with 1.96 * sqrt(p(1-p)/n).
BucketStat SummarizeRate(int key, int64_t hits, int64_t n);

// Billed durations of non-degenerate ExpectedWarm records, grouped by local
// hour. Only non-empty buckets are returned, ordered by key.
std::vector<BucketStat> BucketDurationStats(std::span<const Classified> records,
                                            Bucketing bucketing,
                                            absl::TimeZone tz);

struct RelativeBucket {
  int bucket_key = 0;
  double rel = 0;
  std::optional<double> ci95_half_width;
};

// (mean - overall) / overall with overall the n-weighted mean of the buckets.
absl::StatusOr<std::vector<RelativeBucket>> RelativeChange(
    std::span<const BucketStat> stats);

struct EcdfPoint {
  double x = 0;
  double F = 0;
};

absl::StatusOr<std::vector<EcdfPoint>> Ecdf(std::span<const double> values);

// UnexpectedCold / (UnexpectedCold + ExpectedWarm) over non-degenerate second
// calls per bucket; empty buckets are omitted.
std::vector<BucketStat> UnexpectedColdRates(std::span<const Classified> records,
                                            Bucketing bucketing,
                                            absl::TimeZone tz);

// UnexpectedWarm / (UnexpectedWarm + ExpectedCold) over first calls.
absl::StatusOr<double> UnexpectedWarmRate(std::span<const Classified> records);

// Local-time windows for the period summaries. Hours are [start, end);
// night wraps around midnight.
struct PeriodWindows {
  int night_start_hour = 20;
  int night_end_hour = 8;
  int work_start_hour = 9;
  int work_end_hour = 17;
};

struct PeriodRates {
  BucketStat night;          // every day, night window
  BucketStat weekend;        // Saturday and Sunday, all hours
  BucketStat working_hours;  // Monday to Friday, working window
  BucketStat monday;         // Monday, working window
};

PeriodRates UnexpectedColdPeriodRates(std::span<const Classified> records,
                                      absl::TimeZone tz,
                                      const PeriodWindows& windows = {});

}  // namespace variability

#endif  // VARIABILITY_STATS_H_
