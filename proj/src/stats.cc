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

#include "variability/stats.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "absl/strings/str_cat.h"
#include "variability/time_util.h"

namespace variability {

namespace {

constexpr double kZ95 = 1.96;

bool IsSecondCallSample(const Classified& c) {
  return !c.degenerate && (c.start_class == StartClass::kExpectedWarm ||
                           c.start_class == StartClass::kUnexpectedCold);
}

}  // namespace

std::vector<Classified> ClassifyAll(std::span<const InvocationRecord> records,
                                    const ClassifyOptions& options) {
  struct LoopInfo {
    const InvocationRecord* first = nullptr;
    bool any_error = false;
  };
  std::unordered_map<std::string, LoopInfo> loops;
  loops.reserve(records.size());
  for (const InvocationRecord& r : records) {
    LoopInfo& info = loops[r.loop_id];
    if (!r.ok()) info.any_error = true;
    if (r.call_index == 1) info.first = &r;
  }
  const absl::Duration cooldown = absl::Seconds(options.cooldown_s);
  std::vector<Classified> out;
  out.reserve(records.size());
  for (const InvocationRecord& r : records) {
    auto cls = Classify(r);
    if (!cls.ok()) continue;
    const LoopInfo& info = loops[r.loop_id];
    bool degenerate = info.any_error;
    if (r.call_index == 2 && info.first != nullptr &&
        r.timestamp_utc - info.first->timestamp_utc >= cooldown) {
      degenerate = true;
    }
    out.push_back({&r, *cls, degenerate});
  }
  return out;
}

ClassCounts CountClasses(std::span<const Classified> classified,
                         int64_t error_records) {
  ClassCounts counts;
  for (StartClass c : kAllStartClasses) counts.by_class[c] = 0;
  counts.error_records = error_records;
  for (const Classified& c : classified) {
    if (c.record->call_index == 1) {
      ++counts.first_calls;
      ++counts.by_class[c.start_class];
    } else if (c.degenerate) {
      ++counts.degenerate_second_calls;
    } else {
      ++counts.second_calls;
      ++counts.by_class[c.start_class];
    }
  }
  return counts;
}

int BucketKey(absl::Time t, Bucketing bucketing, absl::TimeZone tz) {
  return bucketing == Bucketing::kHourOfDay ? HourOfDay(t, tz)
                                            : HourOfWeek(t, tz);
}

BucketStat SummarizeValues(int key, std::span<const double> values) {
  BucketStat s;
  s.bucket_key = key;
  s.n = static_cast<int64_t>(values.size());
  if (values.empty()) return s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  s.ci_low = s.ci_high = s.mean;
  if (s.n >= 2) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / (s.n - 1));
    s.ci95_half_width = kZ95 * sd / std::sqrt(static_cast<double>(s.n));
    s.ci_low = s.mean - *s.ci95_half_width;
    s.ci_high = s.mean + *s.ci95_half_width;
  }
  return s;
}

BucketStat SummarizeRate(int key, int64_t hits, int64_t n) {
  BucketStat s;
  s.bucket_key = key;
  s.n = n;
  if (n <= 0) return s;
  s.mean = static_cast<double>(hits) / n;
  s.ci_low = s.ci_high = s.mean;
  if (n >= 2) {
    s.ci95_half_width = kZ95 * std::sqrt(s.mean * (1 - s.mean) / n);
    s.ci_low = std::max(0.0, s.mean - *s.ci95_half_width);
    s.ci_high = std::min(1.0, s.mean + *s.ci95_half_width);
  }
  return s;
}

std::vector<BucketStat> BucketDurationStats(std::span<const Classified> records,
                                            Bucketing bucketing,
                                            absl::TimeZone tz) {
  std::map<int, std::vector<double>> groups;
  for (const Classified& c : records) {
    if (c.degenerate || c.start_class != StartClass::kExpectedWarm) continue;
    groups[BucketKey(c.record->timestamp_utc, bucketing, tz)].push_back(
        c.record->billed_duration_ms);
  }
  std::vector<BucketStat> out;
  out.reserve(groups.size());
  for (const auto& [key, values] : groups) {
    out.push_back(SummarizeValues(key, values));
  }
  return out;
}

absl::StatusOr<std::vector<RelativeBucket>> RelativeChange(
    std::span<const BucketStat> stats) {
  if (stats.empty()) {
    return absl::InvalidArgumentError("relative change needs at least one bucket");
  }
  double weighted = 0;
  double total = 0;
  for (const BucketStat& s : stats) {
    weighted += s.n * s.mean;
    total += s.n;
  }
  if (total <= 0) {
    return absl::InvalidArgumentError("buckets hold no samples");
  }
  const double overall = weighted / total;
  if (overall == 0) {
    return absl::InvalidArgumentError(
        "overall mean is zero; relative change is undefined");
  }
  std::vector<RelativeBucket> out;
  out.reserve(stats.size());
  for (const BucketStat& s : stats) {
    RelativeBucket rb{s.bucket_key, (s.mean - overall) / overall, std::nullopt};
    if (s.ci95_half_width) rb.ci95_half_width = *s.ci95_half_width / overall;
    out.push_back(rb);
  }
  return out;
}

absl::StatusOr<std::vector<EcdfPoint>> Ecdf(std::span<const double> values) {
  if (values.empty()) {
    return absl::InvalidArgumentError("ECDF of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<EcdfPoint> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.push_back({sorted[i], (i + 1) / n});
  }
  return out;
}

std::vector<BucketStat> UnexpectedColdRates(std::span<const Classified> records,
                                            Bucketing bucketing,
                                            absl::TimeZone tz) {
  std::map<int, std::pair<int64_t, int64_t>> groups;  // key -> (cold, total)
  for (const Classified& c : records) {
    if (!IsSecondCallSample(c)) continue;
    auto& [cold, total] = groups[BucketKey(c.record->timestamp_utc, bucketing, tz)];
    cold += c.start_class == StartClass::kUnexpectedCold;
    ++total;
  }
  std::vector<BucketStat> out;
  out.reserve(groups.size());
  for (const auto& [key, counts] : groups) {
    out.push_back(SummarizeRate(key, counts.first, counts.second));
  }
  return out;
}

absl::StatusOr<double> UnexpectedWarmRate(std::span<const Classified> records) {
  int64_t warm = 0;
  int64_t total = 0;
  for (const Classified& c : records) {
    if (c.record->call_index != 1) continue;
    warm += c.start_class == StartClass::kUnexpectedWarm;
    ++total;
  }
  if (total == 0) {
    return absl::InvalidArgumentError("no first calls to rate");
  }
  return static_cast<double>(warm) / total;
}

PeriodRates UnexpectedColdPeriodRates(std::span<const Classified> records,
                                      absl::TimeZone tz,
                                      const PeriodWindows& w) {
  struct Tally {
    int64_t cold = 0;
    int64_t total = 0;
    void Add(bool is_cold) {
      cold += is_cold;
      ++total;
    }
  };
  Tally night, weekend, working, monday;
  auto in_night = [&w](int hour) {
    return w.night_start_hour > w.night_end_hour
               ? hour >= w.night_start_hour || hour < w.night_end_hour
               : hour >= w.night_start_hour && hour < w.night_end_hour;
  };
  for (const Classified& c : records) {
    if (!IsSecondCallSample(c)) continue;
    const bool cold = c.start_class == StartClass::kUnexpectedCold;
    const int how = HourOfWeek(c.record->timestamp_utc, tz);
    const int day = how / kHoursPerDay;
    const int hour = how % kHoursPerDay;
    if (in_night(hour)) night.Add(cold);
    if (day >= 5) {
      weekend.Add(cold);
    } else if (hour >= w.work_start_hour && hour < w.work_end_hour) {
      working.Add(cold);
      if (day == 0) monday.Add(cold);
    }
  }
  return {SummarizeRate(0, night.cold, night.total),
          SummarizeRate(1, weekend.cold, weekend.total),
          SummarizeRate(2, working.cold, working.total),
          SummarizeRate(3, monday.cold, monday.total)};
}

}  // namespace variability
