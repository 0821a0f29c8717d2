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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace variability {
namespace {

using testing::At;
using testing::Rec;

const absl::TimeZone& Cet() {
  static const absl::TimeZone tz = *LoadZone("CET");
  return tz;
}

// A warm pair: call 1 cold at t, call 2 one second later.
void AddPair(std::vector<InvocationRecord>& out, absl::Time t,
             const std::string& loop, bool second_cold, double second_ms = 100) {
  out.push_back(Rec(t, loop, 1, true, 1000));
  out.push_back(Rec(t + absl::Seconds(1), loop, 2, second_cold, second_ms));
}

TEST(SummarizeValues, TwoRecordsInOneHour) {
  std::vector<InvocationRecord> records;
  AddPair(records, At("2022-12-12T03:10:00+01:00"), "a", false, 100);
  AddPair(records, At("2022-12-12T03:40:00+01:00"), "b", false, 120);
  auto classified = ClassifyAll(records);
  auto stats = BucketDurationStats(classified, Bucketing::kHourOfDay, Cet());
  ASSERT_EQ(stats.size(), 1u);
  EXPECT_EQ(stats[0].bucket_key, 3);
  EXPECT_EQ(stats[0].n, 2);
  EXPECT_DOUBLE_EQ(stats[0].mean, 110);
  // sd = sqrt(200); 1.96 * sqrt(200) / sqrt(2) = 19.6.
  EXPECT_NEAR(*stats[0].ci95_half_width, 19.6, 1e-12);
}

TEST(SummarizeValues, SingleValueHasNoInterval) {
  const std::vector<double> one = {42};
  BucketStat s = SummarizeValues(5, one);
  EXPECT_EQ(s.mean, 42);
  EXPECT_FALSE(s.ci95_half_width.has_value());
}

TEST(BucketDurationStats, NoWarmRecordsIsEmpty) {
  std::vector<InvocationRecord> records = {
      Rec(At("2022-12-12T03:10:00Z"), "a", 1, true)};
  auto classified = ClassifyAll(records);
  EXPECT_TRUE(
      BucketDurationStats(classified, Bucketing::kHourOfWeek, Cet()).empty());
}

TEST(BucketDurationStats, BucketsPartitionTheWarmRecords) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int64_t> when(0, 14 * 86400);
  std::vector<InvocationRecord> records;
  const absl::Time base = At("2022-12-12T00:00:00Z");
  for (int i = 0; i < 3000; ++i) {
    AddPair(records, base + absl::Seconds(when(rng)), "l" + std::to_string(i),
            i % 10 == 0, 100 + i % 7);
  }
  auto classified = ClassifyAll(records);
  int64_t warm = 0;
  for (const auto& c : classified) warm += c.start_class == StartClass::kExpectedWarm;
  for (Bucketing b : {Bucketing::kHourOfDay, Bucketing::kHourOfWeek}) {
    int64_t total = 0;
    for (const auto& s : BucketDurationStats(classified, b, Cet())) total += s.n;
    EXPECT_EQ(total, warm);
  }
}

TEST(RelativeChange, Examples) {
  std::vector<BucketStat> flat = {{0, 10, 50.0, {}, 0, 0}, {1, 30, 50.0, {}, 0, 0}};
  const auto flat_rel = *RelativeChange(flat);
  for (const auto& r : flat_rel) EXPECT_EQ(r.rel, 0);

  std::vector<BucketStat> day_night = {{0, 100, 106.0, 2.0, 0, 0},
                                       {1, 100, 122.0, {}, 0, 0}};
  auto rel = *RelativeChange(day_night);
  EXPECT_NEAR(rel[0].rel, -8.0 / 114.0, 1e-12);
  EXPECT_NEAR(rel[1].rel, 8.0 / 114.0, 1e-12);
  EXPECT_NEAR(*rel[0].ci95_half_width, 2.0 / 114.0, 1e-12);
  EXPECT_FALSE(rel[1].ci95_half_width.has_value());

  std::vector<BucketStat> zero = {{0, 3, 0.0, {}, 0, 0}};
  EXPECT_FALSE(RelativeChange(zero).ok());
  EXPECT_FALSE(RelativeChange({}).ok());
}

TEST(RelativeChange, WeightedMeanOfRelIsZero) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> n(1, 500);
  std::uniform_real_distribution<double> m(50, 200);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<BucketStat> stats;
    for (int k = 0; k < 24; ++k) stats.push_back({k, n(rng), m(rng), {}, 0, 0});
    auto rel = *RelativeChange(stats);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      num += stats[i].n * rel[i].rel;
      den += stats[i].n;
    }
    EXPECT_NEAR(num / den, 0, 1e-12);
  }
}

TEST(Ecdf, Examples) {
  const std::vector<double> one = {5};
  auto e = *Ecdf(one);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].x, 5);
  EXPECT_EQ(e[0].F, 1.0);

  const std::vector<double> ties = {1, 2, 2, 4};
  e = *Ecdf(ties);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0].x, 1);
  EXPECT_EQ(e[0].F, 0.25);
  EXPECT_EQ(e[1].x, 2);
  EXPECT_EQ(e[1].F, 0.75);
  EXPECT_EQ(e[2].x, 4);
  EXPECT_EQ(e[2].F, 1.0);
  EXPECT_FALSE(Ecdf({}).ok());
}

TEST(Ecdf, MatchesCountingOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(0, 40);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(1 + trial * 7);
    for (double& x : values) x = v(rng) * 0.5;
    auto e = *Ecdf(values);
    double prev_x = -1, prev_f = 0;
    for (const EcdfPoint& p : e) {
      int64_t le = 0;
      for (double x : values) le += x <= p.x;
      EXPECT_DOUBLE_EQ(p.F, static_cast<double>(le) / values.size());
      EXPECT_GT(p.x, prev_x);
      EXPECT_GE(p.F, prev_f);
      prev_x = p.x;
      prev_f = p.F;
    }
    EXPECT_GT(e.front().F, 0);
    EXPECT_EQ(e.back().F, 1.0);
  }
}

TEST(UnexpectedColdRates, ThreeInAHundred) {
  std::vector<InvocationRecord> records;
  const absl::Time t = At("2022-12-12T10:00:00+01:00");
  for (int i = 0; i < 100; ++i) {
    AddPair(records, t + absl::Seconds(30 * i % 3000), "l" + std::to_string(i),
            i < 3);
  }
  auto classified = ClassifyAll(records);
  auto rates = UnexpectedColdRates(classified, Bucketing::kHourOfDay, Cet());
  ASSERT_EQ(rates.size(), 1u);
  EXPECT_EQ(rates[0].n, 100);
  EXPECT_DOUBLE_EQ(rates[0].mean, 0.03);
  EXPECT_NEAR(*rates[0].ci95_half_width, 1.96 * std::sqrt(0.03 * 0.97 / 100),
              1e-15);
}

TEST(UnexpectedColdRates, AllWarmIsZeroAndCiClamped) {
  std::vector<InvocationRecord> records;
  const absl::Time t = At("2022-12-12T10:00:00+01:00");
  for (int i = 0; i < 20; ++i) {
    AddPair(records, t + absl::Hours(i), "l" + std::to_string(i), false);
  }
  // A tiny bucket with one cold in two: wide interval, clamped.
  AddPair(records, At("2022-12-13T07:00:00+01:00"), "x", true);
  AddPair(records, At("2022-12-13T07:10:00+01:00"), "y", false);
  auto classified = ClassifyAll(records);
  for (const auto& s : UnexpectedColdRates(classified, Bucketing::kHourOfWeek,
                                           Cet())) {
    EXPECT_GE(s.ci_low, 0);
    EXPECT_LE(s.ci_high, 1);
    if (s.bucket_key != 24 + 7) EXPECT_EQ(s.mean, 0);
  }
}

TEST(UnexpectedWarmRate, Examples) {
  std::vector<InvocationRecord> records;
  for (int i = 0; i < 1000; ++i) {
    records.push_back(Rec(absl::FromUnixSeconds(i * 1200), "l" + std::to_string(i),
                          1, i != 0));
  }
  auto classified = ClassifyAll(records);
  EXPECT_DOUBLE_EQ(*UnexpectedWarmRate(classified), 0.001);
  records[0].cold = true;
  classified = ClassifyAll(records);
  EXPECT_EQ(*UnexpectedWarmRate(classified), 0.0);
  EXPECT_FALSE(UnexpectedWarmRate({}).ok());
}

TEST(ClassifyAll, DegeneratePairsAreExcluded) {
  std::vector<InvocationRecord> records;
  const absl::Time t = At("2022-12-12T10:00:00Z");
  AddPair(records, t, "good", false);
  // Second call failed: the pair is void, the first call still counts.
  records.push_back(Rec(t + absl::Minutes(1), "err", 1, true));
  records.push_back(Rec(t + absl::Minutes(1) + absl::Seconds(1), "err", 2, false,
                        0, CallStatus::kError));
  // Second call delayed past the cooldown.
  records.push_back(Rec(t + absl::Minutes(2), "late", 1, true));
  records.push_back(
      Rec(t + absl::Minutes(2) + absl::Seconds(1200), "late", 2, true));
  auto classified = ClassifyAll(records);
  EXPECT_EQ(classified.size(), 5u);
  ClassCounts counts = CountClasses(classified, 1);
  EXPECT_EQ(counts.first_calls, 3);
  EXPECT_EQ(counts.second_calls, 1);
  EXPECT_EQ(counts.degenerate_second_calls, 1);
  EXPECT_EQ(counts.by_class[StartClass::kExpectedCold], 3);
  EXPECT_EQ(counts.by_class[StartClass::kExpectedWarm], 1);
  EXPECT_EQ(counts.by_class[StartClass::kUnexpectedCold], 0);
  EXPECT_EQ(
      UnexpectedColdRates(classified, Bucketing::kHourOfDay, Cet())[0].n, 1);
}

TEST(PeriodRates, Windows) {
  std::vector<InvocationRecord> records;
  // Monday 10:00 (working, Monday), Wednesday 23:00 (night), Saturday 12:00
  // (weekend), Tuesday 08:30 (none of them).
  AddPair(records, At("2022-12-12T10:00:00+01:00"), "mon", true);
  AddPair(records, At("2022-12-14T23:00:00+01:00"), "night", true);
  AddPair(records, At("2022-12-17T12:00:00+01:00"), "sat", false);
  AddPair(records, At("2022-12-13T08:30:00+01:00"), "tue", true);
  AddPair(records, At("2022-12-13T16:59:00+01:00"), "tue2", false);
  auto classified = ClassifyAll(records);
  PeriodRates r = UnexpectedColdPeriodRates(classified, Cet());
  EXPECT_EQ(r.monday.n, 1);
  EXPECT_EQ(r.monday.mean, 1.0);
  EXPECT_EQ(r.working_hours.n, 2);
  EXPECT_EQ(r.working_hours.mean, 0.5);
  EXPECT_EQ(r.night.n, 1);
  EXPECT_EQ(r.night.mean, 1.0);
  EXPECT_EQ(r.weekend.n, 1);
  EXPECT_EQ(r.weekend.mean, 0.0);
}

TEST(ConfidenceInterval, DuplicatingDataShrinksRateIntervalByRootTwo) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int64_t n = 2 + rng() % 1000;
    const int64_t hits = 1 + rng() % (n - 1);
    BucketStat a = SummarizeRate(0, hits, n);
    BucketStat b = SummarizeRate(0, 2 * hits, 2 * n);
    EXPECT_NEAR(*b.ci95_half_width / *a.ci95_half_width, 1 / std::sqrt(2.0),
                1e-9);
  }
}

TEST(ConfidenceInterval, DuplicatingDurationsFollowsSampleSd) {
  // With the (n-1) sample deviation a duplicated sample of size n has
  // half-width ratio sqrt((n-1)/(2n-1)), which tends to 1/sqrt(2).
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d(110, 8);
  for (int n : {2, 5, 50, 5000}) {
    std::vector<double> values(n);
    for (double& v : values) v = d(rng);
    std::vector<double> twice = values;
    twice.insert(twice.end(), values.begin(), values.end());
    const double ratio = *SummarizeValues(0, twice).ci95_half_width /
                         *SummarizeValues(0, values).ci95_half_width;
    EXPECT_NEAR(ratio, std::sqrt((n - 1.0) / (2.0 * n - 1.0)), 1e-9);
  }
}

}  // namespace
}  // namespace variability
