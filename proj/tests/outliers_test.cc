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

#include <random>

#include "gtest/gtest.h"

namespace variability {
namespace {

TEST(Quantile, Type7) {
  const std::vector<double> s = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(Quantile(s, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(Quantile(s, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(Quantile(s, 0), 1);
  EXPECT_DOUBLE_EQ(Quantile(s, 1), 4);
}

TEST(Outliers, HandComputedQuartiles) {
  // Nine values: Q1 = 95, Q3 = 105 (positions 2 and 6), IQR 10, mean 100.
  std::vector<double> v = {90, 93, 95, 98, 100, 102, 105, 107, 110};
  OutlierOptions o;
  o.k = 4;
  std::vector<double> probe = {100, 139, 141, 145, 55, 61};
  auto r = *DetectOutliers(probe, o, v);
  EXPECT_DOUBLE_EQ(r.q1, 95);
  EXPECT_DOUBLE_EQ(r.q3, 105);
  EXPECT_DOUBLE_EQ(r.iqr, 10);
  EXPECT_DOUBLE_EQ(r.mean, 100);
  EXPECT_DOUBLE_EQ(r.threshold, 40);
  EXPECT_EQ(r.indices, (std::vector<int>{2, 3, 4}));
}

TEST(Outliers, ConstantFlagsNothing) {
  std::vector<double> v(50, 123.4);
  auto r = *DetectOutliers(v);
  EXPECT_TRUE(r.indices.empty());
  EXPECT_FALSE(r.degenerate);
}

TEST(Outliers, ShiftInvariant) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d(0, 1);
  std::vector<double> v(300), w(300);
  for (int i = 0; i < 300; ++i) v[i] = d(rng);
  v[17] = 9;
  v[200] = -8;
  for (int i = 0; i < 300; ++i) w[i] = v[i] + 500;
  OutlierOptions o;
  o.k = 3;
  auto a = *DetectOutliers(v, o);
  auto b = *DetectOutliers(w, o);
  EXPECT_EQ(a.indices, b.indices);
  EXPECT_EQ(a.indices, (std::vector<int>{17, 200}));
}

TEST(Outliers, DegenerateIqr) {
  std::vector<double> v(20, 5.0);
  v[3] = 6;
  auto r = *DetectOutliers(v);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.indices.empty());
  OutlierOptions o;
  o.flag_any_deviation_when_degenerate = true;
  r = *DetectOutliers(v, o);
  EXPECT_FALSE(r.indices.empty());
}

TEST(Outliers, Errors) {
  EXPECT_FALSE(DetectOutliers(std::vector<double>(7, 1.0)).ok());
  OutlierOptions o;
  o.k = 0;
  EXPECT_FALSE(DetectOutliers(std::vector<double>(9, 1.0), o).ok());
}

}  // namespace
}  // namespace variability
