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

#include "variability/change_point.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace variability {

double DefaultChangePointPenalty(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3) return 0;
  double mean = 0;
  for (std::size_t i = 1; i < n; ++i) mean += x[i] - x[i - 1];
  mean /= static_cast<double>(n - 1);
  double var = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = x[i] - x[i - 1] - mean;
    var += d * d;
  }
  var /= static_cast<double>(n - 2);
  return 10.0 * var * std::log(static_cast<double>(n));
}

double ResidualChangePointPenalty(std::span<const double> residual) {
  const std::size_t n = residual.size();
  if (n < 2) return 0;
  double mean = 0;
  for (double v : residual) mean += v;
  mean /= static_cast<double>(n);
  double var = 0;
  for (double v : residual) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n - 1);
  return 2.0 * var * std::log(static_cast<double>(n));
}

SegmentCost::SegmentCost(std::span<const double> x)
    : sum_(x.size() + 1, 0.0), sum_sq_(x.size() + 1, 0.0) {
  // Centre first so large offsets do not eat precision in sum_sq - sum^2/n.
  double mean = 0;
  for (double v : x) mean += v;
  if (!x.empty()) mean /= static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x[i] - mean;
    sum_[i + 1] = sum_[i] + v;
    sum_sq_[i + 1] = sum_sq_[i] + v * v;
  }
}

double SegmentCost::operator()(int begin, int end) const {
  const double n = end - begin;
  const double s = sum_[end] - sum_[begin];
  const double cost = sum_sq_[end] - sum_sq_[begin] - s * s / n;
  return std::max(0.0, cost);
}

absl::StatusOr<std::vector<int>> DetectChangePoints(
    std::span<const double> x, const ChangePointOptions& options) {
  const int n = static_cast<int>(x.size());
  if (n < 4) {
    return absl::FailedPreconditionError(absl::StrCat(
        "change point detection needs at least 4 samples, got ", n));
  }
  const double penalty =
      options.penalty ? *options.penalty : DefaultChangePointPenalty(x);
  if (!(penalty >= 0) || !std::isfinite(penalty)) {
    return absl::InvalidArgumentError("penalty must be finite and >= 0");
  }
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) {
    return std::vector<int>{};
  }
  const int min_seg = std::max(1, options.min_segment);
  const SegmentCost cost(x);

  // best[t]: optimal cost of x[0, t) including one penalty per segment.
  // A candidate start s that fails the pruning test at time t can still be
  // the only admissible start for t' < t + min_seg, so it retires then.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  struct Candidate {
    int start;
    int retire_at;
  };
  std::vector<double> best(n + 1, kInf);
  std::vector<int> last(n + 1, 0);
  best[0] = 0;
  std::vector<Candidate> candidates = {{0, std::numeric_limits<int>::max()}};
  for (int t = min_seg; t <= n; ++t) {
    const int fresh = t - min_seg;
    if (fresh >= min_seg) {
      candidates.push_back({fresh, std::numeric_limits<int>::max()});
    }
    std::erase_if(candidates, [t](const Candidate& c) { return t >= c.retire_at; });
    double best_t = kInf;
    int arg = 0;
    for (const Candidate& c : candidates) {
      const double v = best[c.start] + cost(c.start, t) + penalty;
      if (v < best_t) {
        best_t = v;
        arg = c.start;
      }
    }
    best[t] = best_t;
    last[t] = arg;
    for (Candidate& c : candidates) {
      if (c.retire_at == std::numeric_limits<int>::max() &&
          best[c.start] + cost(c.start, t) > best_t) {
        c.retire_at = t + min_seg;
      }
    }
  }

  std::vector<int> breaks;
  for (int t = last[n]; t > 0; t = last[t]) breaks.push_back(t);
  std::reverse(breaks.begin(), breaks.end());
  return breaks;
}

}  // namespace variability
