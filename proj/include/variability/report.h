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

#ifndef VARIABILITY_REPORT_H_
#define VARIABILITY_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "variability/change_point.h"
#include "variability/hourly_series.h"
#include "variability/outliers.h"
#include "variability/record.h"
#include "variability/stats.h"
#include "variability/stl.h"

namespace variability {

inline constexpr char kToolVersion[] = "0.1.0";

struct AnalyzeOptions {
  std::string timezone = "CET";
  ClassifyOptions classify;
  PeriodWindows windows;
  HourlySeriesOptions hourly;
  StlParams stl;
  // Without an explicit penalty the trend is segmented with
  // ResidualChangePointPenalty of the remainder. Segments shorter than a
  // day are below what the daily-seasonal trend can resolve.
  ChangePointOptions change_points{std::nullopt, 24};
  OutlierOptions outliers;
  // Quartiles from raw warm durations instead of the hourly means.
  bool outliers_over_raw_durations = false;
};

// Where the records came from. Unknown fields stay empty.
struct Provenance {
  std::optional<std::string> config_hash;
  std::optional<uint64_t> seed;
};

// Decomposition results for one (workload, memory) group.
struct GroupAnalysis {
  Workload workload = Workload::kFloat;
  int memory_mb = 128;
  std::optional<TimeSeries> series;
  std::optional<Decomposition> decomposition;
  std::string absent_reason;  // set when decomposition is empty
  std::vector<int> change_points;
  std::optional<OutlierReport> outliers;
  std::optional<TrendSummary> trend;
};

struct ReportBundle {
  std::string summary_json;
  // File name -> CSV text.
  std::map<std::string, std::string> tables;
  std::vector<GroupAnalysis> groups;
  std::vector<std::string> warnings;
};

// 64-bit FNV-1a as 16 hex digits; used for provenance hashes.
std::string Fnv1aHex(absl::string_view bytes);

// Classification, bucket statistics, ECDFs and, per (workload, memory), the
// hourly series -> STL -> change points, outliers and trend summary. Groups
// without enough data for STL are reported absent with a warning. Errors only
// for an empty record set or an unknown timezone.
absl::StatusOr<ReportBundle> Analyze(std::span<const InvocationRecord> records,
                                     const AnalyzeOptions& options,
                                     const Provenance& provenance = {});

// Writes summary.json and every table into out_dir (created if missing).
absl::Status WriteBundle(const ReportBundle& bundle,
                         const std::filesystem::path& out_dir);

}  // namespace variability

#endif  // VARIABILITY_REPORT_H_
