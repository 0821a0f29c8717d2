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

#include "variability/report.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "spdlog/spdlog.h"
#include "variability/time_util.h"

namespace variability {

using ordered_json = nlohmann::ordered_json;

namespace {

// Shortest round-trip text; keeps bundles byte-stable across runs.
std::string Num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string OptNum(const std::optional<double>& v) {
  return v ? Num(*v) : std::string();
}

ordered_json RateJson(const BucketStat& s) {
  ordered_json j;
  j["n"] = s.n;
  j["rate"] = s.n > 0 ? ordered_json(s.mean) : ordered_json(nullptr);
  j["ci_low"] = s.n > 0 ? ordered_json(s.ci_low) : ordered_json(nullptr);
  j["ci_high"] = s.n > 0 ? ordered_json(s.ci_high) : ordered_json(nullptr);
  return j;
}

using GroupKey = std::pair<Workload, int>;

std::string GroupCols(const GroupKey& g) {
  return absl::StrCat(WorkloadName(g.first), ",", g.second);
}

void AnalyzeGroup(std::span<const Classified> classified,
                  std::span<const double> raw_warm, const AnalyzeOptions& opt,
                  GroupAnalysis& out) {
  auto series = HourlySeries(classified, opt.hourly);
  if (!series.ok()) {
    out.absent_reason = std::string(series.status().message());
    return;
  }
  out.series = *series;
  auto dec = StlDecompose(*series, opt.stl);
  if (!dec.ok()) {
    out.absent_reason = std::string(dec.status().message());
    return;
  }
  out.decomposition = *std::move(dec);

  ChangePointOptions cp = opt.change_points;
  if (!cp.penalty) {
    cp.penalty = ResidualChangePointPenalty(out.decomposition->remainder);
  }
  auto cps = DetectChangePoints(out.decomposition->trend, cp);
  if (cps.ok()) out.change_points = *std::move(cps);

  std::span<const double> population;
  if (opt.outliers_over_raw_durations) population = raw_warm;
  auto outliers = DetectOutliers(series->values, opt.outliers, population);
  if (outliers.ok()) out.outliers = *std::move(outliers);

  auto trend = SummarizeTrend(out.decomposition->trend);
  if (trend.ok()) out.trend = *trend;
}

}  // namespace

std::string Fnv1aHex(absl::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return absl::StrFormat("%016x", h);
}

absl::StatusOr<ReportBundle> Analyze(std::span<const InvocationRecord> records,
                                     const AnalyzeOptions& opt,
                                     const Provenance& provenance) {
  if (records.empty()) return absl::InvalidArgumentError("no records");
  auto tz = LoadZone(opt.timezone);
  if (!tz.ok()) return tz.status();

  ReportBundle bundle;
  const std::vector<Classified> all = ClassifyAll(records, opt.classify);
  int64_t errors = 0;
  for (const InvocationRecord& r : records) errors += !r.ok();
  const ClassCounts counts = CountClasses(all, errors);

  std::map<GroupKey, std::vector<Classified>> by_group;
  for (const Classified& c : all) {
    by_group[{c.record->workload, c.record->memory_mb}].push_back(c);
  }

  std::string hod = "workload,memory_mb,hour,n,mean_ms,ci95_half_width,rel_change,rel_ci95_half_width\n";
  std::string how = "workload,memory_mb,hour_of_week,n,unexpected_cold_rate,ci_low,ci_high\n";
  std::string ecdf = "workload,memory_mb,billed_duration_ms,F\n";
  std::string decomposition = "workload,memory_mb,t,y,filled,trend,seasonal,remainder\n";
  std::string change_points = "workload,memory_mb,index,t,level_before,level_after\n";
  std::string outliers = "workload,memory_mb,index,t,value,deviation,threshold\n";

  ordered_json groups_json = ordered_json::array();
  for (const auto& [key, classified] : by_group) {
    const std::string cols = GroupCols(key);
    const auto hour_stats =
        BucketDurationStats(classified, Bucketing::kHourOfDay, *tz);
    std::vector<RelativeBucket> rel;
    if (auto r = RelativeChange(hour_stats); r.ok()) rel = *std::move(r);
    for (std::size_t i = 0; i < hour_stats.size(); ++i) {
      const BucketStat& s = hour_stats[i];
      absl::StrAppend(&hod, cols, ",", s.bucket_key, ",", s.n, ",", Num(s.mean),
                      ",", OptNum(s.ci95_half_width), ",",
                      i < rel.size() ? Num(rel[i].rel) : "", ",",
                      i < rel.size() ? OptNum(rel[i].ci95_half_width) : "", "\n");
    }
    for (const BucketStat& s :
         UnexpectedColdRates(classified, Bucketing::kHourOfWeek, *tz)) {
      absl::StrAppend(&how, cols, ",", s.bucket_key, ",", s.n, ",", Num(s.mean),
                      ",", Num(s.ci_low), ",", Num(s.ci_high), "\n");
    }
    std::vector<double> warm;
    for (const Classified& c : classified) {
      if (!c.degenerate && c.start_class == StartClass::kExpectedWarm) {
        warm.push_back(c.record->billed_duration_ms);
      }
    }
    if (auto points = Ecdf(warm); points.ok()) {
      for (const EcdfPoint& p : *points) {
        absl::StrAppend(&ecdf, cols, ",", Num(p.x), ",", Num(p.F), "\n");
      }
    }

    GroupAnalysis g;
    g.workload = key.first;
    g.memory_mb = key.second;
    AnalyzeGroup(classified, warm, opt, g);

    ordered_json gj;
    gj["workload"] = WorkloadName(g.workload);
    gj["memory_mb"] = g.memory_mb;
    gj["warm_calls"] = warm.size();
    if (!g.decomposition) {
      gj["decomposition"] = "absent";
      gj["absent_reason"] = g.absent_reason;
      bundle.warnings.push_back(absl::StrCat("decomposition absent for ",
                                             WorkloadName(g.workload), "-",
                                             g.memory_mb, ": ", g.absent_reason));
    } else {
      const TimeSeries& ts = *g.series;
      const Decomposition& d = *g.decomposition;
      gj["decomposition"] = "present";
      gj["series_hours"] = ts.size();
      gj["filled_hours"] = static_cast<int64_t>(
          std::count(ts.filled.begin(), ts.filled.end(), true));
      for (std::size_t i = 0; i < ts.size(); ++i) {
        absl::StrAppend(&decomposition, cols, ",", FormatTimestamp(ts.TimeAt(i)),
                        ",", Num(ts.values[i]), ",", ts.filled[i] ? 1 : 0, ",",
                        Num(d.trend[i]), ",", Num(d.seasonal[i]), ",",
                        Num(d.remainder[i]), "\n");
      }
      ordered_json cps = ordered_json::array();
      for (std::size_t k = 0; k < g.change_points.size(); ++k) {
        const int i = g.change_points[k];
        cps.push_back(FormatTimestamp(ts.TimeAt(i)));
        absl::StrAppend(&change_points, cols, ",", i, ",",
                        FormatTimestamp(ts.TimeAt(i)), ",", Num(d.trend[i - 1]),
                        ",", Num(d.trend[i]), "\n");
      }
      gj["change_points"] = cps;
      ordered_json outs = ordered_json::array();
      if (g.outliers) {
        for (int i : g.outliers->indices) {
          outs.push_back(FormatTimestamp(ts.TimeAt(i)));
          absl::StrAppend(&outliers, cols, ",", i, ",",
                          FormatTimestamp(ts.TimeAt(i)), ",", Num(ts.values[i]),
                          ",", Num(ts.values[i] - g.outliers->mean), ",",
                          Num(g.outliers->threshold), "\n");
        }
        gj["outlier_iqr"] = g.outliers->iqr;
        if (g.outliers->degenerate) {
          bundle.warnings.push_back(absl::StrCat(
              "IQR is zero for ", WorkloadName(g.workload), "-", g.memory_mb));
        }
      }
      gj["outliers"] = outs;
      if (g.trend) {
        gj["trend_summary"] = {{"min", g.trend->min},
                               {"max", g.trend->max},
                               {"rel_change", g.trend->rel_change}};
      }
    }
    groups_json.push_back(std::move(gj));
    bundle.groups.push_back(std::move(g));
  }

  bundle.tables["hour_of_day.csv"] = std::move(hod);
  bundle.tables["hour_of_week_rates.csv"] = std::move(how);
  bundle.tables["ecdf.csv"] = std::move(ecdf);
  bundle.tables["decomposition.csv"] = std::move(decomposition);
  bundle.tables["change_points.csv"] = std::move(change_points);
  bundle.tables["outliers.csv"] = std::move(outliers);

  ordered_json s;
  s["records"] = records.size();
  ordered_json cc;
  for (StartClass c : kAllStartClasses) {
    cc[std::string(StartClassName(c))] = counts.by_class.at(c);
  }
  s["class_counts"] = cc;
  s["first_calls"] = counts.first_calls;
  s["second_calls"] = counts.second_calls;
  s["degenerate_second_calls"] = counts.degenerate_second_calls;
  s["error_records"] = counts.error_records;
  const PeriodRates pr = UnexpectedColdPeriodRates(all, *tz, opt.windows);
  s["unexpected_cold_rates"] = {{"night", RateJson(pr.night)},
                                {"weekend", RateJson(pr.weekend)},
                                {"working_hours", RateJson(pr.working_hours)},
                                {"monday", RateJson(pr.monday)}};
  if (auto uw = UnexpectedWarmRate(all); uw.ok()) {
    s["unexpected_warm_rate"] = *uw;
  } else {
    s["unexpected_warm_rate"] = nullptr;
  }
  s["timezone"] = opt.timezone;
  s["groups"] = groups_json;
  ordered_json tables = ordered_json::array();
  for (const auto& [name, _] : bundle.tables) tables.push_back(name);
  s["tables"] = tables;
  s["warnings"] = bundle.warnings;
  ordered_json prov;
  prov["config_hash"] = provenance.config_hash
                            ? ordered_json(*provenance.config_hash)
                            : ordered_json(nullptr);
  prov["seed"] =
      provenance.seed ? ordered_json(*provenance.seed) : ordered_json(nullptr);
  prov["tool_version"] = kToolVersion;
  s["provenance"] = prov;
  bundle.summary_json = s.dump(2) + "\n";

  for (const std::string& w : bundle.warnings) spdlog::warn("{}", w);
  return bundle;
}

absl::Status WriteBundle(const ReportBundle& bundle,
                         const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat(
        "cannot create ", out_dir.string(), ": ", ec.message()));
  }
  auto write = [&out_dir](const std::string& name,
                          const std::string& text) -> absl::Status {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      return absl::DataLossError(
          absl::StrCat("failed writing ", (out_dir / name).string()));
    }
    return absl::OkStatus();
  };
  for (const auto& [name, text] : bundle.tables) {
    if (auto s = write(name, text); !s.ok()) return s;
  }
  return write("summary.json", bundle.summary_json);
}

}  // namespace variability
