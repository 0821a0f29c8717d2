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

#include "variability/record_io.h"

#include <algorithm>
#include <fstream>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "variability/time_util.h"

namespace variability {

using ordered_json = nlohmann::ordered_json;

std::string ToJsonLine(const InvocationRecord& r) {
  ordered_json j;
  j["timestamp_utc"] = FormatTimestamp(r.timestamp_utc);
  j["function_name"] = r.function_name;
  j["workload"] = WorkloadName(r.workload);
  j["memory_mb"] = r.memory_mb;
  j["copy_index"] = r.copy_index;
  j["loop_id"] = r.loop_id;
  j["call_index"] = r.call_index;
  j["instance_id"] = r.instance_id;
  j["cold"] = r.cold;
  j["billed_duration_ms"] = r.billed_duration_ms;
  j["handler_duration_ms"] = r.handler_duration_ms;
  j["target_kind"] = TargetKindName(r.target_kind);
  j["status"] = CallStatusName(r.status);
  return j.dump();
}

absl::StatusOr<InvocationRecord> ParseJsonLine(absl::string_view line) {
  const auto j = ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("not a JSON object");
  }
  InvocationRecord r;
  try {
    auto ts = ParseTimestamp(j.at("timestamp_utc").get<std::string>());
    if (!ts.ok()) return ts.status();
    r.timestamp_utc = *ts;
    r.function_name = j.at("function_name").get<std::string>();
    auto workload = ParseWorkload(j.at("workload").get<std::string>());
    if (!workload.ok()) return workload.status();
    r.workload = *workload;
    r.memory_mb = j.at("memory_mb").get<int>();
    r.copy_index = j.at("copy_index").get<int>();
    r.loop_id = j.at("loop_id").get<std::string>();
    r.call_index = j.at("call_index").get<int>();
    r.instance_id = j.at("instance_id").get<std::string>();
    r.cold = j.at("cold").get<bool>();
    r.billed_duration_ms = j.at("billed_duration_ms").get<double>();
    r.handler_duration_ms = j.at("handler_duration_ms").get<double>();
    auto kind = ParseTargetKind(j.at("target_kind").get<std::string>());
    if (!kind.ok()) return kind.status();
    r.target_kind = *kind;
    auto status = ParseCallStatus(j.at("status").get<std::string>());
    if (!status.ok()) return status.status();
    r.status = *status;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
  if (auto s = ValidateRecord(r); !s.ok()) return s;
  return r;
}

AppendResult JsonlRecordSink::Append(std::span<const InvocationRecord> records) {
  AppendResult result;
  if (records.empty()) return result;
  std::lock_guard<std::mutex> lock(mu_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) {
    result.status = absl::UnavailableError(
        absl::StrCat("cannot open ", path_.string(), " for appending"));
    return result;
  }
  for (const InvocationRecord& r : records) {
    out << ToJsonLine(r) << '\n';
    out.flush();
    if (!out) {
      result.status = absl::DataLossError(absl::StrCat(
          "write to ", path_.string(), " failed after ", result.written,
          " records"));
      return result;
    }
    ++result.written;
  }
  return result;
}

AppendResult MemoryRecordSink::Append(std::span<const InvocationRecord> records) {
  std::lock_guard<std::mutex> lock(mu_);
  records_.insert(records_.end(), records.begin(), records.end());
  return {records.size(), absl::OkStatus()};
}

std::vector<InvocationRecord> MemoryRecordSink::TakeRecords() {
  std::lock_guard<std::mutex> lock(mu_);
  return std::exchange(records_, {});
}

std::size_t MemoryRecordSink::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

bool RecordFilter::Matches(const InvocationRecord& r) const {
  if (function_name && r.function_name != *function_name) return false;
  if (memory_mb && r.memory_mb != *memory_mb) return false;
  if (from && r.timestamp_utc < *from) return false;
  if (to && r.timestamp_utc >= *to) return false;
  return true;
}

void SortRecords(std::vector<InvocationRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const InvocationRecord& a, const InvocationRecord& b) {
                     return std::tie(a.timestamp_utc, a.loop_id, a.call_index) <
                            std::tie(b.timestamp_utc, b.loop_id, b.call_index);
                   });
}

absl::StatusOr<std::vector<InvocationRecord>> ParseRecords(
    std::istream& in, const RecordFilter& filter) {
  std::vector<InvocationRecord> out;
  std::vector<std::string> bad;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto rec = ParseJsonLine(line);
    if (!rec.ok()) {
      bad.push_back(absl::StrCat(line_no, " (", rec.status().message(), ")"));
      continue;
    }
    if (filter.Matches(*rec)) out.push_back(*std::move(rec));
  }
  if (!bad.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed record lines: ", absl::StrJoin(bad, "; ")));
  }
  SortRecords(out);
  return out;
}

absl::StatusOr<std::vector<InvocationRecord>> LoadRecords(
    const std::filesystem::path& path, const RecordFilter& filter) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    return absl::NotFoundError(absl::StrCat("no records file at ", path.string()));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot read ", path.string()));
  }
  return ParseRecords(in, filter);
}

}  // namespace variability
