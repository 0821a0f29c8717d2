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

#ifndef VARIABILITY_RECORD_IO_H_
#define VARIABILITY_RECORD_IO_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "variability/record.h"

namespace variability {

// JSONL line for one record. Keys appear in declaration order of
// InvocationRecord; timestamps are RFC 3339 UTC with milliseconds.
std::string ToJsonLine(const InvocationRecord& record);
absl::StatusOr<InvocationRecord> ParseJsonLine(absl::string_view line);

struct AppendResult {
  std::size_t written = 0;
  absl::Status status;
};

// Destination for records. Implementations serialize concurrent Append calls
// so lines never interleave.
class RecordSink {
 public:
  virtual ~RecordSink() = default;
  virtual AppendResult Append(std::span<const InvocationRecord> records) = 0;
};

// Appends to a file; existing content is never touched.
class JsonlRecordSink final : public RecordSink {
 public:
  explicit JsonlRecordSink(std::filesystem::path path) : path_(std::move(path)) {}
  AppendResult Append(std::span<const InvocationRecord> records) override;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
};

class MemoryRecordSink final : public RecordSink {
 public:
  AppendResult Append(std::span<const InvocationRecord> records) override;
  std::vector<InvocationRecord> TakeRecords();
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::vector<InvocationRecord> records_;
};

inline AppendResult AppendRecords(RecordSink& sink,
                                  std::span<const InvocationRecord> records) {
  return sink.Append(records);
}

struct RecordFilter {
  std::optional<std::string> function_name;
  std::optional<int> memory_mb;
  std::optional<absl::Time> from;  // inclusive
  std::optional<absl::Time> to;    // exclusive

  bool Matches(const InvocationRecord& r) const;
};

// Reads every line, reporting all malformed line numbers at once. The result
// is ordered by (timestamp_utc, loop_id, call_index).
absl::StatusOr<std::vector<InvocationRecord>> ParseRecords(
    std::istream& in, const RecordFilter& filter = {});
absl::StatusOr<std::vector<InvocationRecord>> LoadRecords(
    const std::filesystem::path& path, const RecordFilter& filter = {});

void SortRecords(std::vector<InvocationRecord>& records);

}  // namespace variability

#endif  // VARIABILITY_RECORD_IO_H_
