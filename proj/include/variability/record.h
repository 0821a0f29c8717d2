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

#ifndef VARIABILITY_RECORD_H_
#define VARIABILITY_RECORD_H_

#include <array>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/time/time.h"

namespace variability {

enum class Workload { kFloat, kMatrix };
enum class TargetKind { kHttp, kSim };
enum class CallStatus { kOk, kError };

enum class StartClass {
  kExpectedCold,
  kExpectedWarm,
  kUnexpectedCold,
  kUnexpectedWarm,
};
inline constexpr std::array<StartClass, 4> kAllStartClasses = {
    StartClass::kExpectedCold, StartClass::kExpectedWarm,
    StartClass::kUnexpectedCold, StartClass::kUnexpectedWarm};

absl::string_view WorkloadName(Workload w);
absl::string_view TargetKindName(TargetKind k);
absl::string_view CallStatusName(CallStatus s);
absl::string_view StartClassName(StartClass c);

absl::StatusOr<Workload> ParseWorkload(absl::string_view name);
absl::StatusOr<TargetKind> ParseTargetKind(absl::string_view name);
absl::StatusOr<CallStatus> ParseCallStatus(absl::string_view name);

// One function invocation. The first call of a loop has call_index 1, the
// call issued right after it has call_index 2.
struct InvocationRecord {
  absl::Time timestamp_utc = absl::UnixEpoch();
  std::string function_name;
  Workload workload = Workload::kFloat;
  int memory_mb = 128;
  int copy_index = 0;
  std::string loop_id;
  int call_index = 1;
  std::string instance_id;
  bool cold = false;
  double billed_duration_ms = 0;
  double handler_duration_ms = 0;
  TargetKind target_kind = TargetKind::kSim;
  CallStatus status = CallStatus::kOk;

  bool ok() const { return status == CallStatus::kOk; }

  friend bool operator==(const InvocationRecord&,
                         const InvocationRecord&) = default;
};

// Checks the per-record invariants (call index, memory tier, durations).
absl::Status ValidateRecord(const InvocationRecord& record);

// Maps (call_index, cold) onto the four start classes. Records with
// status=error are refused with FailedPrecondition.
absl::StatusOr<StartClass> Classify(const InvocationRecord& record);

}  // namespace variability

#endif  // VARIABILITY_RECORD_H_
