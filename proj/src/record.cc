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

#include "variability/record.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace variability {

absl::string_view WorkloadName(Workload w) {
  return w == Workload::kFloat ? "float" : "matrix";
}

absl::string_view TargetKindName(TargetKind k) {
  return k == TargetKind::kHttp ? "http" : "sim";
}

absl::string_view CallStatusName(CallStatus s) {
  return s == CallStatus::kOk ? "ok" : "error";
}

absl::string_view StartClassName(StartClass c) {
  switch (c) {
    case StartClass::kExpectedCold: return "ExpectedCold";
    case StartClass::kExpectedWarm: return "ExpectedWarm";
    case StartClass::kUnexpectedCold: return "UnexpectedCold";
    case StartClass::kUnexpectedWarm: return "UnexpectedWarm";
  }
  return "?";
}

absl::StatusOr<Workload> ParseWorkload(absl::string_view name) {
  if (name == "float") return Workload::kFloat;
  if (name == "matrix") return Workload::kMatrix;
  return absl::InvalidArgumentError(absl::StrCat("unknown workload '", name, "'"));
}

absl::StatusOr<TargetKind> ParseTargetKind(absl::string_view name) {
  if (name == "http") return TargetKind::kHttp;
  if (name == "sim") return TargetKind::kSim;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown target_kind '", name, "'"));
}

absl::StatusOr<CallStatus> ParseCallStatus(absl::string_view name) {
  if (name == "ok") return CallStatus::kOk;
  if (name == "error") return CallStatus::kError;
  return absl::InvalidArgumentError(absl::StrCat("unknown status '", name, "'"));
}

absl::Status ValidateRecord(const InvocationRecord& r) {
  if (r.call_index != 1 && r.call_index != 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("call_index must be 1 or 2, got ", r.call_index));
  }
  if (r.memory_mb <= 0 || r.memory_mb % 128 != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "memory_mb must be a positive multiple of 128, got ", r.memory_mb));
  }
  if (r.copy_index < 0) {
    return absl::InvalidArgumentError("copy_index must be non-negative");
  }
  if (!(r.billed_duration_ms >= 0) || !std::isfinite(r.billed_duration_ms) ||
      !(r.handler_duration_ms >= 0) || !std::isfinite(r.handler_duration_ms)) {
    return absl::InvalidArgumentError("durations must be finite and >= 0");
  }
  if (r.function_name.empty() || r.loop_id.empty()) {
    return absl::InvalidArgumentError("function_name and loop_id are required");
  }
  return absl::OkStatus();
}

absl::StatusOr<StartClass> Classify(const InvocationRecord& record) {
  if (!record.ok()) {
    return absl::FailedPreconditionError(
        absl::StrCat("refusing to classify failed call ", record.loop_id, "/",
                     record.call_index));
  }
  if (record.call_index == 1) {
    return record.cold ? StartClass::kExpectedCold : StartClass::kUnexpectedWarm;
  }
  if (record.call_index == 2) {
    return record.cold ? StartClass::kUnexpectedCold : StartClass::kExpectedWarm;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("call_index must be 1 or 2, got ", record.call_index));
}

}  // namespace variability
