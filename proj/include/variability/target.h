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

#ifndef VARIABILITY_TARGET_H_
#define VARIABILITY_TARGET_H_

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "variability/clock.h"
#include "variability/record.h"

namespace variability {

class Simulator;

struct InvocationOutcome {
  std::string instance_id;
  bool cold = false;
  double handler_duration_ms = 0;
  double billed_duration_ms = 0;
  CallStatus status = CallStatus::kOk;
  std::optional<std::string> error_detail;
};

// quantum_ms * ceil(raw_ms / quantum_ms). Negative or non-finite input is a
// domain error.
absl::StatusOr<double> QuantizeBilled(double raw_ms, double quantum_ms);

struct InvocationRequest {
  std::string function_key;  // one deployed copy
  int memory_mb = 128;
  std::string run_id;
  std::string loop_id;
  int call_index = 1;
};

class InvocationTarget {
 public:
  virtual ~InvocationTarget() = default;
  virtual TargetKind kind() const = 0;
  // Checks reachability without invoking a workload.
  virtual absl::Status Probe() = 0;
  // Failures come back as status=error outcomes, never as exceptions.
  virtual InvocationOutcome Invoke(const InvocationRequest& request,
                                   Clock& clock) = 0;
};

// Drives the built-in platform model. The invocation time is clock.Now().
class SimTarget final : public InvocationTarget {
 public:
  SimTarget(std::shared_ptr<Simulator> sim, double billing_quantum_ms)
      : sim_(std::move(sim)), quantum_ms_(billing_quantum_ms) {}
  TargetKind kind() const override { return TargetKind::kSim; }
  absl::Status Probe() override { return absl::OkStatus(); }
  InvocationOutcome Invoke(const InvocationRequest& request,
                           Clock& clock) override;
  Simulator& simulator() { return *sim_; }

 private:
  std::shared_ptr<Simulator> sim_;
  double quantum_ms_;
};

struct HttpTargetOptions {
  double billing_quantum_ms = 1;
  absl::Duration timeout = absl::Seconds(60);
  std::optional<std::string> bearer_token;
};

// POSTs {run_id, loop_id, call_index} to the endpoint of each function copy
// and reads {instance_id, cold, handler_duration_ms, ...} back. Billed
// duration is approximated from the handler duration; provider billing logs
// are not consulted.
class HttpTarget final : public InvocationTarget {
 public:
  HttpTarget(std::map<std::string, std::string> endpoints,
             HttpTargetOptions options)
      : endpoints_(std::move(endpoints)), options_(std::move(options)) {}
  TargetKind kind() const override { return TargetKind::kHttp; }
  absl::Status Probe() override;
  InvocationOutcome Invoke(const InvocationRequest& request,
                           Clock& clock) override;

 private:
  std::map<std::string, std::string> endpoints_;
  HttpTargetOptions options_;
};

// Parses a workload response body into an outcome (billed = quantized
// handler duration). Exposed for tests of the wire contract.
absl::StatusOr<InvocationOutcome> ParseWorkloadResponse(absl::string_view body,
                                                        double quantum_ms);

}  // namespace variability

#endif  // VARIABILITY_TARGET_H_
