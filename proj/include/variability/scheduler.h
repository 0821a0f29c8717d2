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

#ifndef VARIABILITY_SCHEDULER_H_
#define VARIABILITY_SCHEDULER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "variability/clock.h"
#include "variability/record.h"
#include "variability/record_io.h"
#include "variability/target.h"

namespace variability {

// One benchmarked function variant. Each copy is a separately deployed
// function; `endpoint` may contain "{copy}" which expands to the copy index,
// or `endpoints` lists one URL per copy.
struct FunctionSpec {
  std::string function_name;
  Workload workload = Workload::kFloat;
  int memory_mb = 128;
  std::string endpoint;
  std::vector<std::string> endpoints;
};

enum class CampaignMode { kPairLoop, kBurst };

struct CampaignConfig {
  std::vector<FunctionSpec> functions;
  CampaignMode mode = CampaignMode::kPairLoop;
  double measurement_interval_s = 40;
  double cooldown_s = 1200;
  int burst_size = 50;
  double burst_period_s = 3600;
  absl::Duration duration = absl::Hours(24);
  std::string timezone = "CET";
  double billing_quantum_ms = 1;
  // Start of the plan. Live runs default to "now"; simulations need it fixed.
  std::optional<absl::Time> start;
  // Virtual-clock delay between call 1 completing and call 2 being issued.
  double pair_gap_s = 0.05;
  double timeout_s = 60;
  std::optional<std::string> bearer_token;
  std::string run_id = "run";
};

absl::Status ValidateCampaign(const CampaignConfig& config);

// ceil(cooldown / interval), at least 1.
int CopiesNeeded(const CampaignConfig& config);

// Target-side key for one deployed copy, e.g. "float-128#07".
std::string CopyKey(const FunctionSpec& fn, int copy_index);
// Endpoint URL for a copy (expands "{copy}" or indexes `endpoints`).
absl::StatusOr<std::string> CopyEndpoint(const FunctionSpec& fn, int copy_index);

struct PlannedCall {
  absl::Time virtual_time;
  int function_index = 0;
  std::string function_name;
  int copy_index = 0;
  std::string loop_id;
  int call_index = 1;
};

// Pair-loop protocol. Copy k of every function starts at k * interval and
// repeats every copies * interval (>= cooldown), so across copies one pair
// starts every interval. Call 2 is planned pair_gap_s after call 1; at run
// time it is issued only once call 1 has answered. Function variants are
// staggered by interval / #functions.
absl::StatusOr<std::vector<PlannedCall>> PlanCampaign(const CampaignConfig& config);

// Burst mode: every burst_period_s, burst_size sequential calls on copy 0.
// The head of a burst has call_index 1, the rest call_index 2. Each call gets
// its own loop_id.
absl::StatusOr<std::vector<PlannedCall>> PlanBurst(const CampaignConfig& config);

// Dispatches on config.mode.
absl::StatusOr<std::vector<PlannedCall>> Plan(const CampaignConfig& config);

struct CampaignSummary {
  int64_t calls_made = 0;  // ok calls
  int64_t errors = 0;
  absl::Duration wall_time;
};

struct RunOptions {
  // Called after every completed loop with (loops done, loops planned).
  std::function<void(int64_t, int64_t, const CampaignSummary&)> progress;
};

// Runs an already computed plan (config supplies function metadata).
absl::StatusOr<CampaignSummary> ExecutePlan(const CampaignConfig& config,
                                            const std::vector<PlannedCall>& plan,
                                            InvocationTarget& target,
                                            Clock& clock, RecordSink& sink,
                                            const RunOptions& options = {});

// Validates, probes the target, plans and executes. With a virtual clock the campaign runs in one thread in
// plan order and is deterministic; with a real clock each copy runs on its
// own thread. Failed calls are recorded with status=error and never abort the
// campaign; only a failed probe does.
absl::StatusOr<CampaignSummary> RunCampaign(const CampaignConfig& config,
                                            InvocationTarget& target,
                                            Clock& clock, RecordSink& sink,
                                            const RunOptions& options = {});

}  // namespace variability

#endif  // VARIABILITY_SCHEDULER_H_
