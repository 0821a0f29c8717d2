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

#ifndef VARIABILITY_CONFIG_H_
#define VARIABILITY_CONFIG_H_

#include <filesystem>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "variability/scheduler.h"
#include "variability/simulator.h"

namespace variability {

// Campaign file: {"functions": [{"function_name", "workload", "memory_mb",
// "endpoint" | "endpoints"}], "mode", "measurement_interval_s", "cooldown_s",
// "burst_size", "burst_period_s", "duration" ("14d", "2h" or seconds),
// "timezone", "billing_quantum_ms", "start", "pair_gap_s", "timeout_s",
// "bearer_token", "run_id"}. Unknown keys are rejected.
absl::StatusOr<CampaignConfig> ParseCampaignConfig(absl::string_view json_text);
absl::StatusOr<CampaignConfig> LoadCampaignConfig(const std::filesystem::path& path);

// Scenario file, see data/gcf-default.json. Profiles are either
// {"interpolation", "values": [168 numbers]} or {"constant": x}.
absl::StatusOr<SimScenario> ParseScenario(absl::string_view json_text);
absl::StatusOr<SimScenario> LoadScenario(const std::filesystem::path& path);

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);

}  // namespace variability

#endif  // VARIABILITY_CONFIG_H_
