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

#ifndef VARIABILITY_COMMANDS_H_
#define VARIABILITY_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "variability/report.h"

namespace variability {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Campaign against live HTTP endpoints in real time. Appends to records_out
// and writes "<records_out>.provenance.json".
int CmdRun(const std::filesystem::path& config_path,
           const std::filesystem::path& records_out);

// Same campaign against the simulator on a virtual clock. records_out is
// replaced. acceleration 0 runs flat out, otherwise virtual seconds per wall
// second. `seed` overrides the scenario seed.
int CmdSimulate(const std::filesystem::path& config_path,
                const std::filesystem::path& scenario_path,
                const std::filesystem::path& records_out, double acceleration,
                std::optional<uint64_t> seed = std::nullopt);

// Loads records, writes the report bundle to out_dir. A missing STL section
// is a partial success (exit 0).
int CmdAnalyze(const std::filesystem::path& records_path,
               const std::string& timezone,
               const std::filesystem::path& out_dir,
               AnalyzeOptions options = {});

std::filesystem::path ProvenancePath(const std::filesystem::path& records);

}  // namespace variability

#endif  // VARIABILITY_COMMANDS_H_
