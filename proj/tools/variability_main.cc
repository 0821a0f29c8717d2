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

// Command-line entry point: variability run | simulate | analyze.

#include <cstdlib>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"
#include "variability/commands.h"

namespace {

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("variability");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%Y-%m-%dT%H:%M:%S.%e %^%l%$ %v");
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("VARIABILITY_LOG"); env && *env) {
    level = spdlog::level::from_str(env);
    // from_str maps unknown names to "off"; that silently hides errors.
    if (level == spdlog::level::off && std::string(env) != "off") {
      level = spdlog::level::info;
      spdlog::warn("unknown VARIABILITY_LOG '{}', using info", env);
    }
  }
  spdlog::set_level(level);
}

}  // namespace

int main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Serverless performance variability toolkit"};
  app.require_subcommand(1);

  std::string config, scenario, records, out, tz = "CET";
  std::optional<uint64_t> seed;
  double accel = 0;
  variability::AnalyzeOptions analyze_options;
  int min_segment = 0;
  std::optional<double> penalty;

  auto* run = app.add_subcommand("run", "Run a campaign against HTTP endpoints");
  run->add_option("--config", config, "Campaign config (JSON)")
      ->required()->check(CLI::ExistingFile);
  run->add_option("--records", records, "JSONL output (appended)")->required();

  auto* simulate =
      app.add_subcommand("simulate", "Run a campaign against the simulator");
  simulate->add_option("--config", config, "Campaign config (JSON)")
      ->required()->check(CLI::ExistingFile);
  simulate->add_option("--scenario", scenario, "Simulator scenario (JSON)")
      ->required()->check(CLI::ExistingFile);
  simulate->add_option("--records", records, "JSONL output (replaced)")
      ->required();
  simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--accel", accel,
                       "Virtual seconds per wall second; 0 = unpaced")
      ->check(CLI::NonNegativeNumber);

  auto* analyze = app.add_subcommand("analyze", "Build the report bundle");
  analyze->add_option("--records", records, "JSONL input")->required();
  analyze->add_option("--tz", tz, "IANA timezone for local-time buckets");
  analyze->add_option("--out", out, "Output directory")->required();
  analyze->add_option("--outlier-k", analyze_options.outliers.k,
                      "Outlier threshold in IQRs")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--outliers-over-raw",
                    analyze_options.outliers_over_raw_durations,
                    "Quartiles from raw warm durations, not hourly means");
  analyze->add_option("--cp-penalty", penalty, "Change-point penalty")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--cp-min-segment", min_segment,
                      "Shortest trend segment in hours")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return variability::kExitUsage;
  }

  if (*run) return variability::CmdRun(config, records);
  if (*simulate) {
    return variability::CmdSimulate(config, scenario, records, accel, seed);
  }
  if (penalty) analyze_options.change_points.penalty = penalty;
  if (min_segment > 0) analyze_options.change_points.min_segment = min_segment;
  return variability::CmdAnalyze(records, tz, out, analyze_options);
}
