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

#include "variability/commands.h"

#include <fstream>
#include <map>
#include <memory>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "spdlog/spdlog.h"
#include "variability/clock.h"
#include "variability/config.h"
#include "variability/record_io.h"
#include "variability/scheduler.h"
#include "variability/simulator.h"
#include "variability/target.h"

namespace variability {

using ordered_json = nlohmann::ordered_json;

namespace {

struct LoadedConfig {
  CampaignConfig config;
  std::string text;
};

absl::StatusOr<LoadedConfig> LoadConfig(const std::filesystem::path& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  auto config = ParseCampaignConfig(*text);
  if (!config.ok()) return config.status();
  return LoadedConfig{*std::move(config), *std::move(text)};
}

absl::Status WriteProvenance(const std::filesystem::path& records,
                             const std::string& config_hash,
                             std::optional<uint64_t> seed, double cooldown_s) {
  ordered_json j;
  j["config_hash"] = config_hash;
  j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
  j["cooldown_s"] = cooldown_s;
  j["tool_version"] = kToolVersion;
  std::ofstream out(ProvenancePath(records), std::ios::binary | std::ios::trunc);
  out << j.dump(2) << "\n";
  if (!out) {
    return absl::DataLossError(absl::StrCat(
        "cannot write ", ProvenancePath(records).string()));
  }
  return absl::OkStatus();
}

RunOptions ProgressLogger(const char* what) {
  RunOptions options;
  auto last = std::make_shared<int64_t>(-1);
  options.progress = [what, last](int64_t done, int64_t planned,
                                  const CampaignSummary& s) {
    // Roughly every 5% of the plan, plus the final loop.
    const int64_t step = std::max<int64_t>(1, planned / 20);
    if (done / step == *last && done != planned) return;
    *last = done / step;
    spdlog::info("{}: {}/{} loops, {} ok calls, {} errors", what, done, planned,
                 s.calls_made, s.errors);
  };
  return options;
}

int Finish(const absl::StatusOr<CampaignSummary>& summary) {
  if (!summary.ok()) {
    spdlog::error("{}", summary.status().ToString());
    return kExitFailure;
  }
  spdlog::info("done: {} ok calls, {} errors in {}", summary->calls_made,
               summary->errors, absl::FormatDuration(summary->wall_time));
  return kExitOk;
}

}  // namespace

std::filesystem::path ProvenancePath(const std::filesystem::path& records) {
  return std::filesystem::path(records.string() + ".provenance.json");
}

int CmdRun(const std::filesystem::path& config_path,
           const std::filesystem::path& records_out) {
  auto loaded = LoadConfig(config_path);
  if (!loaded.ok()) {
    spdlog::error("{}", loaded.status().ToString());
    return kExitUsage;
  }
  const CampaignConfig& config = loaded->config;
  std::map<std::string, std::string> endpoints;
  const int copies = config.mode == CampaignMode::kBurst ? 1 : CopiesNeeded(config);
  for (const FunctionSpec& fn : config.functions) {
    for (int k = 0; k < copies; ++k) {
      auto url = CopyEndpoint(fn, k);
      if (!url.ok()) {
        spdlog::error("{}", url.status().ToString());
        return kExitUsage;
      }
      endpoints[CopyKey(fn, k)] = *url;
    }
  }
  HttpTargetOptions target_options;
  target_options.billing_quantum_ms = config.billing_quantum_ms;
  target_options.timeout = absl::Seconds(config.timeout_s);
  target_options.bearer_token = config.bearer_token;
  HttpTarget target(std::move(endpoints), target_options);
  RealClock clock;
  JsonlRecordSink sink(records_out);
  if (auto s = WriteProvenance(records_out, Fnv1aHex(loaded->text),
                               std::nullopt, config.cooldown_s);
      !s.ok()) {
    spdlog::error("{}", s.ToString());
    return kExitFailure;
  }
  return Finish(
      RunCampaign(config, target, clock, sink, ProgressLogger("run")));
}

int CmdSimulate(const std::filesystem::path& config_path,
                const std::filesystem::path& scenario_path,
                const std::filesystem::path& records_out, double acceleration,
                std::optional<uint64_t> seed) {
  auto loaded = LoadConfig(config_path);
  if (!loaded.ok()) {
    spdlog::error("{}", loaded.status().ToString());
    return kExitUsage;
  }
  CampaignConfig& config = loaded->config;
  if (!config.start) {
    spdlog::error("simulation needs a fixed \"start\" in the campaign config");
    return kExitUsage;
  }
  if (!(acceleration >= 0)) {
    spdlog::error("acceleration must be >= 0");
    return kExitUsage;
  }
  auto scenario_text = ReadFile(scenario_path);
  if (!scenario_text.ok()) {
    spdlog::error("{}", scenario_text.status().ToString());
    return kExitUsage;
  }
  auto scenario = ParseScenario(*scenario_text);
  if (!scenario.ok()) {
    spdlog::error("{}", scenario.status().ToString());
    return kExitUsage;
  }
  if (seed) scenario->seed = *seed;
  const uint64_t used_seed = scenario->seed;
  auto sim = Simulator::Create(*std::move(scenario));
  if (!sim.ok()) {
    spdlog::error("{}", sim.status().ToString());
    return kExitUsage;
  }
  SimTarget target(std::shared_ptr<Simulator>(*std::move(sim)),
                   config.billing_quantum_ms);
  VirtualClock clock(*config.start, acceleration);

  // A simulation is a complete, reproducible artifact; never append to an
  // older one.
  std::error_code ec;
  std::filesystem::remove(records_out, ec);
  JsonlRecordSink sink(records_out);
  if (auto s = WriteProvenance(
          records_out, Fnv1aHex(absl::StrCat(loaded->text, *scenario_text)),
          used_seed, config.cooldown_s);
      !s.ok()) {
    spdlog::error("{}", s.ToString());
    return kExitFailure;
  }
  return Finish(
      RunCampaign(config, target, clock, sink, ProgressLogger("simulate")));
}

int CmdAnalyze(const std::filesystem::path& records_path,
               const std::string& timezone,
               const std::filesystem::path& out_dir, AnalyzeOptions options) {
  options.timezone = timezone;
  if (!LoadZone(timezone).ok()) {
    spdlog::error("unknown timezone '{}'", timezone);
    return kExitUsage;
  }
  auto records = LoadRecords(records_path);
  if (!records.ok()) {
    spdlog::error("{}", records.status().ToString());
    return kExitFailure;
  }
  if (records->empty()) {
    spdlog::error("no records in {}", records_path.string());
    return kExitFailure;
  }

  Provenance provenance;
  if (auto text = ReadFile(ProvenancePath(records_path)); text.ok()) {
    const auto j = nlohmann::json::parse(*text, nullptr, false);
    if (j.is_object()) {
      if (j.contains("config_hash") && j["config_hash"].is_string()) {
        provenance.config_hash = j["config_hash"].get<std::string>();
      }
      if (j.contains("seed") && j["seed"].is_number_unsigned()) {
        provenance.seed = j["seed"].get<uint64_t>();
      }
      if (j.contains("cooldown_s") && j["cooldown_s"].is_number()) {
        options.classify.cooldown_s = j["cooldown_s"].get<double>();
      }
    } else {
      spdlog::warn("ignoring unreadable {}",
                   ProvenancePath(records_path).string());
    }
  } else {
    spdlog::warn("no provenance file next to {}; hash and seed unknown",
                 records_path.string());
  }

  auto bundle = Analyze(*records, options, provenance);
  if (!bundle.ok()) {
    spdlog::error("{}", bundle.status().ToString());
    return kExitFailure;
  }
  if (auto s = WriteBundle(*bundle, out_dir); !s.ok()) {
    spdlog::error("{}", s.ToString());
    return kExitFailure;
  }
  spdlog::info("wrote {} tables and summary.json to {}", bundle->tables.size(),
               out_dir.string());
  return kExitOk;
}

}  // namespace variability
