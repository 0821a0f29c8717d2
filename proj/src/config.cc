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

#include "variability/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "variability/time_util.h"

namespace variability {

using nlohmann::json;

namespace {

absl::Status CheckKeys(const json& j, const std::set<std::string>& allowed,
                       absl::string_view where) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError(absl::StrCat(where, " must be an object"));
  }
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown key '", key, "' in ", where));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<FunctionSpec> ParseFunction(const json& j) {
  if (auto s = CheckKeys(j, {"function_name", "workload", "memory_mb",
                             "endpoint", "endpoints"},
                         "function");
      !s.ok()) {
    return s;
  }
  FunctionSpec fn;
  fn.function_name = j.at("function_name").get<std::string>();
  auto w = ParseWorkload(j.value("workload", std::string("float")));
  if (!w.ok()) return w.status();
  fn.workload = *w;
  fn.memory_mb = j.value("memory_mb", 128);
  fn.endpoint = j.value("endpoint", std::string());
  if (j.contains("endpoints")) {
    fn.endpoints = j.at("endpoints").get<std::vector<std::string>>();
  }
  return fn;
}

absl::StatusOr<absl::Duration> ParseDurationField(const json& j) {
  if (j.is_number()) return absl::Seconds(j.get<double>());
  return ParseSpan(j.get<std::string>());
}

absl::StatusOr<WeeklyProfile> ParseProfile(const json& j, absl::string_view what) {
  if (auto s = CheckKeys(j, {"interpolation", "values", "constant"}, what);
      !s.ok()) {
    return s;
  }
  WeeklyProfile p;
  if (j.contains("constant")) {
    p = WeeklyProfile::Constant(j.at("constant").get<double>());
  } else {
    const auto values = j.at("values").get<std::vector<double>>();
    if (values.size() != kHoursPerWeek) {
      return absl::InvalidArgumentError(absl::StrCat(
          what, " needs ", kHoursPerWeek, " values, got ", values.size()));
    }
    std::copy(values.begin(), values.end(), p.values.begin());
  }
  const std::string interp = j.value("interpolation", std::string("step"));
  if (interp == "step") {
    p.interpolation = Interpolation::kStep;
  } else if (interp == "linear") {
    p.interpolation = Interpolation::kLinear;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat(what, ": unknown interpolation '", interp, "'"));
  }
  return p;
}

absl::StatusOr<int> ParseTierKey(const std::string& key) {
  int mb = 0;
  if (!absl::SimpleAtoi(key, &mb)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tier key '", key, "' is not an integer"));
  }
  return mb;
}

absl::StatusOr<absl::Time> ParseTimeField(const json& j) {
  return ParseTimestamp(j.get<std::string>());
}

}  // namespace

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot read ", path.string()));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::StatusOr<CampaignConfig> ParseCampaignConfig(absl::string_view text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError("campaign config is not valid JSON");
  }
  if (auto s = CheckKeys(
          j,
          {"functions", "mode", "measurement_interval_s", "cooldown_s",
           "burst_size", "burst_period_s", "duration", "timezone",
           "billing_quantum_ms", "start", "pair_gap_s", "timeout_s",
           "bearer_token", "run_id"},
          "campaign config");
      !s.ok()) {
    return s;
  }
  CampaignConfig c;
  try {
    for (const json& f : j.at("functions")) {
      auto fn = ParseFunction(f);
      if (!fn.ok()) return fn.status();
      c.functions.push_back(*std::move(fn));
    }
    const std::string mode = j.value("mode", std::string("pair_loop"));
    if (mode == "pair_loop") {
      c.mode = CampaignMode::kPairLoop;
    } else if (mode == "burst") {
      c.mode = CampaignMode::kBurst;
    } else {
      return absl::InvalidArgumentError(absl::StrCat("unknown mode '", mode, "'"));
    }
    c.measurement_interval_s =
        j.value("measurement_interval_s", c.measurement_interval_s);
    c.cooldown_s = j.value("cooldown_s", c.cooldown_s);
    c.burst_size = j.value("burst_size", c.burst_size);
    c.burst_period_s = j.value("burst_period_s", c.burst_period_s);
    if (j.contains("duration")) {
      auto d = ParseDurationField(j.at("duration"));
      if (!d.ok()) return d.status();
      c.duration = *d;
    }
    c.timezone = j.value("timezone", c.timezone);
    c.billing_quantum_ms = j.value("billing_quantum_ms", c.billing_quantum_ms);
    if (j.contains("start")) {
      auto t = ParseTimeField(j.at("start"));
      if (!t.ok()) return t.status();
      c.start = *t;
    }
    c.pair_gap_s = j.value("pair_gap_s", c.pair_gap_s);
    c.timeout_s = j.value("timeout_s", c.timeout_s);
    if (j.contains("bearer_token")) {
      c.bearer_token = j.at("bearer_token").get<std::string>();
    }
    c.run_id = j.value("run_id", c.run_id);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("campaign config: ", e.what()));
  }
  if (auto s = ValidateCampaign(c); !s.ok()) return s;
  return c;
}

absl::StatusOr<CampaignConfig> LoadCampaignConfig(
    const std::filesystem::path& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseCampaignConfig(*text);
}

absl::StatusOr<SimScenario> ParseScenario(absl::string_view text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError("scenario is not valid JSON");
  }
  if (auto s = CheckKeys(
          j,
          {"seed", "timezone", "tiers", "diurnal_profile", "eviction_profile",
           "keep_alive_s", "cold_multiplier_mean", "cold_multiplier_sd",
           "mid_tier_mixing", "trend_steps", "outlier_events", "noise_cv"},
          "scenario");
      !s.ok()) {
    return s;
  }
  SimScenario s;
  try {
    s.seed = j.value("seed", s.seed);
    s.timezone = j.value("timezone", s.timezone);
    for (const auto& [key, value] : j.at("tiers").items()) {
      auto mb = ParseTierKey(key);
      if (!mb.ok()) return mb.status();
      s.tiers[*mb] = value.get<double>();
    }
    if (j.contains("diurnal_profile")) {
      auto p = ParseProfile(j.at("diurnal_profile"), "diurnal_profile");
      if (!p.ok()) return p.status();
      s.diurnal_profile = *p;
    }
    if (j.contains("eviction_profile")) {
      auto p = ParseProfile(j.at("eviction_profile"), "eviction_profile");
      if (!p.ok()) return p.status();
      s.eviction_profile = *p;
    }
    s.keep_alive_s = j.value("keep_alive_s", s.keep_alive_s);
    s.cold_multiplier_mean = j.value("cold_multiplier_mean", s.cold_multiplier_mean);
    s.cold_multiplier_sd = j.value("cold_multiplier_sd", s.cold_multiplier_sd);
    if (j.contains("mid_tier_mixing")) {
      for (const auto& [key, value] : j.at("mid_tier_mixing").items()) {
        auto mb = ParseTierKey(key);
        if (!mb.ok()) return mb.status();
        if (auto st = CheckKeys(value, {"backing_tiers", "weights"},
                                "mid_tier_mixing entry");
            !st.ok()) {
          return st;
        }
        s.mid_tier_mixing[*mb] = {
            value.at("backing_tiers").get<std::vector<int>>(),
            value.at("weights").get<std::vector<double>>()};
      }
    }
    for (const json& step : j.value("trend_steps", json::array())) {
      auto t = ParseTimeField(step.at("time"));
      if (!t.ok()) return t.status();
      s.trend_steps.push_back({*t, step.at("factor").get<double>()});
    }
    for (const json& ev : j.value("outlier_events", json::array())) {
      auto t = ParseTimeField(ev.at("time"));
      if (!t.ok()) return t.status();
      s.outlier_events.push_back(
          {*t, ev.value("duration_h", 1.0), ev.at("factor").get<double>()});
    }
    s.noise_cv = j.value("noise_cv", s.noise_cv);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("scenario: ", e.what()));
  }
  if (auto st = ValidateScenario(s); !st.ok()) return st;
  return s;
}

absl::StatusOr<SimScenario> LoadScenario(const std::filesystem::path& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseScenario(*text);
}

}  // namespace variability
