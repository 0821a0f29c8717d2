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

#include "variability/simulator.h"

#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace variability {

WeeklyProfile WeeklyProfile::Constant(double v) {
  WeeklyProfile p;
  p.values.fill(v);
  return p;
}

double ProfileValue(const WeeklyProfile& profile, absl::Time t,
                    absl::TimeZone tz) {
  const double h = FractionalHourOfWeek(t, tz);
  const int i = static_cast<int>(std::floor(h)) % kHoursPerWeek;
  if (profile.interpolation == Interpolation::kStep) return profile.values[i];
  const double f = h - std::floor(h);
  const double next = profile.values[(i + 1) % kHoursPerWeek];
  return profile.values[i] * (1.0 - f) + next * f;
}

absl::Status ValidateScenario(const SimScenario& s) {
  if (!LoadZone(s.timezone).ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("scenario timezone '", s.timezone, "' is unknown"));
  }
  if (s.tiers.empty()) return absl::InvalidArgumentError("no tiers configured");
  for (const auto& [mb, ms] : s.tiers) {
    if (mb <= 0 || !(ms > 0) || !std::isfinite(ms)) {
      return absl::InvalidArgumentError(
          absl::StrCat("tier ", mb, " needs a positive base duration"));
    }
  }
  for (double v : s.diurnal_profile.values) {
    if (!std::isfinite(v) || !(v > 0)) {
      return absl::InvalidArgumentError("diurnal profile must be finite and > 0");
    }
  }
  for (double v : s.eviction_profile.values) {
    if (!std::isfinite(v) || v < 0 || v > 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("eviction probability ", v, " outside [0, 1]"));
    }
  }
  if (!(s.keep_alive_s > 0)) {
    return absl::InvalidArgumentError("keep_alive_s must be > 0");
  }
  if (!(s.cold_multiplier_mean >= 1) || !(s.cold_multiplier_sd >= 0)) {
    return absl::InvalidArgumentError(
        "cold multiplier needs mean >= 1 and sd >= 0");
  }
  if (!(s.noise_cv >= 0) || !std::isfinite(s.noise_cv)) {
    return absl::InvalidArgumentError("noise_cv must be >= 0");
  }
  for (const auto& [mb, mix] : s.mid_tier_mixing) {
    if (mix.backing_tiers.empty() ||
        mix.backing_tiers.size() != mix.weights.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("mixing for ", mb, " needs one weight per backing tier"));
    }
    double sum = 0;
    for (std::size_t i = 0; i < mix.weights.size(); ++i) {
      if (!(mix.weights[i] >= 0)) {
        return absl::InvalidArgumentError("mixing weights must be >= 0");
      }
      if (!s.tiers.contains(mix.backing_tiers[i])) {
        return absl::InvalidArgumentError(absl::StrCat(
            "backing tier ", mix.backing_tiers[i], " has no base duration"));
      }
      sum += mix.weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      return absl::InvalidArgumentError(
          absl::StrCat("mixing weights for ", mb, " sum to ", sum));
    }
  }
  for (const TrendStep& step : s.trend_steps) {
    if (!(step.factor > 0)) {
      return absl::InvalidArgumentError("trend step factors must be > 0");
    }
  }
  for (const OutlierEvent& ev : s.outlier_events) {
    if (!(ev.factor > 0) || !(ev.duration_h > 0)) {
      return absl::InvalidArgumentError(
          "outlier events need positive factor and duration");
    }
  }
  return absl::OkStatus();
}

double TrendFactor(const SimScenario& s, absl::Time t) {
  double f = 1.0;
  for (const TrendStep& step : s.trend_steps) {
    if (step.time <= t) f *= step.factor;
  }
  return f;
}

double OutlierFactor(const SimScenario& s, absl::Time t) {
  double f = 1.0;
  for (const OutlierEvent& ev : s.outlier_events) {
    if (ev.time <= t && t < ev.time + absl::Hours(ev.duration_h)) f *= ev.factor;
  }
  return f;
}

absl::StatusOr<int> AssignBackingTier(const SimScenario& s, int memory_mb,
                                      std::mt19937_64& rng) {
  if (auto it = s.mid_tier_mixing.find(memory_mb);
      it != s.mid_tier_mixing.end()) {
    std::discrete_distribution<std::size_t> pick(it->second.weights.begin(),
                                                 it->second.weights.end());
    return it->second.backing_tiers[pick(rng)];
  }
  if (s.tiers.contains(memory_mb)) return memory_mb;
  return absl::InvalidArgumentError(
      absl::StrCat("memory tier ", memory_mb, " is not configured"));
}

namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t Fnv1a(absl::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string KeyString(const FunctionKey& key) {
  return absl::StrCat(key.name, "/", key.memory_mb);
}

}  // namespace

absl::StatusOr<std::unique_ptr<Simulator>> Simulator::Create(
    SimScenario scenario) {
  if (auto s = ValidateScenario(scenario); !s.ok()) return s;
  auto tz = LoadZone(scenario.timezone);
  if (!tz.ok()) return tz.status();
  return std::unique_ptr<Simulator>(new Simulator(std::move(scenario), *tz));
}

Simulator::KeyState& Simulator::StateFor(const FunctionKey& key) {
  const std::string k = KeyString(key);
  std::lock_guard<std::mutex> lock(map_mu_);
  auto& slot = states_[k];
  if (!slot) {
    slot = std::make_unique<KeyState>();
    slot->rng.seed(SplitMix64(scenario_.seed ^ Fnv1a(k)));
  }
  return *slot;
}

double Simulator::WarmDuration(int backing_tier, absl::Time t, KeyState& st) {
  double noise = 1.0;
  if (scenario_.noise_cv > 0) {
    std::normal_distribution<double> dist(1.0, scenario_.noise_cv);
    do {
      noise = dist(st.rng);
    } while (noise <= 0);
  }
  return scenario_.tiers.at(backing_tier) *
         ProfileValue(scenario_.diurnal_profile, t, tz_) *
         TrendFactor(scenario_, t) * OutlierFactor(scenario_, t) * noise;
}

absl::StatusOr<InvocationOutcome> Simulator::Invoke(const FunctionKey& key,
                                                    int call_index,
                                                    absl::Time t) {
  if (!scenario_.tiers.contains(key.memory_mb) &&
      !scenario_.mid_tier_mixing.contains(key.memory_mb)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "function ", key.name, " uses unconfigured tier ", key.memory_mb));
  }
  if (call_index != 1 && call_index != 2) {
    return absl::InvalidArgumentError("call_index must be 1 or 2");
  }
  KeyState& st = StateFor(key);
  std::lock_guard<std::mutex> lock(st.mu);

  bool live = st.has_instance &&
              t - st.idle_since < absl::Seconds(scenario_.keep_alive_s);
  if (live && call_index == 2) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(st.rng) < ProfileValue(scenario_.eviction_profile, t, tz_)) {
      live = false;
    }
  }

  InvocationOutcome out;
  if (live) {
    out.cold = false;
    out.handler_duration_ms = WarmDuration(st.backing_tier, t, st);
  } else {
    auto tier = AssignBackingTier(scenario_, key.memory_mb, st.rng);
    if (!tier.ok()) return tier.status();
    st.has_instance = true;
    st.backing_tier = *tier;
    st.instance_id = absl::StrCat(key.name, "/i", ++st.instances_created);
    double multiplier = scenario_.cold_multiplier_mean;
    if (scenario_.cold_multiplier_sd > 0) {
      std::normal_distribution<double> dist(scenario_.cold_multiplier_mean,
                                            scenario_.cold_multiplier_sd);
      do {
        multiplier = dist(st.rng);
      } while (multiplier < 1.0);
    }
    out.cold = true;
    out.handler_duration_ms = WarmDuration(st.backing_tier, t, st) * multiplier;
  }
  out.instance_id = st.instance_id;
  out.billed_duration_ms = out.handler_duration_ms;
  st.idle_since = t + absl::Milliseconds(out.handler_duration_ms);
  return out;
}

int Simulator::LiveInstances(const FunctionKey& key, absl::Time t) {
  KeyState& st = StateFor(key);
  std::lock_guard<std::mutex> lock(st.mu);
  return st.has_instance &&
                 t - st.idle_since < absl::Seconds(scenario_.keep_alive_s)
             ? 1
             : 0;
}

}  // namespace variability
