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

#ifndef VARIABILITY_SIMULATOR_H_
#define VARIABILITY_SIMULATOR_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "variability/target.h"
#include "variability/time_util.h"

namespace variability {

enum class Interpolation { kStep, kLinear };

// One value per local hour of the week, Monday 00:00 first.
struct WeeklyProfile {
  std::array<double, kHoursPerWeek> values{};
  Interpolation interpolation = Interpolation::kStep;

  static WeeklyProfile Constant(double v);
};

double ProfileValue(const WeeklyProfile& profile, absl::Time t,
                    absl::TimeZone tz);

struct TierMixing {
  std::vector<int> backing_tiers;
  std::vector<double> weights;
};

struct TrendStep {
  absl::Time time;
  double factor = 1.0;
};

struct OutlierEvent {
  absl::Time time;
  double duration_h = 1.0;
  double factor = 1.0;
};

struct SimScenario {
  uint64_t seed = 1;
  std::string timezone = "CET";
  std::map<int, double> tiers;  // memory_mb -> warm duration in ms
  WeeklyProfile diurnal_profile = WeeklyProfile::Constant(1.0);
  WeeklyProfile eviction_profile = WeeklyProfile::Constant(0.0);
  double keep_alive_s = 900;
  double cold_multiplier_mean = 9.5;
  double cold_multiplier_sd = 1.0;
  std::map<int, TierMixing> mid_tier_mixing;
  std::vector<TrendStep> trend_steps;
  std::vector<OutlierEvent> outlier_events;
  double noise_cv = 0.05;
};

absl::Status ValidateScenario(const SimScenario& scenario);

// Product of all step factors at or before t.
double TrendFactor(const SimScenario& scenario, absl::Time t);
// Product of the factors of all outlier windows covering t.
double OutlierFactor(const SimScenario& scenario, absl::Time t);

// Draws the container size that serves a new instance of `memory_mb`.
absl::StatusOr<int> AssignBackingTier(const SimScenario& scenario,
                                      int memory_mb, std::mt19937_64& rng);

struct FunctionKey {
  std::string name;
  int memory_mb = 128;
};

// Seedable platform model. State is partitioned per function key: each key
// owns its RNG stream and at most one instance, and calls on one key are
// serialized. Replaying the same call sequence on the same seed reproduces
// the outcome stream bit for bit.
class Simulator {
 public:
  static absl::StatusOr<std::unique_ptr<Simulator>> Create(SimScenario scenario);

  absl::StatusOr<InvocationOutcome> Invoke(const FunctionKey& key,
                                           int call_index, absl::Time t);

  const SimScenario& scenario() const { return scenario_; }
  absl::TimeZone zone() const { return tz_; }

  // Number of live instances for a key at time t (0 or 1).
  int LiveInstances(const FunctionKey& key, absl::Time t);

 private:
  struct KeyState {
    std::mutex mu;
    std::mt19937_64 rng;
    bool has_instance = false;
    std::string instance_id;
    int backing_tier = 0;
    absl::Time idle_since;
    uint64_t instances_created = 0;
  };

  Simulator(SimScenario scenario, absl::TimeZone tz)
      : scenario_(std::move(scenario)), tz_(tz) {}
  KeyState& StateFor(const FunctionKey& key);
  double WarmDuration(int backing_tier, absl::Time t, KeyState& state);

  SimScenario scenario_;
  absl::TimeZone tz_;
  std::mutex map_mu_;
  std::map<std::string, std::unique_ptr<KeyState>> states_;
};

}  // namespace variability

#endif  // VARIABILITY_SIMULATOR_H_
