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

#ifndef VARIABILITY_CLOCK_H_
#define VARIABILITY_CLOCK_H_

#include <mutex>

#include "absl/time/clock.h"
#include "absl/time/time.h"

namespace variability {

class Clock {
 public:
  virtual ~Clock() = default;
  virtual absl::Time Now() const = 0;
  virtual void SleepUntil(absl::Time t) = 0;
  // Virtual clocks only move when told; campaigns against them run in a
  // single deterministic thread.
  virtual bool is_virtual() const = 0;
};

class RealClock final : public Clock {
 public:
  absl::Time Now() const override { return absl::Now(); }
  void SleepUntil(absl::Time t) override {
    const absl::Duration d = t - absl::Now();
    if (d > absl::ZeroDuration()) absl::SleepFor(d);
  }
  bool is_virtual() const override { return false; }
};

// Jumps straight to the requested time. With acceleration > 0 it also paces
// itself against the wall clock at `acceleration` virtual seconds per real
// second.
class VirtualClock final : public Clock {
 public:
  explicit VirtualClock(absl::Time start, double acceleration = 0)
      : now_(start), acceleration_(acceleration),
        wall_origin_(absl::Now()), virtual_origin_(start) {}

  absl::Time Now() const override {
    std::lock_guard<std::mutex> lock(mu_);
    return now_;
  }
  void SleepUntil(absl::Time t) override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (t <= now_) return;
      now_ = t;
    }
    if (acceleration_ > 0) {
      const absl::Time wall =
          wall_origin_ + (t - virtual_origin_) / acceleration_;
      const absl::Duration d = wall - absl::Now();
      if (d > absl::ZeroDuration()) absl::SleepFor(d);
    }
  }
  void Advance(absl::Duration d) { SleepUntil(Now() + d); }
  bool is_virtual() const override { return true; }

 private:
  mutable std::mutex mu_;
  absl::Time now_;
  double acceleration_;
  absl::Time wall_origin_;
  absl::Time virtual_origin_;
};

}  // namespace variability

#endif  // VARIABILITY_CLOCK_H_
