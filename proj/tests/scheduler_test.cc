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

#include "variability/scheduler.h"

#include <map>
#include <set>

#include "gtest/gtest.h"
#include "test_util.h"
#include "variability/record_io.h"
#include "variability/simulator.h"

namespace variability {
namespace {

using testing::At;

CampaignConfig OneFunction() {
  CampaignConfig c;
  c.functions = {{"float-128", Workload::kFloat, 128, "", {}}};
  c.start = At("2022-12-12T00:00:00+01:00");
  return c;
}

int CountCalls(const std::vector<PlannedCall>& plan, int call_index) {
  int n = 0;
  for (const PlannedCall& p : plan) n += p.call_index == call_index;
  return n;
}

TEST(CopiesNeeded, FortySecondCadence) {
  CampaignConfig c = OneFunction();
  EXPECT_EQ(CopiesNeeded(c), 30);
  c.measurement_interval_s = c.cooldown_s = 600;
  EXPECT_EQ(CopiesNeeded(c), 1);
  c.cooldown_s = 601;
  EXPECT_EQ(CopiesNeeded(c), 2);
}

TEST(PlanCampaign, OneHourIsNinetyPairs) {
  CampaignConfig c = OneFunction();
  c.duration = absl::Hours(1);
  auto plan = PlanCampaign(c);
  ASSERT_TRUE(plan.ok()) << plan.status();
  EXPECT_EQ(CountCalls(*plan, 1), 90);
  EXPECT_EQ(CountCalls(*plan, 2), 90);
}

TEST(PlanCampaign, SingleCopyRepeatsEveryInterval) {
  CampaignConfig c = OneFunction();
  c.measurement_interval_s = c.cooldown_s = 600;
  c.duration = absl::Hours(1);
  auto plan = *PlanCampaign(c);
  std::vector<absl::Time> starts;
  for (const PlannedCall& p : plan) {
    EXPECT_EQ(p.copy_index, 0);
    if (p.call_index == 1) starts.push_back(p.virtual_time);
  }
  ASSERT_EQ(starts.size(), 6u);
  for (std::size_t i = 1; i < starts.size(); ++i) {
    EXPECT_EQ(starts[i] - starts[i - 1], absl::Seconds(600));
  }
}

TEST(PlanCampaign, ProtocolInvariants) {
  CampaignConfig c = OneFunction();
  c.functions.push_back({"float-256", Workload::kFloat, 256, "", {}});
  c.functions.push_back({"matrix-512", Workload::kMatrix, 512, "", {}});
  c.duration = absl::Hours(6);
  auto plan = *PlanCampaign(c);
  std::set<std::pair<std::string, int>> seen;
  std::map<std::string, absl::Time> first;
  std::map<std::pair<int, int>, std::vector<absl::Time>> loop_starts;
  absl::Time prev = absl::InfinitePast();
  for (const PlannedCall& p : plan) {
    EXPECT_GE(p.virtual_time, prev);
    prev = p.virtual_time;
    EXPECT_TRUE(seen.insert({p.loop_id, p.call_index}).second) << p.loop_id;
    if (p.call_index == 1) {
      first[p.loop_id] = p.virtual_time;
      loop_starts[{p.function_index, p.copy_index}].push_back(p.virtual_time);
    } else {
      ASSERT_TRUE(first.contains(p.loop_id));
      EXPECT_GT(p.virtual_time, first[p.loop_id]);
      EXPECT_LT(p.virtual_time - first[p.loop_id], absl::Seconds(c.cooldown_s));
    }
  }
  EXPECT_EQ(loop_starts.size(), 3u * 30u);
  for (const auto& [lane, starts] : loop_starts) {
    for (std::size_t i = 1; i < starts.size(); ++i) {
      EXPECT_GE(starts[i] - starts[i - 1], absl::Seconds(c.cooldown_s));
    }
  }
}

TEST(PlanCampaign, ErrorsOnShortDurationAndBadConfig) {
  CampaignConfig c = OneFunction();
  c.duration = absl::Seconds(30);
  EXPECT_EQ(PlanCampaign(c).status().code(),
            absl::StatusCode::kFailedPrecondition);
  c = OneFunction();
  c.cooldown_s = 30;
  EXPECT_EQ(PlanCampaign(c).status().code(), absl::StatusCode::kInvalidArgument);
  c = OneFunction();
  c.functions[0].memory_mb = 100;
  EXPECT_FALSE(ValidateCampaign(c).ok());
  c = OneFunction();
  c.functions.push_back(c.functions[0]);
  EXPECT_FALSE(ValidateCampaign(c).ok());
}

TEST(PlanBurst, Counting) {
  CampaignConfig c = OneFunction();
  c.mode = CampaignMode::kBurst;
  c.duration = absl::Hours(24 * 5);
  auto plan = *PlanBurst(c);
  EXPECT_EQ(plan.size(), 6000u);
  EXPECT_EQ(CountCalls(plan, 1), 120);

  c.duration = absl::Hours(2);
  c.burst_size = 3;
  plan = *PlanBurst(c);
  ASSERT_EQ(plan.size(), 6u);
  EXPECT_EQ(CountCalls(plan, 1), 2);
  for (const PlannedCall& p : plan) EXPECT_EQ(p.copy_index, 0);

  c.burst_size = 1;
  plan = *PlanBurst(c);
  EXPECT_EQ(plan.size(), 2u);
  EXPECT_EQ(CountCalls(plan, 1), 2);

  c.duration = absl::Minutes(30);
  EXPECT_FALSE(PlanBurst(c).ok());
}

std::shared_ptr<Simulator> PlainSim(double eviction = 0) {
  SimScenario s;
  s.tiers = {{128, 106}, {256, 60}, {512, 25}};
  s.eviction_profile = WeeklyProfile::Constant(eviction);
  return std::shared_ptr<Simulator>(*Simulator::Create(s));
}

TEST(RunCampaign, FourteenVirtualDays) {
  CampaignConfig c = OneFunction();
  c.duration = absl::Hours(24 * 14);
  SimTarget target(PlainSim(), 1);
  VirtualClock clock(*c.start);
  MemoryRecordSink sink;
  const absl::Time wall = absl::Now();
  auto summary = RunCampaign(c, target, clock, sink);
  ASSERT_TRUE(summary.ok()) << summary.status();
  EXPECT_LT(absl::Now() - wall, absl::Minutes(1));
  EXPECT_EQ(summary->calls_made, 2 * 30240);
  EXPECT_EQ(summary->errors, 0);

  auto records = sink.TakeRecords();
  ASSERT_EQ(records.size(), 2u * 30240u);
  std::map<std::string, const InvocationRecord*> first;
  for (const auto& r : records) {
    if (r.call_index == 1) {
      first[r.loop_id] = &r;
      EXPECT_TRUE(r.cold) << r.loop_id;
    }
  }
  for (const auto& r : records) {
    if (r.call_index != 2) continue;
    const InvocationRecord* f = first.at(r.loop_id);
    // Call 2 is only issued once call 1 has answered.
    EXPECT_GE(r.timestamp_utc - f->timestamp_utc,
              absl::Milliseconds(f->handler_duration_ms));
    EXPECT_FALSE(r.cold);
  }
}

TEST(RunCampaign, VirtualRunIsDeterministic) {
  auto run = [] {
    CampaignConfig c = OneFunction();
    c.functions.push_back({"float-256", Workload::kFloat, 256, "", {}});
    c.duration = absl::Hours(12);
    SimTarget target(PlainSim(0.1), 1);
    VirtualClock clock(*c.start);
    MemoryRecordSink sink;
    EXPECT_TRUE(RunCampaign(c, target, clock, sink).ok());
    return sink.TakeRecords();
  };
  EXPECT_EQ(run(), run());
}

TEST(ExecutePlan, EmptyPlan) {
  CampaignConfig c = OneFunction();
  SimTarget target(PlainSim(), 1);
  VirtualClock clock(*c.start);
  MemoryRecordSink sink;
  auto summary = ExecutePlan(c, {}, target, clock, sink);
  ASSERT_TRUE(summary.ok());
  EXPECT_EQ(summary->calls_made, 0);
  EXPECT_EQ(summary->errors, 0);
  EXPECT_LT(summary->wall_time, absl::Seconds(1));
  EXPECT_EQ(sink.size(), 0u);
}

class AlwaysFails final : public InvocationTarget {
 public:
  TargetKind kind() const override { return TargetKind::kHttp; }
  absl::Status Probe() override { return probe_; }
  InvocationOutcome Invoke(const InvocationRequest&, Clock&) override {
    InvocationOutcome out;
    out.status = CallStatus::kError;
    out.error_detail = "boom";
    return out;
  }
  absl::Status probe_ = absl::OkStatus();
};

TEST(RunCampaign, FailingCallsAreRecordedNotFatal) {
  CampaignConfig c = OneFunction();
  c.duration = absl::Hours(1);
  AlwaysFails target;
  VirtualClock clock(*c.start);
  MemoryRecordSink sink;
  auto summary = RunCampaign(c, target, clock, sink);
  ASSERT_TRUE(summary.ok());
  EXPECT_EQ(summary->calls_made, 0);
  EXPECT_EQ(summary->errors, 180);
  for (const auto& r : sink.TakeRecords()) {
    EXPECT_EQ(r.status, CallStatus::kError);
    EXPECT_TRUE(ValidateRecord(r).ok());
  }
}

TEST(RunCampaign, ProbeFailureAborts) {
  CampaignConfig c = OneFunction();
  AlwaysFails target;
  target.probe_ = absl::UnavailableError("down");
  VirtualClock clock(*c.start);
  MemoryRecordSink sink;
  EXPECT_EQ(RunCampaign(c, target, clock, sink).status().code(),
            absl::StatusCode::kUnavailable);
  EXPECT_EQ(sink.size(), 0u);
}

TEST(RunCampaign, RealClockRunsCopiesConcurrently) {
  CampaignConfig c = OneFunction();
  c.start.reset();
  c.measurement_interval_s = 0.1;
  c.cooldown_s = 0.3;
  c.duration = absl::Seconds(1);
  SimTarget target(PlainSim(), 1);
  RealClock clock;
  MemoryRecordSink sink;
  auto summary = RunCampaign(c, target, clock, sink);
  ASSERT_TRUE(summary.ok()) << summary.status();
  EXPECT_EQ(summary->calls_made, 20);
  auto records = sink.TakeRecords();
  std::set<int> copies;
  for (const auto& r : records) copies.insert(r.copy_index);
  EXPECT_EQ(copies, (std::set<int>{0, 1, 2}));
}

TEST(RunCampaign, BurstExecution) {
  CampaignConfig c = OneFunction();
  c.mode = CampaignMode::kBurst;
  c.burst_size = 5;
  c.burst_period_s = 60;
  c.duration = absl::Minutes(5);
  SimTarget target(PlainSim(), 1);
  VirtualClock clock(*c.start);
  MemoryRecordSink sink;
  ASSERT_TRUE(RunCampaign(c, target, clock, sink).ok());
  auto records = sink.TakeRecords();
  ASSERT_EQ(records.size(), 25u);
  int cold = 0;
  for (const auto& r : records) cold += r.cold;
  // Bursts are 60 s apart, well within keep-alive: only the very first
  // call of the campaign starts an instance.
  EXPECT_EQ(cold, 1);
}

TEST(CopyEndpoint, TemplateAndList) {
  FunctionSpec fn{"f", Workload::kFloat, 128, "http://h/f-{copy}", {}};
  EXPECT_EQ(*CopyEndpoint(fn, 7), "http://h/f-7");
  EXPECT_EQ(CopyKey(fn, 7), "f#07");
  fn.endpoints = {"http://a", "http://b"};
  EXPECT_EQ(*CopyEndpoint(fn, 1), "http://b");
  EXPECT_FALSE(CopyEndpoint(fn, 2).ok());
  fn.endpoints.clear();
  fn.endpoint.clear();
  EXPECT_FALSE(CopyEndpoint(fn, 0).ok());
}

}  // namespace
}  // namespace variability
