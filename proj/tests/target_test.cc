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

#include "variability/target.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "json.hpp"
#include "stub_workload.h"
#include "test_util.h"
#include "variability/simulator.h"

namespace variability {
namespace {

TEST(QuantizeBilled, Examples) {
  EXPECT_EQ(*QuantizeBilled(101, 100), 200);
  EXPECT_EQ(*QuantizeBilled(100, 100), 100);
  EXPECT_EQ(*QuantizeBilled(0.4, 1), 1);
  EXPECT_EQ(*QuantizeBilled(0, 1), 0);
  EXPECT_EQ(*QuantizeBilled(113.9, 1), 114);
  EXPECT_EQ(QuantizeBilled(-1, 1).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(QuantizeBilled(1, 0).ok());
}

TEST(QuantizeBilled, MonotoneIdempotentAndOnTheGrid) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> raw(0, 2000);
  for (double q : {0.1, 1.0, 7.0, 100.0}) {
    for (int i = 0; i < 2000; ++i) {
      const double a = raw(rng), b = raw(rng);
      const double qa = *QuantizeBilled(a, q), qb = *QuantizeBilled(b, q);
      if (a <= b) EXPECT_LE(qa, qb);
      EXPECT_GE(qa + 1e-9 * q, a);
      EXPECT_NEAR(std::round(qa / q), qa / q, 1e-9);
      EXPECT_EQ(*QuantizeBilled(qa, q), qa);
    }
  }
}

TEST(SimTarget, FreshKeyIsColdAndBilledIsQuantized) {
  SimScenario s;
  s.tiers = {{128, 106.3}};
  auto sim = std::shared_ptr<Simulator>(*Simulator::Create(s));
  SimTarget target(sim, 100);
  VirtualClock clock(testing::At("2023-01-10T10:00:00Z"));
  InvocationOutcome out = target.Invoke({"f#00", 128, "run", "l", 1}, clock);
  EXPECT_EQ(out.status, CallStatus::kOk);
  EXPECT_TRUE(out.cold);
  EXPECT_EQ(std::fmod(out.billed_duration_ms, 100.0), 0.0);
  EXPECT_GE(out.billed_duration_ms, out.handler_duration_ms);
}

TEST(ParseWorkloadResponse, SchemaChecks) {
  auto ok = ParseWorkloadResponse(
      R"({"instance_id":"a","cold":true,"handler_duration_ms":113.9,)"
      R"("workload":"matrix","result_digest":"x"})",
      1);
  ASSERT_TRUE(ok.ok()) << ok.status();
  EXPECT_EQ(ok->billed_duration_ms, 114);
  EXPECT_EQ(ok->instance_id, "a");
  EXPECT_FALSE(ParseWorkloadResponse("[]", 1).ok());
  EXPECT_FALSE(ParseWorkloadResponse(
                   R"({"instance_id":"a","cold":"yes","handler_duration_ms":1,)"
                   R"("workload":"float","result_digest":"x"})",
                   1)
                   .ok());
  EXPECT_FALSE(ParseWorkloadResponse(
                   R"({"instance_id":"a","cold":true,"handler_duration_ms":1,)"
                   R"("workload":"ml","result_digest":"x"})",
                   1)
                   .ok());
  EXPECT_FALSE(ParseWorkloadResponse(
                   R"({"instance_id":"a","cold":true,"handler_duration_ms":-3,)"
                   R"("workload":"float","result_digest":"x"})",
                   1)
                   .ok());
}

TEST(HttpTarget, PostsContractAndQuantizes) {
  testing::StubWorkload stub;
  HttpTargetOptions options;
  options.bearer_token = "s3cret";
  HttpTarget target({{"f#00", stub.Url(0)}}, options);
  ASSERT_TRUE(target.Probe().ok());
  RealClock clock;
  InvocationOutcome first =
      target.Invoke({"f#00", 128, "run-1", "f-c00-l000000", 1}, clock);
  ASSERT_EQ(first.status, CallStatus::kOk) << first.error_detail.value_or("");
  EXPECT_TRUE(first.cold);
  EXPECT_EQ(first.billed_duration_ms, 114);
  EXPECT_DOUBLE_EQ(first.handler_duration_ms, 113.9);
  InvocationOutcome second =
      target.Invoke({"f#00", 128, "run-1", "f-c00-l000000", 2}, clock);
  EXPECT_FALSE(second.cold);
  EXPECT_EQ(second.instance_id, first.instance_id);

  const auto requests = stub.requests();
  ASSERT_EQ(requests.size(), 2u);
  const auto body = nlohmann::json::parse(requests[1]);
  EXPECT_EQ(body, nlohmann::json({{"run_id", "run-1"},
                                  {"loop_id", "f-c00-l000000"},
                                  {"call_index", 2}}));
  EXPECT_EQ(stub.auth_headers()[0], "Bearer s3cret");
}

TEST(HttpTarget, FailuresBecomeErrorOutcomes) {
  testing::StubWorkload stub;
  HttpTargetOptions options;
  options.timeout = absl::Milliseconds(300);
  HttpTarget target({{"f#00", stub.Url(0)}}, options);
  RealClock clock;

  stub.set_status(500);
  InvocationOutcome out = target.Invoke({"f#00", 128, "r", "l", 1}, clock);
  EXPECT_EQ(out.status, CallStatus::kError);
  EXPECT_TRUE(out.error_detail.has_value());

  stub.set_status(200);
  stub.set_malformed(true);
  out = target.Invoke({"f#00", 128, "r", "l", 1}, clock);
  EXPECT_EQ(out.status, CallStatus::kError);

  stub.set_malformed(false);
  stub.set_delay_ms(1500);
  out = target.Invoke({"f#00", 128, "r", "l", 1}, clock);
  EXPECT_EQ(out.status, CallStatus::kError);

  out = target.Invoke({"unknown#00", 128, "r", "l", 1}, clock);
  EXPECT_EQ(out.status, CallStatus::kError);
}

TEST(HttpTarget, UnreachableHost) {
  HttpTargetOptions options;
  options.timeout = absl::Seconds(2);
  HttpTarget target({{"f#00", "http://127.0.0.1:1/fn/0"}}, options);
  EXPECT_EQ(target.Probe().code(), absl::StatusCode::kUnavailable);
  RealClock clock;
  InvocationOutcome out = target.Invoke({"f#00", 128, "r", "l", 1}, clock);
  EXPECT_EQ(out.status, CallStatus::kError);
  EXPECT_TRUE(out.error_detail.has_value());
}

TEST(HttpTarget, EndpointWithoutScheme) {
  HttpTarget target({{"f#00", "localhost:8080/fn"}}, {});
  EXPECT_EQ(target.Probe().code(), absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace variability
