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

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <thread>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_replace.h"
#include "variability/time_util.h"

namespace variability {

absl::Status ValidateCampaign(const CampaignConfig& c) {
  if (c.functions.empty()) {
    return absl::InvalidArgumentError("campaign lists no functions");
  }
  std::set<std::string> names;
  for (const FunctionSpec& fn : c.functions) {
    if (fn.function_name.empty()) {
      return absl::InvalidArgumentError("function_name must be non-empty");
    }
    if (!names.insert(fn.function_name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate function_name '", fn.function_name, "'"));
    }
    if (fn.memory_mb <= 0 || fn.memory_mb % 128 != 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          fn.function_name, ": memory_mb must be a positive multiple of 128"));
    }
  }
  if (!(c.measurement_interval_s > 0) || !(c.cooldown_s > 0)) {
    return absl::InvalidArgumentError("interval and cooldown must be > 0");
  }
  if (c.mode == CampaignMode::kPairLoop &&
      c.cooldown_s < c.measurement_interval_s) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cooldown_s (", c.cooldown_s, ") must be >= measurement_interval_s (",
        c.measurement_interval_s, ") in pair_loop mode"));
  }
  if (c.burst_size <= 0 || !(c.burst_period_s > 0)) {
    return absl::InvalidArgumentError("burst_size and burst_period_s must be > 0");
  }
  if (c.duration <= absl::ZeroDuration()) {
    return absl::InvalidArgumentError("duration must be positive");
  }
  if (!(c.billing_quantum_ms > 0)) {
    return absl::InvalidArgumentError("billing_quantum_ms must be > 0");
  }
  if (!(c.pair_gap_s >= 0) || !(c.timeout_s > 0)) {
    return absl::InvalidArgumentError("pair_gap_s >= 0 and timeout_s > 0 required");
  }
  if (!LoadZone(c.timezone).ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown timezone '", c.timezone, "'"));
  }
  return absl::OkStatus();
}

int CopiesNeeded(const CampaignConfig& c) {
  // The epsilon keeps 1200/40 at 30 despite floating division.
  const double ratio = c.cooldown_s / c.measurement_interval_s;
  return std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
}

std::string CopyKey(const FunctionSpec& fn, int copy_index) {
  return absl::StrFormat("%s#%02d", fn.function_name, copy_index);
}

absl::StatusOr<std::string> CopyEndpoint(const FunctionSpec& fn,
                                         int copy_index) {
  if (!fn.endpoints.empty()) {
    if (copy_index < 0 ||
        copy_index >= static_cast<int>(fn.endpoints.size())) {
      return absl::InvalidArgumentError(absl::StrCat(
          fn.function_name, " lists ", fn.endpoints.size(),
          " endpoints but copy ", copy_index, " is needed"));
    }
    return fn.endpoints[copy_index];
  }
  if (fn.endpoint.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(fn.function_name, " has no endpoint"));
  }
  return absl::StrReplaceAll(fn.endpoint,
                             {{"{copy}", absl::StrCat(copy_index)}});
}

namespace {

void SortPlan(std::vector<PlannedCall>& plan) {
  std::stable_sort(plan.begin(), plan.end(),
                   [](const PlannedCall& a, const PlannedCall& b) {
                     return std::tie(a.virtual_time, a.function_index,
                                     a.call_index) <
                            std::tie(b.virtual_time, b.function_index,
                                     b.call_index);
                   });
}

}  // namespace

absl::StatusOr<std::vector<PlannedCall>> PlanCampaign(const CampaignConfig& c) {
  if (auto s = ValidateCampaign(c); !s.ok()) return s;
  if (c.mode != CampaignMode::kPairLoop) {
    return absl::InvalidArgumentError("PlanCampaign needs pair_loop mode");
  }
  const absl::Duration interval = absl::Seconds(c.measurement_interval_s);
  if (c.duration < interval) {
    return absl::FailedPreconditionError(
        "duration is shorter than one measurement interval; nothing to plan");
  }
  const int copies = CopiesNeeded(c);
  const absl::Time start = c.start.value_or(absl::UnixEpoch());
  const absl::Duration gap = absl::Seconds(c.pair_gap_s);
  const int nfn = static_cast<int>(c.functions.size());

  std::vector<PlannedCall> plan;
  for (int f = 0; f < nfn; ++f) {
    const FunctionSpec& fn = c.functions[f];
    const absl::Duration offset = interval * f / nfn;
    for (int64_t j = 0; offset + interval * j < c.duration; ++j) {
      const int copy = static_cast<int>(j % copies);
      const std::string loop_id =
          absl::StrFormat("%s-c%02d-l%06d", fn.function_name, copy, j / copies);
      const absl::Time t = start + offset + interval * j;
      plan.push_back({t, f, fn.function_name, copy, loop_id, 1});
      plan.push_back({t + gap, f, fn.function_name, copy, loop_id, 2});
    }
  }
  SortPlan(plan);
  return plan;
}

absl::StatusOr<std::vector<PlannedCall>> PlanBurst(const CampaignConfig& c) {
  if (auto s = ValidateCampaign(c); !s.ok()) return s;
  if (c.mode != CampaignMode::kBurst) {
    return absl::InvalidArgumentError("PlanBurst needs burst mode");
  }
  const absl::Duration period = absl::Seconds(c.burst_period_s);
  if (c.duration < period) {
    return absl::FailedPreconditionError(
        "duration is shorter than one burst period; nothing to plan");
  }
  const absl::Time start = c.start.value_or(absl::UnixEpoch());
  const absl::Duration gap = absl::Seconds(c.pair_gap_s);
  std::vector<PlannedCall> plan;
  for (int f = 0; f < static_cast<int>(c.functions.size()); ++f) {
    const FunctionSpec& fn = c.functions[f];
    for (int64_t k = 0; period * k < c.duration; ++k) {
      for (int i = 0; i < c.burst_size; ++i) {
        plan.push_back({start + period * k + gap * i, f, fn.function_name, 0,
                        absl::StrFormat("%s-b%05d-%03d", fn.function_name, k, i),
                        i == 0 ? 1 : 2});
      }
    }
  }
  SortPlan(plan);
  return plan;
}

absl::StatusOr<std::vector<PlannedCall>> Plan(const CampaignConfig& c) {
  return c.mode == CampaignMode::kBurst ? PlanBurst(c) : PlanCampaign(c);
}

namespace {

// Calls that must run back to back: one pair, or one burst.
struct Chain {
  int function_index = 0;
  int copy_index = 0;
  std::vector<PlannedCall> calls;
};

std::vector<Chain> BuildChains(const CampaignConfig& c,
                               const std::vector<PlannedCall>& plan) {
  std::vector<Chain> chains;
  std::map<std::string, std::size_t> pair_index;
  for (const PlannedCall& call : plan) {
    std::string chain_key = call.loop_id;
    if (c.mode == CampaignMode::kBurst) {
      // "<name>-bNNNNN-iii": a burst shares everything up to the last dash.
      chain_key = call.loop_id.substr(0, call.loop_id.rfind('-'));
    }
    auto [it, inserted] = pair_index.try_emplace(chain_key, chains.size());
    if (inserted) chains.push_back({call.function_index, call.copy_index, {}});
    chains[it->second].calls.push_back(call);
  }
  return chains;
}

InvocationRecord MakeRecord(const CampaignConfig& c, const PlannedCall& call,
                            const InvocationOutcome& out, TargetKind kind,
                            absl::Time issued) {
  const FunctionSpec& fn = c.functions[call.function_index];
  InvocationRecord r;
  r.timestamp_utc = RoundToMillis(issued);
  r.function_name = fn.function_name;
  r.workload = fn.workload;
  r.memory_mb = fn.memory_mb;
  r.copy_index = call.copy_index;
  r.loop_id = call.loop_id;
  r.call_index = call.call_index;
  r.target_kind = kind;
  r.status = out.status;
  if (out.status == CallStatus::kOk) {
    r.instance_id = out.instance_id;
    r.cold = out.cold;
    r.billed_duration_ms = out.billed_duration_ms;
    r.handler_duration_ms = out.handler_duration_ms;
  }
  return r;
}

InvocationRequest MakeRequest(const CampaignConfig& c, const PlannedCall& call) {
  const FunctionSpec& fn = c.functions[call.function_index];
  return {CopyKey(fn, call.copy_index), fn.memory_mb, c.run_id, call.loop_id,
          call.call_index};
}

absl::Status RunVirtual(const CampaignConfig& c, const std::vector<Chain>& chains,
                        InvocationTarget& target, Clock& clock,
                        RecordSink& sink, const RunOptions& options,
                        CampaignSummary& summary) {
  struct Event {
    absl::Time t;
    std::size_t chain;
    std::size_t pos;
    bool operator>(const Event& o) const {
      return std::tie(t, chain, pos) > std::tie(o.t, o.chain, o.pos);
    }
  };
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    queue.push({chains[i].calls.front().virtual_time, i, 0});
  }
  constexpr std::size_t kFlushEvery = 4096;
  std::vector<InvocationRecord> buffer;
  buffer.reserve(kFlushEvery);
  auto flush = [&]() -> absl::Status {
    AppendResult res = sink.Append(buffer);
    buffer.clear();
    return res.status;
  };
  const absl::Duration gap = absl::Seconds(c.pair_gap_s);
  int64_t chains_done = 0;
  while (!queue.empty()) {
    const Event ev = queue.top();
    queue.pop();
    const Chain& chain = chains[ev.chain];
    const PlannedCall& call = chain.calls[ev.pos];
    clock.SleepUntil(ev.t);
    const InvocationOutcome out = target.Invoke(MakeRequest(c, call), clock);
    buffer.push_back(MakeRecord(c, call, out, target.kind(), ev.t));
    if (out.status == CallStatus::kOk) {
      ++summary.calls_made;
    } else {
      ++summary.errors;
    }
    if (ev.pos + 1 < chain.calls.size()) {
      const absl::Time done =
          ev.t + absl::Milliseconds(out.handler_duration_ms) + gap;
      queue.push({std::max(done, chain.calls[ev.pos + 1].virtual_time),
                  ev.chain, ev.pos + 1});
    } else {
      ++chains_done;
      if (options.progress) {
        options.progress(chains_done, static_cast<int64_t>(chains.size()),
                         summary);
      }
    }
    if (buffer.size() >= kFlushEvery) {
      if (auto s = flush(); !s.ok()) return s;
    }
  }
  return flush();
}

absl::Status RunThreaded(const CampaignConfig& c,
                         const std::vector<Chain>& chains,
                         InvocationTarget& target, Clock& clock,
                         RecordSink& sink, const RunOptions& options,
                         CampaignSummary& summary) {
  // One lane per deployed copy; lanes run independently.
  std::map<std::pair<int, int>, std::vector<const Chain*>> lanes;
  for (const Chain& chain : chains) {
    lanes[{chain.function_index, chain.copy_index}].push_back(&chain);
  }
  std::mutex mu;
  absl::Status first_error;
  int64_t chains_done = 0;
  const int64_t total = static_cast<int64_t>(chains.size());
  {
    std::vector<std::jthread> workers;
    workers.reserve(lanes.size());
    for (auto& [lane, lane_chains] : lanes) {
      workers.emplace_back([&, lane_chains = lane_chains] {
        for (const Chain* chain : lane_chains) {
          std::vector<InvocationRecord> records;
          int64_t ok = 0, errors = 0;
          clock.SleepUntil(chain->calls.front().virtual_time);
          for (const PlannedCall& call : chain->calls) {
            const absl::Time issued = clock.Now();
            const InvocationOutcome out =
                target.Invoke(MakeRequest(c, call), clock);
            records.push_back(MakeRecord(c, call, out, target.kind(), issued));
            (out.status == CallStatus::kOk ? ok : errors)++;
          }
          AppendResult res = sink.Append(records);
          std::lock_guard<std::mutex> lock(mu);
          summary.calls_made += ok;
          summary.errors += errors;
          ++chains_done;
          if (!res.status.ok()) {
            if (first_error.ok()) first_error = res.status;
            return;
          }
          if (options.progress) options.progress(chains_done, total, summary);
        }
      });
    }
  }
  return first_error;
}

}  // namespace

absl::StatusOr<CampaignSummary> ExecutePlan(const CampaignConfig& config,
                                            const std::vector<PlannedCall>& plan,
                                            InvocationTarget& target,
                                            Clock& clock, RecordSink& sink,
                                            const RunOptions& options) {
  const absl::Time wall_start = absl::Now();
  CampaignSummary summary;
  const std::vector<Chain> chains = BuildChains(config, plan);
  absl::Status status =
      clock.is_virtual()
          ? RunVirtual(config, chains, target, clock, sink, options, summary)
          : RunThreaded(config, chains, target, clock, sink, options, summary);
  if (!status.ok()) return status;
  summary.wall_time = absl::Now() - wall_start;
  return summary;
}

absl::StatusOr<CampaignSummary> RunCampaign(const CampaignConfig& config,
                                            InvocationTarget& target,
                                            Clock& clock, RecordSink& sink,
                                            const RunOptions& options) {
  if (auto s = ValidateCampaign(config); !s.ok()) return s;
  if (auto s = target.Probe(); !s.ok()) {
    return absl::UnavailableError(
        absl::StrCat("target probe failed: ", s.message()));
  }
  CampaignConfig c = config;
  if (!c.start) c.start = clock.Now();
  auto plan = Plan(c);
  if (!plan.ok()) return plan.status();
  return ExecutePlan(c, *plan, target, clock, sink, options);
}

}  // namespace variability
