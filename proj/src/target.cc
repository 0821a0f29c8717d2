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

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "json.hpp"
#include "variability/simulator.h"

namespace variability {

absl::StatusOr<double> QuantizeBilled(double raw_ms, double quantum_ms) {
  if (!(quantum_ms > 0) || !std::isfinite(quantum_ms)) {
    return absl::InvalidArgumentError("billing quantum must be > 0");
  }
  if (!(raw_ms >= 0) || !std::isfinite(raw_ms)) {
    return absl::OutOfRangeError(
        absl::StrCat("raw duration must be finite and >= 0, got ", raw_ms));
  }
  const double q = raw_ms / quantum_ms;
  const double nearest = std::round(q);
  // Division noise must not push an exact multiple up a whole quantum.
  const double steps =
      std::abs(q - nearest) <= 1e-9 * std::max(1.0, q) ? nearest : std::ceil(q);
  return steps * quantum_ms;
}

InvocationOutcome SimTarget::Invoke(const InvocationRequest& request,
                                    Clock& clock) {
  InvocationOutcome out;
  auto sim = sim_->Invoke({request.function_key, request.memory_mb},
                          request.call_index, clock.Now());
  if (!sim.ok()) {
    out.status = CallStatus::kError;
    out.error_detail = std::string(sim.status().message());
    return out;
  }
  out = *std::move(sim);
  auto billed = QuantizeBilled(out.handler_duration_ms, quantum_ms_);
  if (!billed.ok()) {
    out.status = CallStatus::kError;
    out.error_detail = std::string(billed.status().message());
    return out;
  }
  out.billed_duration_ms = *billed;
  return out;
}

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

absl::StatusOr<SplitUrl> Split(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    return absl::InvalidArgumentError(absl::StrCat("endpoint '", url,
                                                   "' lacks a scheme"));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return SplitUrl{url, "/"};
  return SplitUrl{url.substr(0, path_start), url.substr(path_start)};
}

void Configure(httplib::Client& cli, const HttpTargetOptions& options) {
  const auto secs = absl::ToInt64Seconds(options.timeout);
  const auto usecs = absl::ToInt64Microseconds(options.timeout) % 1'000'000;
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);
  if (options.bearer_token) cli.set_bearer_token_auth(*options.bearer_token);
}

}  // namespace

absl::StatusOr<InvocationOutcome> ParseWorkloadResponse(absl::string_view body,
                                                        double quantum_ms) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("response body is not a JSON object");
  }
  InvocationOutcome out;
  try {
    out.instance_id = j.at("instance_id").get<std::string>();
    out.cold = j.at("cold").get<bool>();
    out.handler_duration_ms = j.at("handler_duration_ms").get<double>();
    // Checked for schema conformance only; the harness does not use them.
    if (!ParseWorkload(j.at("workload").get<std::string>()).ok()) {
      return absl::InvalidArgumentError("response names an unknown workload");
    }
    j.at("result_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("response violates the workload schema: ", e.what()));
  }
  auto billed = QuantizeBilled(out.handler_duration_ms, quantum_ms);
  if (!billed.ok()) return billed.status();
  out.billed_duration_ms = *billed;
  return out;
}

absl::Status HttpTarget::Probe() {
  for (const auto& [key, url] : endpoints_) {
    auto split = Split(url);
    if (!split.ok()) return split.status();
    httplib::Client cli(split->origin);
    Configure(cli, options_);
    // Any HTTP answer proves reachability; HEAD does not run the workload on
    // POST-only handlers.
    auto res = cli.Head(split->path);
    if (!res) {
      return absl::UnavailableError(absl::StrCat(
          "endpoint ", url, " for ", key,
          " unreachable: ", httplib::to_string(res.error())));
    }
  }
  return absl::OkStatus();
}

InvocationOutcome HttpTarget::Invoke(const InvocationRequest& request,
                                     Clock& /*clock*/) {
  InvocationOutcome out;
  auto fail = [&out](std::string detail) {
    out.status = CallStatus::kError;
    out.error_detail = std::move(detail);
    return out;
  };
  auto it = endpoints_.find(request.function_key);
  if (it == endpoints_.end()) {
    return fail(absl::StrCat("no endpoint for ", request.function_key));
  }
  auto split = Split(it->second);
  if (!split.ok()) return fail(std::string(split.status().message()));

  httplib::Client cli(split->origin);
  Configure(cli, options_);
  nlohmann::json body = {{"run_id", request.run_id},
                         {"loop_id", request.loop_id},
                         {"call_index", request.call_index}};
  auto res = cli.Post(split->path, body.dump(), "application/json");
  if (!res) return fail(httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) {
    return fail(absl::StrCat("HTTP ", res->status));
  }
  auto parsed = ParseWorkloadResponse(res->body, options_.billing_quantum_ms);
  if (!parsed.ok()) return fail(std::string(parsed.status().message()));
  return *std::move(parsed);
}

}  // namespace variability
