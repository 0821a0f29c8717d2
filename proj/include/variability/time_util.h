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

#ifndef VARIABILITY_TIME_UTIL_H_
#define VARIABILITY_TIME_UTIL_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/time/time.h"

namespace variability {

inline constexpr int kHoursPerDay = 24;
inline constexpr int kHoursPerWeek = 168;

// Loads an IANA zone ("CET", "Europe/Berlin", "UTC") from the system zoneinfo.
absl::StatusOr<absl::TimeZone> LoadZone(absl::string_view name);

// RFC 3339 with millisecond precision in UTC, e.g. "2022-12-12T00:00:40.123Z".
std::string FormatTimestamp(absl::Time t);

// Accepts any RFC 3339 offset; fractional seconds are kept.
absl::StatusOr<absl::Time> ParseTimestamp(absl::string_view text);

// Rounds to the nearest millisecond; records are stored at this precision.
absl::Time RoundToMillis(absl::Time t);

// Hour of the week in local time, Monday 00:00 = 0.0, fractional part carries
// minutes and seconds. Always in [0, 168).
double FractionalHourOfWeek(absl::Time t, absl::TimeZone tz);
int HourOfWeek(absl::Time t, absl::TimeZone tz);
int HourOfDay(absl::Time t, absl::TimeZone tz);

// Parses "90s", "20m", "336h", "14d" or any absl duration string.
absl::StatusOr<absl::Duration> ParseSpan(absl::string_view text);

}  // namespace variability

#endif  // VARIABILITY_TIME_UTIL_H_
