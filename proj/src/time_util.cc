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

#include "variability/time_util.h"

#include <cmath>
#include <cstdint>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/time/civil_time.h"

namespace variability {

absl::StatusOr<absl::TimeZone> LoadZone(absl::string_view name) {
  absl::TimeZone tz;
  if (!absl::LoadTimeZone(std::string(name), &tz)) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown time zone '", name, "'"));
  }
  return tz;
}

std::string FormatTimestamp(absl::Time t) {
  return absl::FormatTime("%Y-%m-%d%ET%H:%M:%E3SZ", t, absl::UTCTimeZone());
}

absl::StatusOr<absl::Time> ParseTimestamp(absl::string_view text) {
  absl::Time t;
  std::string err;
  if (!absl::ParseTime(absl::RFC3339_full, std::string(text), &t, &err)) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad RFC 3339 timestamp '", text, "': ", err));
  }
  return t;
}

absl::Time RoundToMillis(absl::Time t) {
  const int64_t ms = absl::ToUnixMillis(t + absl::Microseconds(500));
  return absl::FromUnixMillis(ms);
}

namespace {

int WeekdayIndex(absl::Weekday wd) {
  switch (wd) {
    case absl::Weekday::monday: return 0;
    case absl::Weekday::tuesday: return 1;
    case absl::Weekday::wednesday: return 2;
    case absl::Weekday::thursday: return 3;
    case absl::Weekday::friday: return 4;
    case absl::Weekday::saturday: return 5;
    case absl::Weekday::sunday: return 6;
  }
  return 0;
}

}  // namespace

double FractionalHourOfWeek(absl::Time t, absl::TimeZone tz) {
  const absl::TimeZone::CivilInfo ci = tz.At(t);
  const absl::CivilSecond cs = ci.cs;
  const int day = WeekdayIndex(absl::GetWeekday(absl::CivilDay(cs)));
  const double seconds = cs.second() + absl::ToDoubleSeconds(ci.subsecond);
  return day * kHoursPerDay + cs.hour() + cs.minute() / 60.0 + seconds / 3600.0;
}

int HourOfWeek(absl::Time t, absl::TimeZone tz) {
  const absl::CivilSecond cs = tz.At(t).cs;
  return WeekdayIndex(absl::GetWeekday(absl::CivilDay(cs))) * kHoursPerDay +
         cs.hour();
}

int HourOfDay(absl::Time t, absl::TimeZone tz) { return tz.At(t).cs.hour(); }

absl::StatusOr<absl::Duration> ParseSpan(absl::string_view text) {
  if (!text.empty() && text.back() == 'd') {
    double days = 0;
    if (absl::SimpleAtod(text.substr(0, text.size() - 1), &days) &&
        std::isfinite(days)) {
      return absl::Hours(24 * days);
    }
  }
  absl::Duration d;
  if (!absl::ParseDuration(std::string(text), &d)) {
    return absl::InvalidArgumentError(absl::StrCat("bad duration '", text, "'"));
  }
  return d;
}

}  // namespace variability
