#!/usr/bin/env python3
# Copyright 2026 The Variability Toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes data/gcf-default.json, the default simulator scenario.

Hour-of-week index 0 is Monday 00:00 local time.
"""
import json
import pathlib

DAY_FACTOR = 122.0 / 106.0
# Evening ramp from the working-hours level back to the night level.
EVENING = {17: 1.125, 18: 1.10, 19: 1.075, 20: 1.05, 21: 1.03, 22: 1.01}


def diurnal(hour):
    if 7 <= hour <= 16:
        return DAY_FACTOR
    return EVENING.get(hour, 1.0)


NIGHT = 0.037
MONDAY_WORK = 0.123
# Mon-Fri working hours average 9.8% with Monday at 12.3%.
WEEKDAY_WORK = (5 * 0.098 - MONDAY_WORK) / 4
SHOULDER = 0.06
# Weekend days: 12 night hours at 3.7%, 12 day hours at x, averaging 3.6%.
WEEKEND_DAY = 2 * 0.036 - NIGHT


def eviction(day, hour):
    if hour >= 20 or hour < 8:
        return NIGHT
    if day >= 5:
        return WEEKEND_DAY
    if 9 <= hour <= 16:
        return MONDAY_WORK if day == 0 else WEEKDAY_WORK
    return SHOULDER


scenario = {
    "seed": 20221212,
    "timezone": "CET",
    "tiers": {"128": 106.0, "512": 25.0},
    "diurnal_profile": {
        "interpolation": "step",
        "values": [round(diurnal(h % 24), 6) for h in range(168)],
    },
    "eviction_profile": {
        "interpolation": "step",
        "values": [round(eviction(h // 24, h % 24), 6) for h in range(168)],
    },
    "keep_alive_s": 900,
    "cold_multiplier_mean": 9.5,
    "cold_multiplier_sd": 1.0,
    "mid_tier_mixing": {"256": {"backing_tiers": [128, 512], "weights": [0.5, 0.5]}},
    "trend_steps": [
        {"time": "2023-01-09T07:00:00+01:00", "factor": 1.05},
        {"time": "2023-01-23T06:00:00+01:00", "factor": 1.05},
        {"time": "2023-02-07T01:00:00+01:00", "factor": 0.88},
        {"time": "2023-02-17T06:00:00+01:00", "factor": 1.08},
    ],
    "outlier_events": [
        {"time": t, "duration_h": 1, "factor": 1.8}
        for t in [
            "2023-01-01T00:00:00+01:00",
            "2023-01-03T06:00:00+01:00",
            "2023-01-27T03:00:00+01:00",
            "2023-01-29T00:00:00+01:00",
            "2023-02-01T09:00:00+01:00",
        ]
    ],
    "noise_cv": 0.05,
}

out = pathlib.Path(__file__).resolve().parent.parent / "data" / "gcf-default.json"
out.write_text(json.dumps(scenario, indent=2) + "\n")
print(f"wrote {out}")
