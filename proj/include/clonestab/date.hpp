// Copyright 2026 The clonestab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace clonestab {

using Instant = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

/// UTC calendar day containing the instant.
inline Date day_of(Instant t) { return std::chrono::floor<std::chrono::days>(t); }

inline std::int64_t days_between(Date from, Date to) { return (to - from).count(); }

/// Parses `YYYY-MM-DDTHH:MM:SSZ`. Throws Error(Data) on malformed input.
Instant parse_iso8601(std::string_view text);

/// `YYYY-MM-DDTHH:MM:SSZ`
std::string format_iso8601(Instant t);

/// Parses `YYYY-MM-DD`.
Date parse_ymd(std::string_view text);

/// `YYYY-MM-DD`
std::string format_ymd(Date d);

/// Parses the `DD-Mon-YY` form used by the published tables (years are 20YY).
Date parse_dd_mon_yy(std::string_view text);

/// `DD-Mon-YY`
std::string format_dd_mon_yy(Date d);

}  // namespace clonestab
