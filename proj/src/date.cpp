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

#include "clonestab/date.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "clonestab/error.hpp"

namespace clonestab {

namespace {

using namespace std::chrono;

constexpr std::array<std::string_view, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        fail(ErrorKind::Data, "malformed date '" + std::string(whole) + "'");
    return value;
}

Date make_date(int y, int m, int d, std::string_view whole) {
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        fail(ErrorKind::Data, "invalid calendar date '" + std::string(whole) + "'");
    return sys_days{ymd};
}

bool has_separators(std::string_view text, std::initializer_list<std::pair<std::size_t, char>> seps) {
    for (auto [pos, ch] : seps)
        if (text[pos] != ch)
            return false;
    return true;
}

}  // namespace

Instant parse_iso8601(std::string_view text) {
    if (text.size() != 20 ||
        !has_separators(text, {{4, '-'}, {7, '-'}, {10, 'T'}, {13, ':'}, {16, ':'}, {19, 'Z'}}))
        fail(ErrorKind::Data, "expected YYYY-MM-DDTHH:MM:SSZ, got '" + std::string(text) + "'");
    Date d = make_date(parse_int(text.substr(0, 4), text), parse_int(text.substr(5, 2), text),
                       parse_int(text.substr(8, 2), text), text);
    int hh = parse_int(text.substr(11, 2), text);
    int mm = parse_int(text.substr(14, 2), text);
    int ss = parse_int(text.substr(17, 2), text);
    if (hh > 23 || mm > 59 || ss > 60)
        fail(ErrorKind::Data, "invalid time of day in '" + std::string(text) + "'");
    return Instant{d} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_iso8601(Instant t) {
    Date d = day_of(t);
    year_month_day ymd{d};
    hh_mm_ss tod{t - Instant{d}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()), int(tod.hours().count()), int(tod.minutes().count()),
                  int(tod.seconds().count()));
    return buf;
}

Date parse_ymd(std::string_view text) {
    if (text.size() != 10 || !has_separators(text, {{4, '-'}, {7, '-'}}))
        fail(ErrorKind::Data, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
    return make_date(parse_int(text.substr(0, 4), text), parse_int(text.substr(5, 2), text),
                     parse_int(text.substr(8, 2), text), text);
}

std::string format_ymd(Date d) {
    year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

Date parse_dd_mon_yy(std::string_view text) {
    if (text.size() != 9 || !has_separators(text, {{2, '-'}, {6, '-'}}))
        fail(ErrorKind::Data, "expected DD-Mon-YY, got '" + std::string(text) + "'");
    std::string_view mon = text.substr(3, 3);
    int m = 0;
    for (std::size_t i = 0; i < kMonths.size(); ++i)
        if (kMonths[i] == mon)
            m = static_cast<int>(i) + 1;
    if (m == 0)
        fail(ErrorKind::Data, "unknown month in '" + std::string(text) + "'");
    return make_date(2000 + parse_int(text.substr(7, 2), text), m, parse_int(text.substr(0, 2), text), text);
}

std::string format_dd_mon_yy(Date d) {
    year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02u-%s-%02d", unsigned(ymd.day()),
                  std::string(kMonths[unsigned(ymd.month()) - 1]).c_str(), int(ymd.year()) % 100);
    return buf;
}

}  // namespace clonestab
