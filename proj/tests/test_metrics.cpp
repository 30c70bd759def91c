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

#include <random>
#include <sstream>

#include "clonestab/error.hpp"
#include "clonestab/log.hpp"
#include "clonestab/metrics.hpp"
#include "doctest.h"

using namespace clonestab;
using namespace clonestab::metrics;
using clonedetect::CloneClass;
using clonedetect::LineClassification;
using history::FileSnapshot;
using history::Revision;

namespace {

Revision rev(const std::string& id, std::size_t ordinal, const std::string& ymd) {
    return {id, std::chrono::sys_seconds(parse_ymd(ymd)) + std::chrono::hours(12), "", ordinal};
}

LineClassification classify(const std::string& rev_id, const std::vector<FileSnapshot>& files,
                            const std::vector<CloneClass>& classes) {
    std::vector<lexnorm::LineClassArray> tags;
    for (const auto& f : files)
        tags.push_back(lexnorm::classify_physical_lines(f));
    return clonedetect::classify_lines(rev_id, files, tags, classes);
}

history::BlameMap blame_from(const std::string& path, const std::vector<std::string>& days) {
    history::BlameMap m;
    for (std::size_t i = 0; i < days.size(); ++i)
        m[path].push_back({path, i + 1, "r-" + days[i], std::chrono::sys_seconds(parse_ymd(days[i]))});
    return m;
}

TransitionCounts tc(std::size_t mc_d, std::size_t mc_n, std::size_t loc, std::size_t loc_d) {
    return {0, "a", "b", mc_d, mc_n, loc, loc_d, loc - loc_d};
}

// body lines 2..7 of the file form the cloned region in both revisions
const std::vector<std::string> kBefore = {"void f(void) {", "  a = 1;", "  b = 2;", "  c = 3;", "  d = 4;",
                                          "  e = 5;",       "}",        "int g;",  "/* note */"};

}  // namespace

TEST_CASE("transition_counts: empty diff") {
    const std::vector<FileSnapshot> files = {{"m.c", kBefore}};
    const std::vector<CloneClass> cls = {{1, 1, {{"m.c", 1, 7}, {"m.c", 1, 7}}}};
    const auto t = transition_counts(rev("r0", 0, "2011-01-01"), rev("r1", 1, "2011-01-02"), classify("r0", files, cls),
                                     classify("r1", files, cls), diff_snapshots(files, files));
    CHECK(t.mc_d == 0);
    CHECK(t.mc_n == 0);
    CHECK(t.loc == 8);
    CHECK(t.loc_d == 7);
    CHECK(t.loc_n == 1);
}

TEST_CASE("transition_counts: two cloned lines rewritten, one non-cloned line added") {
    auto after = kBefore;
    after[2] = "  b = 20;";
    after[3] = "  c = 30;";
    after.push_back("int h;");
    const std::vector<FileSnapshot> from = {{"m.c", kBefore}}, to = {{"m.c", after}};
    const std::vector<CloneClass> cls = {{1, 1, {{"m.c", 1, 7}, {"m.c", 1, 7}}}};
    const auto diffs = diff_snapshots(from, to);
    const auto t = transition_counts(rev("r0", 0, "2011-01-01"), rev("r1", 1, "2011-01-02"), classify("r0", from, cls),
                                     classify("r1", to, cls), diffs);
    CHECK(t.mc_d == 4);
    CHECK(t.mc_n == 1);
    CHECK(t.ordinal_from == 0);
    CHECK(t.rev_from == "r0");
    CHECK(t.rev_to == "r1");
}

TEST_CASE("transition_counts: comment-only and blank edits are ignored") {
    auto after = kBefore;
    after[8] = "/* rewritten note */";
    after.push_back("");
    const std::vector<FileSnapshot> from = {{"m.c", kBefore}}, to = {{"m.c", after}};
    const auto t = transition_counts(rev("r0", 0, "2011-01-01"), rev("r1", 1, "2011-01-02"), classify("r0", from, {}),
                                     classify("r1", to, {}), diff_snapshots(from, to));
    CHECK(t.mc_d == 0);
    CHECK(t.mc_n == 0);
}

TEST_CASE("transition_counts: added and removed files count on their own side") {
    const std::vector<FileSnapshot> from = {{"gone.c", {"int a;", "int b;"}}};
    const std::vector<FileSnapshot> to = {{"new.c", {"int c;", "// x", "int d;", "int e;"}}};
    const auto t = transition_counts(rev("r0", 0, "2011-01-01"), rev("r1", 1, "2011-01-02"), classify("r0", from, {}),
                                     classify("r1", to, {}), diff_snapshots(from, to));
    CHECK(t.mc_n == 2 + 3);
    CHECK(t.mc_d == 0);
}

TEST_CASE("transition_counts: mismatched revisions are a usage error") {
    const std::vector<FileSnapshot> files = {{"m.c", kBefore}};
    try {
        (void)transition_counts(rev("r0", 0, "2011-01-01"), rev("r1", 1, "2011-01-02"), classify("r0", files, {}),
                                classify("r9", files, {}), {});
        FAIL("expected a usage error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Usage);
    }
}

TEST_CASE("compute_mf examples") {
    const auto one = compute_mf({tc(2, 1, 100, 20)});
    CHECK(one.mf_d == Rational(10));
    CHECK(one.mf_n == Rational(5, 4));
    CHECK(one.series.size() == 1);

    const auto never = compute_mf({tc(0, 3, 50, 10), tc(0, 1, 60, 10)});
    CHECK(never.mf_d == Rational(0));
    CHECK(never.mf_n == Rational(4, 2) * Rational(110, 90));

    const auto still = compute_mf({tc(0, 0, 50, 10), tc(0, 0, 50, 10)});
    CHECK(still.mf_d == Rational(0));
    CHECK(still.mf_n == Rational(0));

    log::Capture capture;
    const auto no_clones = compute_mf({tc(0, 2, 40, 0)});
    CHECK(no_clones.mf_d == Rational(0));
    CHECK(no_clones.mf_n == Rational(2));
    CHECK(capture.contains("no cloned lines"));

    try {
        (void)compute_mf({});
        FAIL("expected empty history");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyHistory);
    }
}

TEST_CASE("compute_mf: equal per-line rates give equal MF; duplication of the timeline changes nothing") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> k(0, 6);
    std::vector<TransitionCounts> series;
    for (int i = 0; i < 30; ++i) {
        const std::size_t r = k(rng);  // per-20-line modification rate
        series.push_back(tc(r, 4 * r, 100, 20));
    }
    const auto mf = compute_mf(series);
    CHECK(mf.mf_d == mf.mf_n);

    auto twice = series;
    twice.insert(twice.end(), series.begin(), series.end());
    const auto mf2 = compute_mf(twice);
    CHECK(mf2.mf_d == mf.mf_d);
    CHECK(mf2.mf_n == mf.mf_n);
}

TEST_CASE("average_date examples") {
    const Date d = parse_ymd("2011-01-05");
    CHECK(average_date(std::vector{d}) == d);

    std::vector<Date> five;
    for (const char* s : {"01-Jan-11", "05-Jan-11", "08-Jan-11", "12-Jan-11", "20-Jan-11"})
        five.push_back(parse_dd_mon_yy(s));
    CHECK(format_dd_mon_yy(average_date(five)) == "09-Jan-11");
    // dividing the four non-zero distances by four instead lands two days later
    CHECK(format_dd_mon_yy(five[0] + std::chrono::days((4 + 7 + 11 + 19) / 4)) == "11-Jan-11");

    auto shifted = five;
    for (auto& x : shifted)
        x += std::chrono::days(30);
    CHECK(average_date(shifted) == average_date(five) + std::chrono::days(30));

    CHECK_THROWS_AS(average_date(std::vector<Date>{}), Error);
}

TEST_CASE("krinke_metrics: one origin everywhere ties every file") {
    const std::vector<FileSnapshot> files = {{"m.c", kBefore}};
    const std::vector<CloneClass> cls = {{1, 1, {{"m.c", 2, 4}, {"m.c", 5, 6}}}};
    const auto lines = classify("R", files, cls);
    const auto blame = blame_from("m.c", std::vector<std::string>(kBefore.size(), "2010-03-04"));
    const auto k = krinke_metrics(rev("R", 3, "2011-01-01"), blame, lines);
    CHECK(k.alc_c == parse_ymd("2010-03-04"));
    CHECK(k.alc_n == parse_ymd("2010-03-04"));
    CHECK(k.pf_c == Rational(0));
    CHECK(k.pf_n == Rational(0));
    CHECK(k.analyzed_files == 1);
}

TEST_CASE("krinke_metrics: cloned older in one file, newer in the other") {
    const std::vector<std::string> body = {"int a;", "int b;", "int c;", "int d;"};
    const std::vector<FileSnapshot> files = {{"a.c", body}, {"b.c", body}, {"c.c", body}, {"d.c", body}};
    const std::vector<CloneClass> cls = {{1, 1, {{"a.c", 1, 2}, {"b.c", 1, 2}}}, {2, 1, {{"d.c", 1, 4}, {"d.c", 1, 4}}}};
    auto blame = blame_from("a.c", {"2010-01-01", "2010-01-03", "2010-06-01", "2010-06-05"});
    blame.merge(blame_from("b.c", {"2010-09-01", "2010-09-01", "2010-02-01", "2010-02-11"}));
    blame.merge(blame_from("c.c", {"2010-01-01", "2010-01-01", "2010-01-01", "2010-01-01"}));
    blame.merge(blame_from("d.c", {"2010-01-01", "2010-01-01", "2010-01-01", "2010-01-01"}));
    const auto k = krinke_metrics(rev("R", 3, "2011-01-01"), blame, classify("R", files, cls));
    CHECK(k.analyzed_files == 2);
    CHECK(k.excluded_files == 2);
    CHECK(k.pf_c == Rational(50));
    CHECK(k.pf_n == Rational(50));
    // cloned: 01-01, 01-03, 09-01, 09-01 and four of 01-01 from d.c
    // distances 0,2,243,243,0,0,0,0 -> 488/8 = 61
    CHECK(k.alc_c == parse_ymd("2010-01-01") + std::chrono::days(61));
}

TEST_CASE("krinke_metrics counts comment and blank lines; variant does not") {
    const std::vector<FileSnapshot> files = {{"m.c", {"int a;", "// c", "", "int b;"}}};
    const std::vector<CloneClass> cls = {{1, 1, {{"m.c", 1, 2}, {"m.c", 1, 2}}}};
    const auto lines = classify("R", files, cls);
    const auto blame = blame_from("m.c", {"2011-01-10", "2011-01-01", "2011-01-01", "2011-01-05"});
    const auto last = rev("R", 1, "2011-01-20");
    const auto k = krinke_metrics(last, blame, lines);
    CHECK(k.alc_c == parse_ymd("2011-01-05"));  // (9 + 0) / 2 past 01-01
    CHECK(k.alc_n == parse_ymd("2011-01-03"));  // (0 + 4) / 2
    const auto v = variant_metrics(last, blame, lines);
    CHECK(v.n_c == 1);
    CHECK(v.n_n == 1);
    CHECK(v.aa_c == Rational(10));
    CHECK(v.aa_n == Rational(15));
}

TEST_CASE("krinke_metrics without clones reports ALC_c absent") {
    const std::vector<FileSnapshot> files = {{"m.c", {"int a;"}}};
    log::Capture capture;
    const auto k = krinke_metrics(rev("R", 0, "2011-01-01"), blame_from("m.c", {"2010-12-01"}), classify("R", files, {}));
    CHECK_FALSE(k.alc_c.has_value());
    CHECK(k.alc_n == parse_ymd("2010-12-01"));
    CHECK(capture.contains("ALC_c absent"));
}

TEST_CASE("variant_metrics examples") {
    const auto last = rev("R", 2, "2011-01-20");
    const std::vector<FileSnapshot> one = {{"m.c", {"int a;"}}};
    const auto single = variant_metrics(last, blame_from("m.c", {"2011-01-01"}), classify("R", one, {}));
    CHECK(single.aa_n == Rational(19));

    const std::vector<FileSnapshot> files = {{"m.c", {"int a;", "int b;", "int c;"}}};
    const std::vector<CloneClass> cls = {{1, 1, {{"m.c", 1, 2}, {"m.c", 1, 2}}}};
    const auto lines = classify("R", files, cls);

    const auto fresh = variant_metrics(last, blame_from("m.c", {"2011-01-20", "2011-01-20", "2011-01-20"}), lines);
    CHECK(fresh.aa_c == Rational(0));
    CHECK(fresh.aa_n == Rational(0));

    const auto mixed = variant_metrics(last, blame_from("m.c", {"2011-01-10", "2010-12-31", "2010-12-21"}), lines);
    CHECK(mixed.aa_c == Rational(15));
    CHECK(mixed.aa_n == Rational(30));
    CHECK(mixed.all_lines_mean() == Rational(20));
}

TEST_CASE("variant and krinke agree on comment-free, tie-free input") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> day(0, 400), bit(0, 2), size(2, 30);
    const Date base = parse_ymd("2009-01-01");
    int compared = 0;
    for (int iter = 0; iter < 300; ++iter) {
        const int n = size(rng);
        FileSnapshot f{"m.c", {}};
        history::BlameMap blame;
        std::vector<CloneClass> cls;
        for (int i = 0; i < n; ++i) {
            f.lines.push_back("int v" + std::to_string(i) + ";");
            blame["m.c"].push_back({"m.c", static_cast<std::size_t>(i + 1), "x",
                                    std::chrono::sys_seconds(base + std::chrono::days(day(rng)))});
            if (bit(rng) == 0)
                cls.push_back({cls.size() + 1, 1, {{"m.c", static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i + 1)},
                                                   {"m.c", static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i + 1)}}});
        }
        log::Capture quiet;
        const auto lines = classify("R", {f}, cls);
        const auto last = rev("R", 9, "2010-06-01");
        const auto k = krinke_metrics(last, blame, lines);
        const auto v = variant_metrics(last, blame, lines);
        if (!k.alc_c || !k.alc_n || *k.alc_c == *k.alc_n)
            continue;
        ++compared;
        CHECK((*v.aa_c > *v.aa_n) == (*k.alc_c < *k.alc_n));
        const auto mean = v.all_lines_mean();
        Rational total(0);
        for (const auto& o : blame["m.c"])
            total = total + Rational(days_between(day_of(o.origin_date), day_of(last.timestamp)));
        CHECK(*mean == total / Rational(n));
    }
    CHECK(compared > 100);
}

TEST_CASE("blame not covering the classification is a usage error") {
    const std::vector<FileSnapshot> files = {{"m.c", {"int a;", "int b;"}}};
    CHECK_THROWS_AS(variant_metrics(rev("R", 0, "2011-01-01"), blame_from("m.c", {"2010-01-01"}),
                                    classify("R", files, {})),
                    Error);
    CHECK_THROWS_AS(krinke_metrics(rev("R", 0, "2011-01-01"), {}, classify("R", files, {})), Error);
}

TEST_CASE("mf_series csv") {
    std::ostringstream out;
    const std::vector<TransitionCounts> s = {{0, "r0", "r1", 4, 1, 8, 7, 1}};
    write_mf_series_csv(out, s);
    CHECK(out.str() == "ordinal_from,rev_from,rev_to,mc_d,mc_n,loc,loc_d,loc_n\n0,r0,r1,4,1,8,7,1\n");
}
