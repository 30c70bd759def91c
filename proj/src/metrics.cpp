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

#include "clonestab/metrics.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "clonestab/csv.hpp"
#include "clonestab/error.hpp"
#include "clonestab/log.hpp"

namespace clonestab::metrics {

namespace {

using clonedetect::FileLines;
using clonedetect::LineClassification;
using history::FileSnapshot;

Rational ratio(std::size_t num, std::size_t den) {
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

const std::vector<history::LineOrigin>& origins_for(const history::BlameMap& blame, const FileLines& file) {
    auto it = blame.find(file.path);
    if (it == blame.end())
        fail(ErrorKind::Usage, "no blame for " + file.path);
    if (it->second.size() != file.tags.tags.size())
        fail(ErrorKind::Usage, "blame for " + file.path + " covers " + std::to_string(it->second.size()) +
                                   " lines, classification has " + std::to_string(file.tags.tags.size()));
    return it->second;
}

void count_side(const FileLines* file, std::size_t start, std::size_t count, std::size_t& mc_d,
                std::size_t& mc_n) {
    if (count == 0)
        return;
    if (file == nullptr)
        fail(ErrorKind::Usage, "diff touches a file missing from the classification");
    for (std::size_t line = start; line < start + count; ++line) {
        if (line < 1 || line > file->cloned.size())
            fail(ErrorKind::Usage, "diff line " + std::to_string(line) + " outside " + file->path);
        if (file->tags.tags[line - 1] != lexnorm::LineTag::Code)
            continue;
        ++(file->cloned[line - 1] ? mc_d : mc_n);
    }
}

}  // namespace

std::optional<Rational> VariantResult::all_lines_mean() const {
    if (n_c + n_n == 0)
        return std::nullopt;
    Rational total(0);
    if (aa_c)
        total = total + *aa_c * Rational(static_cast<std::int64_t>(n_c));
    if (aa_n)
        total = total + *aa_n * Rational(static_cast<std::int64_t>(n_n));
    return total / Rational(static_cast<std::int64_t>(n_c + n_n));
}

std::vector<history::DiffScript> diff_snapshots(std::span<const FileSnapshot> from, std::span<const FileSnapshot> to) {
    std::map<std::string, std::pair<const FileSnapshot*, const FileSnapshot*>> paths;
    for (const auto& f : from)
        paths[f.path].first = &f;
    for (const auto& f : to)
        paths[f.path].second = &f;
    const FileSnapshot none{};
    std::vector<history::DiffScript> out;
    for (const auto& [path, sides] : paths) {
        auto d = history::diff_files(sides.first ? *sides.first : none, sides.second ? *sides.second : none);
        if (!d.empty())
            out.push_back(std::move(d));
    }
    return out;
}

TransitionCounts transition_counts(const history::Revision& from, const history::Revision& to,
                                   const LineClassification& from_lines, const LineClassification& to_lines,
                                   std::span<const history::DiffScript> diffs) {
    if (from_lines.rev_id != from.id || to_lines.rev_id != to.id)
        fail(ErrorKind::Usage, "classifications for " + from_lines.rev_id + "/" + to_lines.rev_id +
                                   " do not match transition " + from.id + " -> " + to.id);
    TransitionCounts t{from.ordinal, from.id, to.id, 0, 0, from_lines.loc(), from_lines.loc_d(), from_lines.loc_n()};
    for (const auto& d : diffs) {
        const FileLines* old_file = d.old_path.empty() ? nullptr : from_lines.find(d.old_path);
        const FileLines* new_file = d.new_path.empty() ? nullptr : to_lines.find(d.new_path);
        for (const auto& h : d.hunks) {
            count_side(old_file, h.old_start, h.old_count, t.mc_d, t.mc_n);
            count_side(new_file, h.new_start, h.new_count, t.mc_d, t.mc_n);
        }
    }
    return t;
}

HottaResult compute_mf(std::vector<TransitionCounts> series) {
    if (series.empty())
        fail(ErrorKind::EmptyHistory, "modification frequency needs at least one transition");
    std::size_t mc_d = 0, mc_n = 0, loc = 0, loc_d = 0, loc_n = 0;
    for (const auto& t : series) {
        mc_d += t.mc_d;
        mc_n += t.mc_n;
        loc += t.loc;
        loc_d += t.loc_d;
        loc_n += t.loc_n;
    }
    const std::size_t transitions = series.size();
    auto mf = [&](std::size_t mc, std::size_t part, const char* which) {
        if (part == 0) {
            log::warn(std::string("no ") + which + " lines in any analyzed revision; MF set to 0");
            return Rational(0);
        }
        return ratio(mc, transitions) * ratio(loc, part);
    };
    HottaResult r;
    r.mf_d = mf(mc_d, loc_d, "cloned");
    r.mf_n = mf(mc_n, loc_n, "non-cloned");
    r.series = std::move(series);
    return r;
}

Date average_date(std::span<const Date> dates) {
    if (dates.empty())
        fail(ErrorKind::Domain, "average date of an empty set");
    const Date oldest = *std::min_element(dates.begin(), dates.end());
    std::int64_t total = 0;
    for (Date d : dates)
        total += days_between(oldest, d);
    return oldest + std::chrono::days(total / static_cast<std::int64_t>(dates.size()));
}

KrinkeResult krinke_metrics(const history::Revision& last, const history::BlameMap& blame,
                            const LineClassification& lines) {
    if (lines.rev_id != last.id)
        fail(ErrorKind::Usage, "classification for " + lines.rev_id + " used at " + last.id);
    KrinkeResult r;
    std::vector<Date> all_c, all_n;
    std::size_t older = 0, newer = 0;
    for (const auto& file : lines.files) {
        const auto& origins = origins_for(blame, file);
        std::vector<Date> c, n;
        for (std::size_t i = 0; i < origins.size(); ++i)
            (file.in_region[i] ? c : n).push_back(day_of(origins[i].origin_date));
        all_c.insert(all_c.end(), c.begin(), c.end());
        all_n.insert(all_n.end(), n.begin(), n.end());
        if (c.empty() || n.empty()) {
            ++r.excluded_files;
            continue;
        }
        ++r.analyzed_files;
        const Date fc = average_date(c), fn = average_date(n);
        if (fc < fn)
            ++older;
        else if (fn < fc)
            ++newer;
    }
    if (all_c.empty())
        log::warn("no cloned lines at " + last.id + "; ALC_c absent");
    else
        r.alc_c = average_date(all_c);
    if (all_n.empty())
        log::warn("no non-cloned lines at " + last.id + "; ALC_n absent");
    else
        r.alc_n = average_date(all_n);
    if (r.analyzed_files > 0) {
        r.pf_c = Rational(100) * ratio(older, r.analyzed_files);
        r.pf_n = Rational(100) * ratio(newer, r.analyzed_files);
    }
    return r;
}

VariantResult variant_metrics(const history::Revision& last, const history::BlameMap& blame,
                              const LineClassification& lines) {
    if (lines.rev_id != last.id)
        fail(ErrorKind::Usage, "classification for " + lines.rev_id + " used at " + last.id);
    const Date at = day_of(last.timestamp);
    std::int64_t sum_c = 0, sum_n = 0;
    VariantResult r;
    for (const auto& file : lines.files) {
        const auto& origins = origins_for(blame, file);
        for (std::size_t i = 0; i < origins.size(); ++i) {
            if (file.tags.tags[i] != lexnorm::LineTag::Code)
                continue;
            const std::int64_t age = days_between(day_of(origins[i].origin_date), at);
            if (file.cloned[i]) {
                sum_c += age;
                ++r.n_c;
            } else {
                sum_n += age;
                ++r.n_n;
            }
        }
    }
    if (r.n_c == 0)
        log::warn("no cloned code lines at " + last.id + "; AA_c absent");
    else
        r.aa_c = Rational(sum_c, static_cast<std::int64_t>(r.n_c));
    if (r.n_n == 0)
        log::warn("no non-cloned code lines at " + last.id + "; AA_n absent");
    else
        r.aa_n = Rational(sum_n, static_cast<std::int64_t>(r.n_n));
    return r;
}

void write_mf_series_csv(std::ostream& out, std::span<const TransitionCounts> series) {
    out << "ordinal_from,rev_from,rev_to,mc_d,mc_n,loc,loc_d,loc_n\n";
    for (const auto& t : series)
        out << t.ordinal_from << ',' << csv_field(t.rev_from) << ',' << csv_field(t.rev_to) << ',' << t.mc_d << ','
            << t.mc_n << ',' << t.loc << ',' << t.loc_d << ',' << t.loc_n << '\n';
}

}  // namespace clonestab::metrics
