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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clonestab/clonedetect.hpp"
#include "clonestab/date.hpp"
#include "clonestab/history.hpp"
#include "clonestab/rational.hpp"

namespace clonestab::metrics {

struct TransitionCounts {
    std::size_t ordinal_from = 0;
    std::string rev_from;
    std::string rev_to;
    std::size_t mc_d = 0;
    std::size_t mc_n = 0;
    std::size_t loc = 0;  // at rev_from
    std::size_t loc_d = 0;
    std::size_t loc_n = 0;

    friend bool operator==(const TransitionCounts&, const TransitionCounts&) = default;
};

struct HottaResult {
    Rational mf_d;
    Rational mf_n;
    std::vector<TransitionCounts> series;
};

struct KrinkeResult {
    std::optional<Date> alc_c;  // absent without cloned lines
    std::optional<Date> alc_n;
    Rational pf_c;  // percent of analyzed files
    Rational pf_n;
    std::size_t analyzed_files = 0;
    std::size_t excluded_files = 0;
};

struct VariantResult {
    std::optional<Rational> aa_c;  // days; absent without cloned CODE lines
    std::optional<Rational> aa_n;
    std::size_t n_c = 0;
    std::size_t n_n = 0;

    /// Mean age over all CODE lines, from the two partial means.
    std::optional<Rational> all_lines_mean() const;
};

/// Line diffs between two filtered snapshot sets, one per path present on
/// either side with a non-empty script. A missing side diffs as an empty
/// file with an empty path.
std::vector<history::DiffScript> diff_snapshots(std::span<const history::FileSnapshot> from,
                                                std::span<const history::FileSnapshot> to);

/// Deleted CODE lines are judged against `from_lines` (classification at
/// r), added CODE lines against `to_lines` (at r+1). Usage error when a
/// classification belongs to another revision.
TransitionCounts transition_counts(const history::Revision& from, const history::Revision& to,
                                   const clonedetect::LineClassification& from_lines,
                                   const clonedetect::LineClassification& to_lines,
                                   std::span<const history::DiffScript> diffs);

/// MF_d = (ΣMC_d / |R|) · (ΣLOC / ΣLOC_d), |R| = number of transitions;
/// MF_n likewise. A zero line total gives 0 with a warning. EmptyHistory
/// for an empty series.
HottaResult compute_mf(std::vector<TransitionCounts> series);

/// Oldest date plus the mean distance from it over all entries, truncated
/// to whole days. Domain error when empty.
Date average_date(std::span<const Date> dates);

/// Last-change dates over raw physical lines: region lines are cloned,
/// every other line (comments and blanks included) non-cloned.
KrinkeResult krinke_metrics(const history::Revision& last, const history::BlameMap& blame,
                            const clonedetect::LineClassification& lines);

/// Mean line age in days over CODE lines, exact.
VariantResult variant_metrics(const history::Revision& last, const history::BlameMap& blame,
                              const clonedetect::LineClassification& lines);

/// `ordinal_from,rev_from,rev_to,mc_d,mc_n,loc,loc_d,loc_n`
void write_mf_series_csv(std::ostream& out, std::span<const TransitionCounts> series);

}  // namespace clonestab::metrics
