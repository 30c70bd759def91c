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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "clonestab/clonedetect.hpp"
#include "clonestab/decision.hpp"
#include "clonestab/history.hpp"
#include "clonestab/metrics.hpp"

namespace clonestab::pipeline {

struct RunConfig {
    std::string backend = "git";  // git | snapshots
    std::filesystem::path repo;
    history::PathFilter filter = history::PathFilter::parse("*.c,*.h");
    std::vector<int> types = {1, 2, 3};
    std::size_t min_block_lines = 5;
    std::filesystem::path out;
    std::string system = "system";
    std::string language = "C";
    /// Detection cache; empty means `<out>/.cache`.
    std::filesystem::path cache_dir;
    bool use_cache = true;
    /// Per-revision clone CSVs under `<out>/type-N/clones/`.
    bool export_revision_clones = true;

    /// Usage/config errors for empty type lists, unknown types and the like.
    void validate() const;
    clonedetect::CloneConfig clone_config(int type) const;
    std::filesystem::path effective_cache_dir() const;
};

struct TypeReport {
    int clone_type = 1;
    std::optional<metrics::HottaResult> hotta;  // absent without transitions
    std::string mf_error;
    std::vector<metrics::TransitionCounts> series;
    metrics::KrinkeResult krinke;
    metrics::VariantResult variant;
    Rational aa_all;  // direct all-CODE-lines mean age
    std::size_t loc = 0, loc_d = 0, loc_n = 0;  // at the last revision
    decision::Decision krinke_decision, hotta_decision, variant_decision;
    decision::Cell cell = decision::Cell::Conflict;
    std::vector<clonedetect::CloneClass> last_classes;
    std::vector<std::vector<clonedetect::CloneClass>> revision_classes;  // when exported
};

struct AnalysisReport {
    std::string system;
    std::string language;
    std::vector<history::Revision> revisions;
    std::vector<TypeReport> types;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;
};

/// Full pipeline over an open repository.
AnalysisReport analyze(const RunConfig& config, const history::Repository& repo);
/// Opens the configured repository, analyzes, writes the bundle.
AnalysisReport analyze(const RunConfig& config);

/// metrics.json, decisions.csv, agreement.csv, clones.csv and
/// type-N/mf_series.csv (+ type-N/clones/rev-NNNN.csv) under config.out.
void write_bundle(const AnalysisReport& report, const RunConfig& config);

/// The decision rows of a report, Krinke/Hotta/Variant per type.
std::vector<decision::DecisionRow> decision_rows(const AnalysisReport& report);

}  // namespace clonestab::pipeline
