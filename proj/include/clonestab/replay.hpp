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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clonestab/date.hpp"
#include "clonestab/decision.hpp"
#include "clonestab/rational.hpp"

namespace clonestab::replay {

/// Published per-(system, clone type) measurements.
struct PaperInput {
    std::string system;
    int clone_type = 1;
    Date alc_c, alc_n;
    Rational mf_d, mf_n;
    Rational aa_c, aa_n;
};

struct PrintedAggregate {
    std::string grouping;  // by_method, by_clone_type, by_language, global
    std::string label;
    std::optional<Rational> pct_cloned, pct_non_cloned, pct_conflict;
};

struct PrintedCount {
    std::string what;  // non_cloned_decisions, conflict_cells
    std::size_t count = 0;
    std::size_t total = 0;
};

struct PaperTables {
    std::vector<std::pair<std::string, std::string>> systems;  // name, language
    std::vector<PaperInput> inputs;
    std::vector<decision::DecisionRow> printed_decisions;
    std::vector<decision::CellRow> printed_cells;
    std::vector<PrintedAggregate> printed_aggregates;
    std::vector<PrintedCount> printed_counts;

    std::string language_of(const std::string& system) const;
};

/// Tab-separated records; see data/paper_tables.tsv. Data error with the
/// line number on malformed input.
PaperTables parse_paper_tables(std::string_view text, const std::string& source = "<tables>");
PaperTables read_paper_tables(const std::filesystem::path& path);
void write_paper_tables(std::ostream& out, const PaperTables& tables);

/// Every system needs inputs, printed decisions (all methods) and printed
/// cells for types 1-3. Data error naming each missing cell.
void validate(const PaperTables& tables);

struct Discrepancy {
    std::string kind;  // decision, agreement, aggregate, count
    std::string system;
    std::string clone_type;
    std::string method;
    std::string regenerated;
    std::string printed;
    std::string note;
};

struct AggregateLine {
    std::string basis;  // published (from the printed decision/cell tables) or regenerated
    std::string grouping;
    decision::AggregateRow row;
    std::optional<PrintedAggregate> printed;
};

struct ReplayReport {
    std::vector<decision::DecisionRow> decisions;        // regenerated from the inputs
    std::vector<std::string> reasons;                    // parallel to decisions, empty unless undecidable
    std::vector<decision::CellRow> cells;                // agreement over the regenerated decisions
    std::vector<decision::CellRow> cells_from_printed;   // agreement over the printed decisions
    std::vector<Discrepancy> discrepancies;
    std::vector<AggregateLine> aggregates;
};

ReplayReport replay_paper(const PaperTables& tables);

/// The regenerated outcomes written back as printed values; replaying the
/// result reproduces it.
PaperTables regenerated_tables(const PaperTables& tables, const ReplayReport& report);

/// decisions.csv, agreement.csv, discrepancies.csv, aggregates.csv and
/// regenerated_tables.tsv under `out_dir`.
void write_report(const ReplayReport& report, const PaperTables& tables, const std::filesystem::path& out_dir);

void write_discrepancies_csv(std::ostream& out, const std::vector<Discrepancy>& rows);
void write_aggregates_csv(std::ostream& out, const std::vector<AggregateLine>& rows);

}  // namespace clonestab::replay
