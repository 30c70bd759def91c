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
#include <string_view>
#include <vector>

#include "clonestab/date.hpp"
#include "clonestab/rational.hpp"

namespace clonestab::decision {

enum class Method { Krinke, Hotta, Variant };
enum class Verdict { ClonedMoreStable, NonClonedMoreStable, Undecidable };
enum class Cell { AllCloned, AllNonCloned, Conflict };

constexpr Method kMethods[] = {Method::Krinke, Method::Hotta, Method::Variant};

std::string_view to_string(Method m);   // krinke, hotta, variant
std::string_view to_string(Verdict v);  // +, -, undecidable
std::string_view to_string(Cell c);     // all_cloned, all_noncloned, conflict
Method parse_method(std::string_view text);
Verdict parse_verdict(std::string_view text);  // also accepts (+) / (-)
Cell parse_cell(std::string_view text);

struct Decision {
    Verdict value = Verdict::Undecidable;
    Method method = Method::Hotta;
    std::string reason;  // set when undecidable
};

/// MF_d < MF_n: cloned code more stable.
Decision decide_hotta(const Rational& mf_d, const Rational& mf_n);

/// Older ALC_c: cloned more stable. Equal dates fall back to PF_c vs PF_n.
Decision decide_krinke(std::optional<Date> alc_c, std::optional<Date> alc_n, const Rational& pf_c,
                       const Rational& pf_n);

/// AA_c > AA_n: cloned more stable.
Decision decide_variant(std::optional<Rational> aa_c, std::optional<Rational> aa_n);

/// All three (+) or all three (-), otherwise conflict.
Cell agreement(Verdict krinke, Verdict hotta, Verdict variant);

struct DecisionRow {
    std::string system;
    std::string language;
    int clone_type = 1;
    Method method = Method::Hotta;
    Verdict verdict = Verdict::Undecidable;
};

struct CellRow {
    std::string system;
    std::string language;
    int clone_type = 1;
    Cell cell = Cell::Conflict;
};

/// Agreement per (system, clone_type), in first-seen order. Throws Data
/// naming every (system, type, method) with no decision.
std::vector<CellRow> agreement_cells(std::span<const DecisionRow> decisions);

struct AggregateRow {
    std::string label;
    std::size_t cloned = 0;
    std::size_t non_cloned = 0;
    std::size_t conflict = 0;  // by_method: undecidable points
    std::size_t total = 0;

    Rational pct_cloned() const;
    Rational pct_non_cloned() const;
    Rational pct_conflict() const;
};

/// Share of (+) and (-) decision points per method, Krinke/Hotta/Variant order.
std::vector<AggregateRow> by_method(std::span<const DecisionRow> decisions);
/// Share of cell kinds per clone type over the systems.
std::vector<AggregateRow> by_clone_type(std::span<const CellRow> cells);
/// Share of cell kinds per language, first-seen order.
std::vector<AggregateRow> by_language(std::span<const CellRow> cells);
/// (+), (-) and undecidable over every decision point of every method.
AggregateRow global_ratio(std::span<const DecisionRow> decisions);

/// Checks that every system has all of `types` (and, for decisions, all
/// three methods). Throws Data listing what is missing.
void require_complete(std::span<const DecisionRow> decisions, std::span<const int> types);
void require_complete(std::span<const CellRow> cells, std::span<const int> types);

/// `system,language,clone_type,method,decision`
void write_decisions_csv(std::ostream& out, std::span<const DecisionRow> rows);
/// `system,language,clone_type,cell`
void write_agreement_csv(std::ostream& out, std::span<const CellRow> rows);

}  // namespace clonestab::decision
