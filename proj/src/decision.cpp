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

#include "clonestab/decision.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "clonestab/csv.hpp"
#include "clonestab/error.hpp"

namespace clonestab::decision {

namespace {

Verdict flip_if(bool cloned_more_stable) {
    return cloned_more_stable ? Verdict::ClonedMoreStable : Verdict::NonClonedMoreStable;
}

Rational pct(std::size_t part, std::size_t total) {
    if (total == 0)
        return Rational(0);
    return Rational(100) * Rational(static_cast<std::int64_t>(part), static_cast<std::int64_t>(total));
}

void tally(AggregateRow& row, Cell c) {
    ++row.total;
    switch (c) {
    case Cell::AllCloned:
        ++row.cloned;
        break;
    case Cell::AllNonCloned:
        ++row.non_cloned;
        break;
    case Cell::Conflict:
        ++row.conflict;
        break;
    }
}

std::string key_text(const std::string& system, int type) { return system + " Type-" + std::to_string(type); }

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
    case Method::Krinke:
        return "krinke";
    case Method::Hotta:
        return "hotta";
    case Method::Variant:
        return "variant";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::ClonedMoreStable:
        return "+";
    case Verdict::NonClonedMoreStable:
        return "-";
    case Verdict::Undecidable:
        return "undecidable";
    }
    return "?";
}

std::string_view to_string(Cell c) {
    switch (c) {
    case Cell::AllCloned:
        return "all_cloned";
    case Cell::AllNonCloned:
        return "all_noncloned";
    case Cell::Conflict:
        return "conflict";
    }
    return "?";
}

Method parse_method(std::string_view text) {
    for (Method m : kMethods)
        if (to_string(m) == text)
            return m;
    fail(ErrorKind::Data, "unknown method '" + std::string(text) + "'");
}

Verdict parse_verdict(std::string_view text) {
    if (text == "+" || text == "(+)")
        return Verdict::ClonedMoreStable;
    if (text == "-" || text == "(-)")
        return Verdict::NonClonedMoreStable;
    if (text == "undecidable")
        return Verdict::Undecidable;
    fail(ErrorKind::Data, "unknown decision '" + std::string(text) + "'");
}

Cell parse_cell(std::string_view text) {
    for (Cell c : {Cell::AllCloned, Cell::AllNonCloned, Cell::Conflict})
        if (to_string(c) == text)
            return c;
    fail(ErrorKind::Data, "unknown agreement cell '" + std::string(text) + "'");
}

Decision decide_hotta(const Rational& mf_d, const Rational& mf_n) {
    if (mf_d == mf_n)
        return {Verdict::Undecidable, Method::Hotta, "MF_d equals MF_n"};
    return {flip_if(mf_d < mf_n), Method::Hotta, {}};
}

Decision decide_krinke(std::optional<Date> alc_c, std::optional<Date> alc_n, const Rational& pf_c,
                       const Rational& pf_n) {
    if (!alc_c)
        return {Verdict::Undecidable, Method::Krinke, "ALC_c absent (no cloned lines)"};
    if (!alc_n)
        return {Verdict::Undecidable, Method::Krinke, "ALC_n absent (no non-cloned lines)"};
    if (*alc_c != *alc_n)
        return {flip_if(*alc_c < *alc_n), Method::Krinke, {}};
    if (pf_c == pf_n)
        return {Verdict::Undecidable, Method::Krinke, "ALC and PF both tied"};
    return {flip_if(pf_c > pf_n), Method::Krinke, {}};
}

Decision decide_variant(std::optional<Rational> aa_c, std::optional<Rational> aa_n) {
    if (!aa_c)
        return {Verdict::Undecidable, Method::Variant, "AA_c absent (no cloned code lines)"};
    if (!aa_n)
        return {Verdict::Undecidable, Method::Variant, "AA_n absent (no non-cloned code lines)"};
    if (*aa_c == *aa_n)
        return {Verdict::Undecidable, Method::Variant, "AA_c equals AA_n"};
    return {flip_if(*aa_c > *aa_n), Method::Variant, {}};
}

Cell agreement(Verdict krinke, Verdict hotta, Verdict variant) {
    if (krinke == hotta && hotta == variant) {
        if (krinke == Verdict::ClonedMoreStable)
            return Cell::AllCloned;
        if (krinke == Verdict::NonClonedMoreStable)
            return Cell::AllNonCloned;
    }
    return Cell::Conflict;
}

std::vector<CellRow> agreement_cells(std::span<const DecisionRow> decisions) {
    struct Group {
        std::string language;
        std::map<Method, Verdict> verdicts;
    };
    std::vector<std::pair<std::string, int>> order;
    std::map<std::pair<std::string, int>, Group> groups;
    for (const auto& d : decisions) {
        const auto key = std::make_pair(d.system, d.clone_type);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) {
            order.push_back(key);
            it->second.language = d.language;
        }
        if (!it->second.verdicts.emplace(d.method, d.verdict).second)
            fail(ErrorKind::Data, "duplicate " + std::string(to_string(d.method)) + " decision for " +
                                      key_text(d.system, d.clone_type));
    }
    std::string missing;
    std::vector<CellRow> out;
    for (const auto& key : order) {
        const auto& g = groups.at(key);
        for (Method m : kMethods)
            if (!g.verdicts.count(m))
                missing += (missing.empty() ? "" : ", ") + key_text(key.first, key.second) + " " +
                           std::string(to_string(m));
        if (g.verdicts.size() == 3)
            out.push_back({key.first, g.language, key.second,
                           agreement(g.verdicts.at(Method::Krinke), g.verdicts.at(Method::Hotta),
                                     g.verdicts.at(Method::Variant))});
    }
    if (!missing.empty())
        fail(ErrorKind::Data, "missing decisions: " + missing);
    return out;
}

Rational AggregateRow::pct_cloned() const { return pct(cloned, total); }
Rational AggregateRow::pct_non_cloned() const { return pct(non_cloned, total); }
Rational AggregateRow::pct_conflict() const { return pct(conflict, total); }

std::vector<AggregateRow> by_method(std::span<const DecisionRow> decisions) {
    std::vector<AggregateRow> rows;
    for (Method m : kMethods) {
        std::vector<DecisionRow> mine;
        std::copy_if(decisions.begin(), decisions.end(), std::back_inserter(mine),
                     [m](const DecisionRow& d) { return d.method == m; });
        AggregateRow row = global_ratio(mine);
        row.label = std::string(to_string(m));
        rows.push_back(row);
    }
    return rows;
}

std::vector<AggregateRow> by_clone_type(std::span<const CellRow> cells) {
    std::map<int, AggregateRow> rows;
    for (const auto& c : cells) {
        auto& row = rows[c.clone_type];
        row.label = "type-" + std::to_string(c.clone_type);
        tally(row, c.cell);
    }
    std::vector<AggregateRow> out;
    for (auto& [type, row] : rows)
        out.push_back(row);
    return out;
}

std::vector<AggregateRow> by_language(std::span<const CellRow> cells) {
    std::vector<AggregateRow> out;
    for (const auto& c : cells) {
        auto it = std::find_if(out.begin(), out.end(), [&](const AggregateRow& r) { return r.label == c.language; });
        if (it == out.end()) {
            out.push_back({c.language});
            it = std::prev(out.end());
        }
        tally(*it, c.cell);
    }
    return out;
}

AggregateRow global_ratio(std::span<const DecisionRow> decisions) {
    AggregateRow row{"all"};
    for (const auto& d : decisions) {
        ++row.total;
        if (d.verdict == Verdict::ClonedMoreStable)
            ++row.cloned;
        else if (d.verdict == Verdict::NonClonedMoreStable)
            ++row.non_cloned;
        else
            ++row.conflict;
    }
    return row;
}

void require_complete(std::span<const DecisionRow> decisions, std::span<const int> types) {
    std::vector<std::string> systems;
    std::set<std::tuple<std::string, int, Method>> have;
    for (const auto& d : decisions) {
        if (std::find(systems.begin(), systems.end(), d.system) == systems.end())
            systems.push_back(d.system);
        have.emplace(d.system, d.clone_type, d.method);
    }
    std::string missing;
    for (const auto& s : systems)
        for (int t : types)
            for (Method m : kMethods)
                if (!have.count({s, t, m}))
                    missing += (missing.empty() ? "" : ", ") + key_text(s, t) + " " + std::string(to_string(m));
    if (!missing.empty())
        fail(ErrorKind::Data, "missing decisions: " + missing);
}

void require_complete(std::span<const CellRow> cells, std::span<const int> types) {
    std::vector<std::string> systems;
    std::set<std::pair<std::string, int>> have;
    for (const auto& c : cells) {
        if (std::find(systems.begin(), systems.end(), c.system) == systems.end())
            systems.push_back(c.system);
        have.emplace(c.system, c.clone_type);
    }
    std::string missing;
    for (const auto& s : systems)
        for (int t : types)
            if (!have.count({s, t}))
                missing += (missing.empty() ? "" : ", ") + key_text(s, t);
    if (!missing.empty())
        fail(ErrorKind::Data, "missing agreement cells: " + missing);
}

void write_decisions_csv(std::ostream& out, std::span<const DecisionRow> rows) {
    out << "system,language,clone_type,method,decision\n";
    for (const auto& r : rows)
        out << csv_field(r.system) << ',' << csv_field(r.language) << ',' << r.clone_type << ','
            << to_string(r.method) << ',' << to_string(r.verdict) << '\n';
}

void write_agreement_csv(std::ostream& out, std::span<const CellRow> rows) {
    out << "system,language,clone_type,cell\n";
    for (const auto& r : rows)
        out << csv_field(r.system) << ',' << csv_field(r.language) << ',' << r.clone_type << ',' << to_string(r.cell)
            << '\n';
}

}  // namespace clonestab::decision
