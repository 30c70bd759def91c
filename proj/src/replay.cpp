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

#include "clonestab/replay.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "clonestab/csv.hpp"
#include "clonestab/error.hpp"

namespace clonestab::replay {

namespace {

using decision::AggregateRow;
using decision::Cell;
using decision::CellRow;
using decision::DecisionRow;
using decision::Method;
using decision::Verdict;

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos)
            return out;
        start = tab + 1;
    }
}

int parse_type(const std::string& text, const std::string& where) {
    if (text == "1" || text == "2" || text == "3")
        return text[0] - '0';
    fail(ErrorKind::Data, where + ": clone type must be 1, 2 or 3, got '" + text + "'");
}

Cell cell_from_symbol(const std::string& s, const std::string& where) {
    if (s == "+")
        return Cell::AllCloned;
    if (s == "-")
        return Cell::AllNonCloned;
    if (s == "x")
        return Cell::Conflict;
    fail(ErrorKind::Data, where + ": agreement cell must be +, - or x, got '" + s + "'");
}

const char* cell_symbol(Cell c) {
    switch (c) {
    case Cell::AllCloned:
        return "+";
    case Cell::AllNonCloned:
        return "-";
    case Cell::Conflict:
        break;
    }
    return "x";
}

std::optional<Rational> optional_pct(const std::string& s) {
    if (s == "-")
        return std::nullopt;
    return Rational::parse_decimal(s);
}

std::string pct_text(const std::optional<Rational>& p) { return p ? p->to_decimal(2) : ""; }

std::string type_key(const std::string& system, int type) { return system + " Type-" + std::to_string(type); }

// Compares a regenerated percentage with the printed one at two decimals.
void compare_pct(std::vector<Discrepancy>& out, const AggregateLine& line, const char* column, const Rational& mine,
                 std::size_t count, const std::optional<Rational>& printed) {
    if (!printed)
        return;
    const std::string regenerated = mine.to_decimal(2);
    if (Rational::parse_decimal(regenerated) == *printed)
        return;
    const double printed_count = printed->to_double() * static_cast<double>(line.row.total) / 100.0;
    const auto off = static_cast<long>(std::llround(std::abs(printed_count - static_cast<double>(count))));
    std::string note = off == 0 ? "rounding only"
                                : "differs by " + std::to_string(off) + " of " + std::to_string(line.row.total);
    out.push_back({"aggregate", line.row.label, "", line.grouping + ":" + column, regenerated, printed->to_decimal(2),
                   note});
}

}  // namespace

std::string PaperTables::language_of(const std::string& system) const {
    for (const auto& [name, lang] : systems)
        if (name == system)
            return lang;
    fail(ErrorKind::Data, "system '" + system + "' has no language record");
}

PaperTables parse_paper_tables(std::string_view text, const std::string& source) {
    PaperTables t;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;
        const std::string where = source + ":" + std::to_string(line_no);
        const auto f = split_tabs(line);
        auto need = [&](std::size_t n) {
            if (f.size() != n)
                fail(ErrorKind::Data, where + ": '" + f[0] + "' record needs " + std::to_string(n) + " fields, has " +
                                          std::to_string(f.size()));
        };
        try {
            if (f[0] == "system") {
                need(3);
                t.systems.emplace_back(f[1], f[2]);
            } else if (f[0] == "input") {
                need(9);
                t.inputs.push_back({f[1], parse_type(f[2], where), parse_dd_mon_yy(f[3]), parse_dd_mon_yy(f[4]),
                                    Rational::parse_decimal(f[5]), Rational::parse_decimal(f[6]),
                                    Rational::parse_decimal(f[7]), Rational::parse_decimal(f[8])});
            } else if (f[0] == "printed_decision") {
                need(6);
                const Method m = decision::parse_method(f[2]);
                for (int type = 1; type <= 3; ++type)
                    t.printed_decisions.push_back({f[1], "", type, m, decision::parse_verdict(f[2 + type])});
            } else if (f[0] == "printed_cell") {
                need(5);
                for (int type = 1; type <= 3; ++type)
                    t.printed_cells.push_back({f[1], "", type, cell_from_symbol(f[1 + type], where)});
            } else if (f[0] == "printed_aggregate") {
                need(6);
                t.printed_aggregates.push_back({f[1], f[2], optional_pct(f[3]), optional_pct(f[4]), optional_pct(f[5])});
            } else if (f[0] == "printed_count") {
                need(4);
                t.printed_counts.push_back({f[1], std::stoul(f[2]), std::stoul(f[3])});
            } else {
                fail(ErrorKind::Data, where + ": unknown record '" + f[0] + "'");
            }
        } catch (const Error& e) {
            if (std::string(e.what()).rfind(source, 0) == 0)
                throw;
            fail(ErrorKind::Data, where + ": " + e.what());
        } catch (const std::logic_error&) {
            fail(ErrorKind::Data, where + ": malformed number");
        }
    }
    for (auto& d : t.printed_decisions)
        d.language = t.language_of(d.system);
    for (auto& c : t.printed_cells)
        c.language = t.language_of(c.system);
    return t;
}

PaperTables read_paper_tables(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Config, "cannot read tables file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_paper_tables(buf.str(), path.string());
}

void write_paper_tables(std::ostream& out, const PaperTables& t) {
    out << "# Published study tables (regenerated outcomes).\n\n";
    for (const auto& [name, lang] : t.systems)
        out << "system\t" << name << '\t' << lang << '\n';
    out << '\n';
    for (const auto& in : t.inputs)
        out << "input\t" << in.system << '\t' << in.clone_type << '\t' << format_dd_mon_yy(in.alc_c) << '\t'
            << format_dd_mon_yy(in.alc_n) << '\t' << in.mf_d.to_decimal() << '\t' << in.mf_n.to_decimal() << '\t'
            << in.aa_c.to_decimal() << '\t' << in.aa_n.to_decimal() << '\n';
    out << '\n';
    std::map<std::pair<std::string, Method>, std::map<int, Verdict>> decisions;
    std::vector<std::pair<std::string, Method>> order;
    for (const auto& d : t.printed_decisions) {
        const auto key = std::make_pair(d.system, d.method);
        if (!decisions.count(key))
            order.push_back(key);
        decisions[key][d.clone_type] = d.verdict;
    }
    for (const auto& key : order) {
        out << "printed_decision\t" << key.first << '\t' << decision::to_string(key.second);
        for (int type = 1; type <= 3; ++type)
            out << '\t' << decision::to_string(decisions[key].at(type));
        out << '\n';
    }
    out << '\n';
    std::map<std::string, std::map<int, Cell>> cells;
    std::vector<std::string> cell_order;
    for (const auto& c : t.printed_cells) {
        if (!cells.count(c.system))
            cell_order.push_back(c.system);
        cells[c.system][c.clone_type] = c.cell;
    }
    for (const auto& s : cell_order) {
        out << "printed_cell\t" << s;
        for (int type = 1; type <= 3; ++type)
            out << '\t' << cell_symbol(cells[s].at(type));
        out << '\n';
    }
    out << '\n';
    auto opt = [](const std::optional<Rational>& p) { return p ? p->to_decimal(2) : std::string("-"); };
    for (const auto& a : t.printed_aggregates)
        out << "printed_aggregate\t" << a.grouping << '\t' << a.label << '\t' << opt(a.pct_cloned) << '\t'
            << opt(a.pct_non_cloned) << '\t' << opt(a.pct_conflict) << '\n';
    for (const auto& c : t.printed_counts)
        out << "printed_count\t" << c.what << '\t' << c.count << '\t' << c.total << '\n';
}

void validate(const PaperTables& t) {
    std::set<std::string> names;
    for (const auto& [name, lang] : t.systems)
        if (!names.insert(name).second)
            fail(ErrorKind::Data, "system '" + name + "' listed twice");
    std::map<std::string, int> seen;
    auto note = [&](const std::string& key) {
        if (++seen[key] > 1)
            fail(ErrorKind::Data, "duplicate entry " + key);
    };
    for (const auto& in : t.inputs) {
        if (!names.count(in.system))
            fail(ErrorKind::Data, "input for undeclared system '" + in.system + "'");
        note("input " + type_key(in.system, in.clone_type));
    }
    for (const auto& d : t.printed_decisions)
        note("decision " + type_key(d.system, d.clone_type) + " " + std::string(decision::to_string(d.method)));
    for (const auto& c : t.printed_cells)
        note("cell " + type_key(c.system, c.clone_type));

    std::string missing;
    auto require = [&](const std::string& key) {
        if (!seen.count(key))
            missing += (missing.empty() ? "" : ", ") + key;
    };
    for (const auto& [name, lang] : t.systems)
        for (int type = 1; type <= 3; ++type) {
            require("input " + type_key(name, type));
            for (Method m : decision::kMethods)
                require("decision " + type_key(name, type) + " " + std::string(decision::to_string(m)));
            require("cell " + type_key(name, type));
        }
    if (t.systems.empty())
        missing = "system records";
    if (!missing.empty())
        fail(ErrorKind::Data, "incomplete tables, missing: " + missing);
}

ReplayReport replay_paper(const PaperTables& t) {
    validate(t);
    ReplayReport r;

    std::map<std::pair<std::string, int>, const PaperInput*> inputs;
    for (const auto& in : t.inputs)
        inputs[{in.system, in.clone_type}] = &in;
    for (const auto& [system, lang] : t.systems)
        for (int type = 1; type <= 3; ++type) {
            const PaperInput& in = *inputs.at({system, type});
            // PF is not published, so an ALC tie stays undecided
            auto k = decision::decide_krinke(in.alc_c, in.alc_n, Rational(0), Rational(0));
            if (k.value == Verdict::Undecidable && in.alc_c == in.alc_n)
                k.reason = "ALC_c equals ALC_n and PF is not published";
            const auto h = decision::decide_hotta(in.mf_d, in.mf_n);
            const auto v = decision::decide_variant(in.aa_c, in.aa_n);
            for (const auto& d : {k, h, v}) {
                r.decisions.push_back({system, lang, type, d.method, d.value});
                r.reasons.push_back(d.reason);
            }
        }
    r.cells = decision::agreement_cells(r.decisions);
    r.cells_from_printed = decision::agreement_cells(t.printed_decisions);

    // regenerated vs printed decisions
    std::map<std::tuple<std::string, int, Method>, Verdict> printed;
    for (const auto& d : t.printed_decisions)
        printed[{d.system, d.clone_type, d.method}] = d.verdict;
    for (std::size_t i = 0; i < r.decisions.size(); ++i) {
        const auto& d = r.decisions[i];
        const Verdict p = printed.at({d.system, d.clone_type, d.method});
        if (p == d.verdict)
            continue;
        const PaperInput& in = *inputs.at({d.system, d.clone_type});
        std::string note;
        switch (d.method) {
        case Method::Krinke:
            note = r.reasons[i].empty() ? "printed decision contradicts ALC_c=" + format_dd_mon_yy(in.alc_c) +
                                              " ALC_n=" + format_dd_mon_yy(in.alc_n)
                                        : r.reasons[i];
            break;
        case Method::Hotta:
            note = "printed decision contradicts MF_d=" + in.mf_d.to_decimal() + " MF_n=" + in.mf_n.to_decimal();
            break;
        case Method::Variant:
            note = "printed decision contradicts AA_c=" + in.aa_c.to_decimal() + " AA_n=" + in.aa_n.to_decimal();
            break;
        }
        r.discrepancies.push_back({"decision", d.system, std::to_string(d.clone_type),
                                   std::string(decision::to_string(d.method)), std::string(decision::to_string(d.verdict)),
                                   std::string(decision::to_string(p)), note});
    }

    // agreement of the printed decisions vs the printed cells
    std::map<std::pair<std::string, int>, Cell> printed_cells;
    for (const auto& c : t.printed_cells)
        printed_cells[{c.system, c.clone_type}] = c.cell;
    for (const auto& c : r.cells_from_printed) {
        const Cell p = printed_cells.at({c.system, c.clone_type});
        if (p != c.cell)
            r.discrepancies.push_back({"agreement", c.system, std::to_string(c.clone_type), "",
                                       std::string(decision::to_string(c.cell)), std::string(decision::to_string(p)),
                                       "agreement of the printed decisions differs from the printed cell"});
    }

    // aggregates on both bases
    auto find_printed = [&](const std::string& grouping, const std::string& label) -> std::optional<PrintedAggregate> {
        for (const auto& a : t.printed_aggregates)
            if (a.grouping == grouping && a.label == label)
                return a;
        return std::nullopt;
    };
    auto add = [&](const std::string& basis, const std::string& grouping, const std::vector<AggregateRow>& rows) {
        for (const auto& row : rows)
            r.aggregates.push_back({basis, grouping, row, find_printed(grouping, row.label)});
    };
    std::vector<CellRow> published_cells = t.printed_cells;
    for (const char* basis : {"published", "regenerated"}) {
        const bool pub = std::string(basis) == "published";
        const auto& ds = pub ? t.printed_decisions : r.decisions;
        const auto& cs = pub ? published_cells : r.cells;
        add(basis, "by_method", decision::by_method(ds));
        add(basis, "by_clone_type", decision::by_clone_type(cs));
        add(basis, "by_language", decision::by_language(cs));
        add(basis, "global", {decision::global_ratio(ds)});
    }
    for (const auto& line : r.aggregates) {
        if (line.basis != "published" || !line.printed)
            continue;
        compare_pct(r.discrepancies, line, "pct_cloned", line.row.pct_cloned(), line.row.cloned, line.printed->pct_cloned);
        compare_pct(r.discrepancies, line, "pct_non_cloned", line.row.pct_non_cloned(), line.row.non_cloned,
                    line.printed->pct_non_cloned);
        compare_pct(r.discrepancies, line, "pct_conflict", line.row.pct_conflict(), line.row.conflict,
                    line.printed->pct_conflict);
    }

    for (const auto& c : t.printed_counts) {
        std::size_t mine = 0, total = 0;
        if (c.what == "non_cloned_decisions") {
            const auto g = decision::global_ratio(t.printed_decisions);
            mine = g.non_cloned;
            total = g.total;
        } else if (c.what == "conflict_cells") {
            total = t.printed_cells.size();
            mine = static_cast<std::size_t>(std::count_if(published_cells.begin(), published_cells.end(),
                                                          [](const CellRow& x) { return x.cell == Cell::Conflict; }));
        } else {
            continue;
        }
        if (mine != c.count || total != c.total)
            r.discrepancies.push_back({"count", "", "", c.what, std::to_string(mine) + "/" + std::to_string(total),
                                       std::to_string(c.count) + "/" + std::to_string(c.total),
                                       "recount of the printed tables"});
    }
    return r;
}

PaperTables regenerated_tables(const PaperTables& tables, const ReplayReport& report) {
    PaperTables t;
    t.systems = tables.systems;
    t.inputs = tables.inputs;
    t.printed_decisions = report.decisions;
    t.printed_cells = report.cells;
    for (const auto& line : report.aggregates) {
        if (line.basis != "regenerated")
            continue;
        auto two = [](const Rational& p) { return Rational::parse_decimal(p.to_decimal(2)); };
        t.printed_aggregates.push_back({line.grouping, line.row.label, two(line.row.pct_cloned()),
                                        two(line.row.pct_non_cloned()), two(line.row.pct_conflict())});
    }
    const auto g = decision::global_ratio(report.decisions);
    t.printed_counts.push_back({"non_cloned_decisions", g.non_cloned, g.total});
    t.printed_counts.push_back(
        {"conflict_cells",
         static_cast<std::size_t>(std::count_if(report.cells.begin(), report.cells.end(),
                                                [](const CellRow& c) { return c.cell == Cell::Conflict; })),
         report.cells.size()});
    return t;
}

void write_discrepancies_csv(std::ostream& out, const std::vector<Discrepancy>& rows) {
    out << "kind,system,clone_type,method,regenerated,printed,note\n";
    for (const auto& d : rows)
        out << d.kind << ',' << csv_field(d.system) << ',' << d.clone_type << ',' << csv_field(d.method) << ','
            << csv_field(d.regenerated) << ',' << csv_field(d.printed) << ',' << csv_field(d.note) << '\n';
}

void write_aggregates_csv(std::ostream& out, const std::vector<AggregateLine>& rows) {
    out << "basis,grouping,label,cloned,non_cloned,conflict,total,pct_cloned,pct_non_cloned,pct_conflict,"
           "printed_pct_cloned,printed_pct_non_cloned,printed_pct_conflict\n";
    for (const auto& a : rows) {
        out << a.basis << ',' << a.grouping << ',' << csv_field(a.row.label) << ',' << a.row.cloned << ','
            << a.row.non_cloned << ',' << a.row.conflict << ',' << a.row.total << ','
            << a.row.pct_cloned().to_decimal(2) << ',' << a.row.pct_non_cloned().to_decimal(2) << ','
            << a.row.pct_conflict().to_decimal(2);
        if (a.printed)
            out << ',' << pct_text(a.printed->pct_cloned) << ',' << pct_text(a.printed->pct_non_cloned) << ','
                << pct_text(a.printed->pct_conflict);
        else
            out << ",,,";
        out << '\n';
    }
}

void write_report(const ReplayReport& report, const PaperTables& tables, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    auto open = [&](const char* name) {
        std::ofstream f(out_dir / name, std::ios::binary);
        if (!f)
            fail(ErrorKind::Config, "cannot write " + (out_dir / name).string());
        return f;
    };
    {
        auto f = open("decisions.csv");
        decision::write_decisions_csv(f, report.decisions);
    }
    {
        auto f = open("agreement.csv");
        decision::write_agreement_csv(f, report.cells);
    }
    {
        auto f = open("agreement_published.csv");
        decision::write_agreement_csv(f, report.cells_from_printed);
    }
    {
        auto f = open("discrepancies.csv");
        write_discrepancies_csv(f, report.discrepancies);
    }
    {
        auto f = open("aggregates.csv");
        write_aggregates_csv(f, report.aggregates);
    }
    {
        auto f = open("regenerated_tables.tsv");
        write_paper_tables(f, regenerated_tables(tables, report));
    }
}

}  // namespace clonestab::replay
