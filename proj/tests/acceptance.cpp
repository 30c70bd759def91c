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

// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
// 1 if any criterion fails. `--skip-scale` leaves out the long history.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "clonestab/clonedetect.hpp"
#include "clonestab/decision.hpp"
#include "clonestab/error.hpp"
#include "clonestab/fixture.hpp"
#include "clonestab/lexnorm.hpp"
#include "clonestab/log.hpp"
#include "clonestab/pipeline.hpp"
#include "clonestab/replay.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace clonestab;
namespace fs = std::filesystem;
using decision::Cell;
using decision::Method;
using decision::Verdict;
using Clock = std::chrono::steady_clock;

namespace {

// Collects failed checks for one criterion; the first few are echoed.
class Verdicts {
public:
    void check(bool ok, const std::string& what) {
        if (ok)
            return;
        if (failures_.size() < 8)
            failures_.push_back(what);
        ++failed_;
    }
    void note(const std::string& line) { notes_.push_back(line); }
    bool ok() const { return failed_ == 0; }
    std::size_t failed() const { return failed_; }
    const std::vector<std::string>& failures() const { return failures_; }
    const std::vector<std::string>& notes() const { return notes_; }

private:
    std::size_t failed_ = 0;
    std::vector<std::string> failures_, notes_;
};

int g_failed = 0;

void criterion(int n, const std::string& title, const std::function<std::string(Verdicts&)>& body) {
    Verdicts v;
    std::string summary;
    const auto t0 = Clock::now();
    try {
        summary = body(v);
    } catch (const std::exception& e) {
        v.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::ostringstream time;
    time.setf(std::ios::fixed);
    time.precision(2);
    time << secs;
    std::cout << (v.ok() ? "PASS" : "FAIL") << "  " << n << ". " << title << " -- " << summary << " [" << time.str()
              << " s]\n";
    for (const auto& line : v.notes())
        std::cout << "        " << line << '\n';
    for (const auto& f : v.failures())
        std::cout << "        failed: " << f << '\n';
    if (!v.ok())
        ++g_failed;
}

const fs::path kTables = fs::path(CLONESTAB_DATA_DIR) / "paper_tables.tsv";

std::string type_str(int t) { return std::to_string(t); }

std::string ratio(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

const decision::DecisionRow* find_row(const std::vector<decision::DecisionRow>& rows, const std::string& system,
                                      int type, Method m) {
    for (const auto& r : rows)
        if (r.system == system && r.clone_type == type && r.method == m)
            return &r;
    return nullptr;
}

std::string column_match(Verdicts& v, const replay::PaperTables& t, const replay::ReplayReport& r, Method m,
                         std::size_t& matched) {
    matched = 0;
    std::vector<std::string> mismatched;
    for (const auto& printed : t.printed_decisions) {
        if (printed.method != m)
            continue;
        const auto* mine = find_row(r.decisions, printed.system, printed.clone_type, m);
        v.check(mine != nullptr, "no regenerated decision for " + printed.system);
        if (mine == nullptr)
            continue;
        if (mine->verdict == printed.verdict)
            ++matched;
        else
            mismatched.push_back(printed.system + " Type-" + type_str(printed.clone_type) + " (" +
                                 std::string(decision::to_string(mine->verdict)) + " vs printed " +
                                 std::string(decision::to_string(printed.verdict)) + ")");
    }
    std::string out;
    for (const auto& s : mismatched)
        out += (out.empty() ? "" : ", ") + s;
    return out;
}

void check_partition(Verdicts& v, const pipeline::AnalysisReport& r, const std::string& label) {
    for (const auto& t : r.types) {
        for (const auto& row : t.series)
            v.check(row.loc_d + row.loc_n == row.loc, label + ": LOC partition broken at transition " +
                                                          std::to_string(row.ordinal_from));
        v.check(t.loc_d + t.loc_n == t.loc, label + ": LOC partition broken at the last revision");
        const auto mean = t.variant.all_lines_mean();
        v.check(!mean || *mean == t.aa_all, label + ": weighted-mean identity");
    }
}

pipeline::RunConfig run_config(const fs::path& repo, const fs::path& out, const std::string& backend) {
    pipeline::RunConfig c;
    c.backend = backend;
    c.repo = repo;
    c.out = out;
    c.filter = history::PathFilter::parse("*.c");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const bool skip_scale = argc > 1 && std::string(argv[1]) == "--skip-scale";
    log::Capture quiet;  // warnings are expected in edge cases; keep the report readable

    const auto tables = replay::read_paper_tables(kTables);
    const auto replayed = replay::replay_paper(tables);
    testing::TempDir work("clonestab-acceptance");

    criterion(1, "published replay, Hotta column", [&](Verdicts& v) {
        std::size_t matched = 0;
        const auto miss = column_match(v, tables, replayed, Method::Hotta, matched);
        v.check(matched == 39, "mismatches: " + miss);
        return ratio(matched, 39) + " cells match";
    });

    criterion(2, "published replay, Variant column", [&](Verdicts& v) {
        std::size_t matched = 0;
        const auto miss = column_match(v, tables, replayed, Method::Variant, matched);
        v.check(matched >= 37, "only " + ratio(matched, 39));
        std::set<std::string> flagged;
        for (const auto& d : replayed.discrepancies)
            if (d.kind == "decision" && d.method == "variant")
                flagged.insert(d.system + " Type-" + d.clone_type);
        v.check(flagged == std::set<std::string>{"DNSJava Type-2", "GreenShot Type-2"},
                "discrepancy report names: " + miss);
        return ratio(matched, 39) + " match; flagged: " + miss;
    });

    criterion(3, "published replay, Krinke column and discrepancy report", [&](Verdicts& v) {
        std::size_t matched = 0;
        const auto miss = column_match(v, tables, replayed, Method::Krinke, matched);
        std::size_t produced = 0;
        for (const auto& d : replayed.decisions)
            produced += d.method == Method::Krinke;
        v.check(produced == 39, "Krinke column has " + std::to_string(produced) + " decisions");
        const fs::path out = work / "replay";
        replay::write_report(replayed, tables, out);
        const auto disc = testing::read_text(out / "discrepancies.csv");
        std::size_t rows = 0;
        std::istringstream lines(disc);
        for (std::string line; std::getline(lines, line);)
            rows += line.rfind("decision,", 0) == 0 && line.find(",krinke,") != std::string::npos;
        v.check(rows == 39 - matched, "discrepancies.csv lists " + std::to_string(rows) + " Krinke rows");
        v.note("Krinke mismatches: " + miss);
        return std::to_string(produced) + " decisions, " + ratio(matched, 39) + " match printed, " +
               std::to_string(rows) + " itemized in discrepancies.csv";
    });

    criterion(4, "agreement over printed decisions reproduces the printed agreement table", [&](Verdicts& v) {
        std::size_t matched = 0;
        for (const auto& printed : tables.printed_cells)
            for (const auto& mine : replayed.cells_from_printed)
                if (mine.system == printed.system && mine.clone_type == printed.clone_type) {
                    v.check(mine.cell == printed.cell, printed.system + " Type-" + type_str(printed.clone_type));
                    matched += mine.cell == printed.cell;
                }
        v.check(tables.printed_cells.size() == 39, "expected 39 printed cells");
        return ratio(matched, 39) + " cells";
    });

    criterion(5, "aggregates by clone type, language and method", [&](Verdicts& v) {
        // independent recount from the printed cells
        std::map<std::string, std::array<int, 4>> counts;  // label -> +, -, x, total
        for (const auto& c : tables.printed_cells) {
            const int k = c.cell == Cell::AllCloned ? 0 : c.cell == Cell::AllNonCloned ? 1 : 2;
            for (const auto& label : {"type-" + type_str(c.clone_type), tables.language_of(c.system)}) {
                ++counts[label][k];
                ++counts[label][3];
            }
        }
        const std::map<std::string, std::array<double, 3>> derived = {
            {"type-1", {23.08, 46.15, 30.77}}, {"type-2", {23.08, 30.77, 46.15}}, {"type-3", {30.77, 7.69, 61.54}},
            {"Java", {16.67, 50, 33.33}},      {"C", {26.67, 33.33, 40}},         {"C#", {33.33, 0, 66.67}}};
        std::size_t rows = 0;
        for (const auto& line : replayed.aggregates) {
            if (line.basis != "published")
                continue;
            const auto& row = line.row;
            const double got[3] = {row.pct_cloned().to_double(), row.pct_non_cloned().to_double(),
                                   row.pct_conflict().to_double()};
            if (line.grouping == "by_clone_type" || line.grouping == "by_language") {
                ++rows;
                const auto& c = counts[row.label];
                v.check(row.cloned == std::size_t(c[0]) && row.non_cloned == std::size_t(c[1]) &&
                            row.conflict == std::size_t(c[2]) && row.total == std::size_t(c[3]),
                        row.label + ": counts differ from recount");
                const auto& want = derived.at(row.label);
                if (!line.printed) {
                    v.check(false, row.label + ": no printed row");
                    continue;
                }
                const std::optional<Rational> printed[3] = {line.printed->pct_cloned, line.printed->pct_non_cloned,
                                                            line.printed->pct_conflict};
                for (int k = 0; k < 3; ++k) {
                    v.check(std::abs(got[k] - want[k]) < 0.005, row.label + ": regenerated " + std::to_string(got[k]));
                    v.check(printed[k] && std::abs(got[k] - printed[k]->to_double()) <= 0.05,
                            row.label + ": printed value off by more than 0.05");
                }
            } else if (line.grouping == "by_method") {
                ++rows;
                if (!line.printed)
                    continue;
                const double diff_c = std::abs(got[0] - line.printed->pct_cloned->to_double());
                const double diff_n = std::abs(got[1] - line.printed->pct_non_cloned->to_double());
                v.check(diff_c <= 2.6 && diff_n <= 2.6, row.label + ": more than one decision point apart");
                std::ostringstream s;
                s.setf(std::ios::fixed);
                s.precision(2);
                s << "by_method " << row.label << ": recount " << got[0] << "/" << got[1] << " vs printed "
                  << line.printed->pct_cloned->to_double() << "/" << line.printed->pct_non_cloned->to_double();
                if (diff_c > 0.05 || diff_n > 0.05) {
                    const auto printed_plus = std::lround(line.printed->pct_cloned->to_double() * row.total / 100);
                    s << "  <- mismatch: " << row.cloned << " (+) of " << row.total << " recounted, printed implies "
                      << printed_plus;
                }
                v.note(s.str());
            }
        }
        v.check(rows == 9, "expected 9 aggregate rows, saw " + std::to_string(rows));
        return "type and language rows within 0.05 of printed, method rows within one decision point";
    });

    criterion(6, "six-revision fixture equals the brute-force oracle", [&](Verdicts& v) {
        const auto t0 = Clock::now();
        fixture::write_snapshots(fixture::read_spec(fs::path(CLONESTAB_TEST_DATA) / "six_revisions.spec"),
                                 work / "six");
        const auto r = pipeline::analyze(run_config(work / "six", work / "six-out", "snapshots"));
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        v.check(secs < 5, "took " + std::to_string(secs) + " s");
        std::size_t values = 0;
        for (const auto& t : r.types) {
            const auto& e = testing::six_revisions_oracle().at(t.clone_type);
            const std::string tag = "type-" + type_str(t.clone_type) + " ";
            v.check(t.series.size() == e.series.size(), tag + "transition count");
            for (std::size_t i = 0; i < std::min(t.series.size(), e.series.size()); ++i) {
                const auto& s = t.series[i];
                v.check(std::array{s.mc_d, s.mc_n, s.loc, s.loc_d, s.loc_n} == e.series[i],
                        tag + "transition " + std::to_string(i));
                ++values;
            }
            v.check(t.hotta && t.hotta->mf_d == e.mf_d && t.hotta->mf_n == e.mf_n, tag + "MF");
            v.check(t.krinke.alc_c && format_ymd(*t.krinke.alc_c) == e.alc_c, tag + "ALC_c");
            v.check(t.krinke.alc_n && format_ymd(*t.krinke.alc_n) == e.alc_n, tag + "ALC_n");
            v.check(t.krinke.pf_c == e.pf_c && t.krinke.pf_n == e.pf_n, tag + "PF");
            v.check(t.variant.aa_c == e.aa_c && t.variant.aa_n == e.aa_n, tag + "AA");
            values += 8;
        }
        check_partition(v, r, "six");
        return std::to_string(values) + " values across 3 clone types, exact";
    });

    criterion(7, "property suites", [&](Verdicts& v) {
        std::mt19937_64 rng(7);
        // clone-type nesting on the generated corpus
        for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
            std::vector<lexnorm::Block> blocks;
            for (const auto& f : testing::generated_corpus(seed)) {
                const auto b = lexnorm::extract_blocks(f, lexnorm::classify_physical_lines(f));
                blocks.insert(blocks.end(), b.begin(), b.end());
            }
            v.check(blocks.size() == 50, "corpus should yield 50 blocks");
            std::vector<lexnorm::Block> renamed;
            for (const auto& b : blocks)
                renamed.push_back(lexnorm::blind_rename(b));
            using P = std::vector<std::pair<std::size_t, std::size_t>>;
            P prev;
            for (int type = 1; type <= 3; ++type) {
                const auto cfg = clonedetect::CloneConfig::defaults(type);
                P pairs = clonedetect::clone_pairs(type == 1 ? blocks : renamed, cfg, clonedetect::Kernel::Parallel);
                std::sort(pairs.begin(), pairs.end());
                v.check(std::includes(pairs.begin(), pairs.end(), prev.begin(), prev.end()),
                        "pairs of type " + type_str(type - 1) + " not within type " + type_str(type));
                prev = pairs;
            }
        }
        // diff round trip
        for (int i = 0; i < 300; ++i) {
            const auto a = testing::random_lines(rng, 40, 6);
            const auto b = testing::mutate_lines(rng, a, 6);
            const auto d = history::diff_files({"x.c", a}, {"x.c", b});
            v.check(history::apply_diff(a, d, b) == b, "diff round trip, case " + std::to_string(i));
        }
        // blame backends agree on an exported fixture
        const fs::path snap = work / "six";
        fixture::export_to_git(snap, work / "six-git");
        const auto filter = history::PathFilter::parse("*.c");
        history::SnapshotRepository snaps(snap);
        const auto git = history::open_repository("git", work / "six-git");
        const auto srevs = snaps.list_revisions(filter);
        const auto grevs = git->list_revisions(filter);
        v.check(srevs.size() == grevs.size(), "revision lists differ in length");
        std::size_t blamed = 0;
        for (std::size_t i = 0; i < std::min(srevs.size(), grevs.size()); ++i) {
            const auto sb = snaps.compute_blame_all(srevs[i], filter);
            const auto gb = git->compute_blame_all(grevs[i], filter);
            v.check(sb.size() == gb.size(), "blamed file sets differ");
            for (const auto& [path, origins] : sb) {
                const auto it = gb.find(path);
                if (it == gb.end() || it->second.size() != origins.size()) {
                    v.check(false, "blame of " + path + " differs in shape");
                    continue;
                }
                for (std::size_t k = 0; k < origins.size(); ++k, ++blamed)
                    v.check(origins[k].origin_date == it->second[k].origin_date,
                            "blame origin differs at " + path + ":" + std::to_string(k + 1));
            }
        }
        // decision antisymmetry and invariances
        std::uniform_int_distribution<std::int64_t> num(0, 50), den(1, 9), day(-400, 400), k(1, 20);
        auto opposite = [](Verdict x) {
            return x == Verdict::ClonedMoreStable      ? Verdict::NonClonedMoreStable
                   : x == Verdict::NonClonedMoreStable ? Verdict::ClonedMoreStable
                                                       : Verdict::Undecidable;
        };
        const Date base = parse_ymd("2010-06-01");
        for (int i = 0; i < 2000; ++i) {
            const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), s(k(rng), den(rng));
            const auto h = decision::decide_hotta(a, b).value;
            v.check(decision::decide_hotta(b, a).value == opposite(h), "hotta antisymmetry");
            v.check(decision::decide_hotta(a * s, b * s).value == h, "hotta scale invariance");
            const auto va = decision::decide_variant(a, b).value;
            v.check(decision::decide_variant(b, a).value == opposite(va), "variant antisymmetry");
            v.check(decision::decide_variant(a * s, b * s).value == va, "variant scale invariance");
            const Date dc = base + std::chrono::days(day(rng) / 40), dn = base + std::chrono::days(day(rng) / 40);
            const Rational pc(num(rng) % 5), pn(num(rng) % 5);
            const auto kr = decision::decide_krinke(dc, dn, pc, pn).value;
            v.check(decision::decide_krinke(dn, dc, pn, pc).value == opposite(kr), "krinke antisymmetry");
            const auto shift = std::chrono::days(day(rng));
            v.check(decision::decide_krinke(dc + shift, dn + shift, pc, pn).value == kr, "krinke shift invariance");
        }
        // weighted-mean identity and LOC partition on every analyze run of this session
        const auto r = pipeline::analyze(run_config(work / "six-git", work / "six-git-out", "git"));
        check_partition(v, r, "six/git");
        return "nesting on 4 corpora, 300 diff round trips, " + std::to_string(blamed) +
               " blamed lines agree, 8000 decision checks, partition and mean identity on every run";
    });

    criterion(8, "counting vs aging divergence on the worked two-line history", [&](Verdicts& v) {
        fixture::write_snapshots(testing::divergence_spec(), work / "div");
        auto cfg = run_config(work / "div", work / "div-out", "snapshots");
        cfg.types = {1};
        const auto r = pipeline::analyze(cfg);
        check_partition(v, r, "divergence");
        const auto& t = r.types.at(0);
        v.check(t.hotta_decision.value == Verdict::NonClonedMoreStable, "Hotta should rank cloned code less stable");
        v.check(t.krinke_decision.value == Verdict::ClonedMoreStable, "Krinke should rank cloned code more stable");
        v.check(t.variant_decision.value == Verdict::ClonedMoreStable, "Variant should rank cloned code more stable");
        std::ostringstream s;
        s << "MF_d " << t.hotta->mf_d.to_decimal(4) << " > MF_n " << t.hotta->mf_n.to_decimal(4) << " (-); ALC_c "
          << format_ymd(*t.krinke.alc_c) << " older than ALC_n " << format_ymd(*t.krinke.alc_n) << " (+); AA_c "
          << t.variant.aa_c->to_decimal(2) << " > AA_n " << t.variant.aa_n->to_decimal(2) << " (+)";
        return s.str();
    });

    if (skip_scale) {
        std::cout << "SKIP  9. scale run (--skip-scale)\n";
    } else {
        criterion(9, "scale: ~17k LOC, 170 revisions, 3 clone types, cold cache", [&](Verdicts& v) {
            fixture::write_snapshots(testing::synthetic_history({}), work / "scale");
            auto cfg = run_config(work / "scale", work / "scale-out", "snapshots");
            cfg.cache_dir = work / "scale-cache";  // fresh, so cold
            const auto t0 = Clock::now();
            const auto r = pipeline::analyze(cfg);
            const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
            check_partition(v, r, "scale");
            v.check(!quiet.contains("unbalanced braces"), "generated sources failed to lex");
            v.check(r.revisions.size() == 170, "expected 170 revisions");
            v.check(r.cache_hits == 0, "cache was not cold");
            v.check(secs < 600, "took " + std::to_string(secs) + " s");
            std::ostringstream s;
            s.setf(std::ios::fixed);
            s.precision(1);
            s << r.revisions.size() << " revisions, " << r.types[0].loc << " LOC at the last revision, "
              << r.types[2].last_classes.size() << " type-3 classes, analyze " << secs << " s";
            return s.str();
        });
    }

    std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " criterion/criteria failed")
              << '\n';
    return g_failed == 0 ? 0 : 1;
}
