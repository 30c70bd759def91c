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

// clonestab: stability of cloned vs non-cloned code over a version history.

#include <omp.h>

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "clonestab/error.hpp"
#include "clonestab/fixture.hpp"
#include "clonestab/pipeline.hpp"
#include "clonestab/replay.hpp"

namespace fs = std::filesystem;
using namespace clonestab;

namespace {

std::vector<int> parse_types(const std::string& csv) {
    std::vector<int> types;
    std::stringstream in(csv);
    for (std::string item; std::getline(in, item, ',');) {
        if (item.empty())
            continue;
        try {
            std::size_t used = 0;
            const int t = std::stoi(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            types.push_back(t);
        } catch (const std::logic_error&) {
            fail(ErrorKind::Usage, "--types expects a comma-separated list of 1, 2, 3; got '" + item + "'");
        }
    }
    return types;
}

int run_analyze(const pipeline::RunConfig& config) {
    const auto report = pipeline::analyze(config);
    std::cout << report.system << ": " << report.revisions.size() << " revisions, cache " << report.cache_hits
              << " hit / " << report.cache_misses << " miss\n";
    for (const auto& t : report.types)
        std::cout << "  type-" << t.clone_type << "  krinke " << decision::to_string(t.krinke_decision.value)
                  << "  hotta " << decision::to_string(t.hotta_decision.value) << "  variant "
                  << decision::to_string(t.variant_decision.value) << "  -> " << decision::to_string(t.cell) << '\n';
    std::cout << "bundle written to " << config.out.string() << '\n';
    return 0;
}

int run_replay(const fs::path& tables_file, const fs::path& out) {
    const auto tables = replay::read_paper_tables(tables_file);
    const auto report = replay::replay_paper(tables);
    replay::write_report(report, tables, out);
    std::size_t by_kind[4] = {};
    for (const auto& d : report.discrepancies)
        ++by_kind[d.kind == "decision" ? 0 : d.kind == "agreement" ? 1 : d.kind == "aggregate" ? 2 : 3];
    std::cout << report.decisions.size() << " decisions, " << report.cells.size() << " agreement cells\n"
              << "discrepancies: " << by_kind[0] << " decision, " << by_kind[1] << " agreement, " << by_kind[2]
              << " aggregate, " << by_kind[3] << " count\n"
              << "report written to " << out.string() << '\n';
    return 0;
}

int run_make_fixture(const fs::path& spec, const fs::path& out) {
    const auto parsed = fixture::read_spec(spec);
    fixture::write_snapshots(parsed, out);
    std::cout << parsed.revisions.size() << " revisions written to " << out.string() << '\n';
    return 0;
}

int run_blame(const std::string& backend, const fs::path& repo_path, const std::string& rev_id,
              const std::string& file) {
    const auto repo = history::open_repository(backend, repo_path);
    const auto revs = repo->list_revisions(history::PathFilter::parse("*"));
    const history::Revision* rev = nullptr;
    for (const auto& r : revs) {
        if (r.id == rev_id)
            rev = &r;
        else if (backend == "git" && rev_id.size() >= 4 && r.id.rfind(rev_id, 0) == 0) {
            if (rev != nullptr && rev->id != rev_id)
                fail(ErrorKind::Usage, "revision prefix " + rev_id + " is ambiguous");
            rev = &r;
        }
    }
    if (rev == nullptr)
        fail(ErrorKind::NotFound, "revision " + rev_id + " not found in " + repo->describe());
    const auto files = repo->read_snapshot(*rev, history::PathFilter::exact(file));
    if (files.empty())
        fail(ErrorKind::NotFound, file + " does not exist at revision " + rev->id);
    const auto origins = repo->compute_blame(*rev, file);
    for (std::size_t i = 0; i < origins.size(); ++i)
        std::cout << origins[i].line_no << '\t' << origins[i].origin_rev << '\t'
                  << format_ymd(day_of(origins[i].origin_date)) << '\t' << files[0].lines[i] << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compare the stability of cloned and non-cloned code across a version history"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "clonestab 0.1.0");

    pipeline::RunConfig config;
    std::string types = "1,2,3";
    std::string globs = "*.c,*.h";
    int threads = 0;
    bool no_cache = false;
    bool no_revision_clones = false;
    auto* analyze = app.add_subcommand("analyze", "run all three methods over a history and write a report bundle");
    analyze->add_option("--repo", config.repo, "git work tree or snapshot directory")->required();
    analyze->add_option("--backend", config.backend, "git | snapshots")
        ->check(CLI::IsMember({"git", "snapshots"}))
        ->capture_default_str();
    analyze->add_option("--types", types, "clone types to run, comma-separated")->capture_default_str();
    analyze->add_option("--glob", globs, "comma-separated file globs")->capture_default_str();
    analyze->add_option("--min-block-lines", config.min_block_lines, "smallest block entering detection")
        ->capture_default_str();
    analyze->add_option("--out", config.out, "output directory")->required();
    analyze->add_option("--system", config.system, "system label")->capture_default_str();
    analyze->add_option("--language", config.language, "language label")->capture_default_str();
    analyze->add_option("--cache-dir", config.cache_dir, "detection cache (default <out>/.cache)");
    analyze->add_flag("--no-cache", no_cache, "neither read nor write the detection cache");
    analyze->add_flag("--no-revision-clones", no_revision_clones, "skip type-N/clones/rev-NNNN.csv");
    analyze->add_option("--threads", threads, "worker threads (default: OpenMP default)");

    fs::path tables = CLONESTAB_DEFAULT_TABLES;
    fs::path replay_out;
    auto* replay = app.add_subcommand("replay-paper", "recompute decisions and aggregates from published tables");
    replay->add_option("--tables", tables, "tab-separated tables file")->capture_default_str();
    replay->add_option("--out", replay_out, "output directory")->required();

    fs::path spec, fixture_out;
    auto* make_fixture = app.add_subcommand("make-fixture", "materialize a fixture spec as a snapshot directory");
    make_fixture->add_option("--spec", spec, "fixture spec file")->required();
    make_fixture->add_option("--out", fixture_out, "snapshot directory (absent or empty)")->required();

    std::string blame_backend = "git", rev, file;
    fs::path blame_repo;
    auto* blame = app.add_subcommand("blame", "print the origin of every line of a file at a revision");
    blame->add_option("--repo", blame_repo, "git work tree or snapshot directory")->required();
    blame->add_option("--backend", blame_backend, "git | snapshots")
        ->check(CLI::IsMember({"git", "snapshots"}))
        ->capture_default_str();
    blame->add_option("--rev", rev, "revision id (git: full hash or unique prefix)")->required();
    blame->add_option("--file", file, "path relative to the repository root")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze) {
            if (threads > 0)
                omp_set_num_threads(threads);
            config.types = parse_types(types);
            config.filter = history::PathFilter::parse(globs);
            config.use_cache = !no_cache;
            config.export_revision_clones = !no_revision_clones;
            return run_analyze(config);
        }
        if (*replay)
            return run_replay(tables, replay_out);
        if (*make_fixture)
            return run_make_fixture(spec, fixture_out);
        return run_blame(blame_backend, blame_repo, rev, file);
    } catch (const Error& e) {
        std::cerr << "clonestab: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "clonestab: internal error: " << e.what() << '\n';
        return 2;
    }
}
