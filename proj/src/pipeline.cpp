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

#include "clonestab/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "clonestab/error.hpp"
#include "clonestab/hash.hpp"
#include "clonestab/lexnorm.hpp"
#include "clonestab/log.hpp"
#include "json.hpp"

namespace clonestab::pipeline {

namespace fs = std::filesystem;
using clonedetect::CloneClass;
using clonedetect::LineClassification;
using history::FileSnapshot;
using history::Revision;

namespace {

struct LexResult {
    lexnorm::LineClassArray tags;
    std::vector<lexnorm::Block> blocks;
};

// Lexing results by (path, content); unchanged files are lexed once per run.
class LexCache {
public:
    std::shared_ptr<const LexResult> get(const FileSnapshot& f) {
        Fnv1a h;
        h.add(f.path).sep();
        for (const auto& l : f.lines)
            h.add(l).sep();
        const auto key = h.value();
        {
            std::lock_guard lock(mu_);
            if (auto it = entries_.find(key); it != entries_.end() && it->second->tags.path == f.path &&
                                              it->second->tags.tags.size() == f.lines.size())
                return it->second;
        }
        auto r = std::make_shared<LexResult>();
        r->tags = lexnorm::classify_physical_lines(f);
        try {
            r->blocks = lexnorm::extract_blocks(f, r->tags);
        } catch (const std::exception& e) {
            log::warn(f.path + ": block extraction failed (" + e.what() + "); file contributes no blocks");
        }
        std::lock_guard lock(mu_);
        return entries_.emplace(key, std::move(r)).first->second;
    }

private:
    std::mutex mu_;
    std::unordered_map<std::uint64_t, std::shared_ptr<const LexResult>> entries_;
};

std::string content_digest(const std::vector<FileSnapshot>& files) {
    Fnv1a h;
    for (const auto& f : files) {
        h.add(f.path).sep();
        for (const auto& l : f.lines)
            h.add(l).sep();
        h.sep();
    }
    return h.hex();
}

// On-disk detection cache, one file per (revision, config, content).
class DetectionCache {
public:
    DetectionCache(fs::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

    std::optional<std::vector<CloneClass>> load(const std::string& rev_id, const clonedetect::CloneConfig& cfg,
                                                const std::string& digest) {
        if (!enabled_)
            return std::nullopt;
        std::ifstream in(file_for(rev_id, cfg, digest), std::ios::binary);
        if (!in) {
            ++misses_;
            return std::nullopt;
        }
        std::string header;
        std::getline(in, header);
        if (header != header_for(rev_id, cfg, digest)) {
            ++misses_;
            return std::nullopt;
        }
        std::vector<CloneClass> classes;
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::size_t id = 0;
            clonedetect::Region r;
            if (!(row >> id >> r.start_line >> r.end_line) || row.get() != ' ' || !std::getline(row, r.path)) {
                ++misses_;
                return std::nullopt;
            }
            if (classes.empty() || classes.back().id != id)
                classes.push_back({id, cfg.clone_type, {}});
            classes.back().members.push_back(std::move(r));
        }
        ++hits_;
        return classes;
    }

    void store(const std::string& rev_id, const clonedetect::CloneConfig& cfg, const std::string& digest,
               const std::vector<CloneClass>& classes) {
        if (!enabled_)
            return;
        const fs::path target = file_for(rev_id, cfg, digest);
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
        const fs::path tmp = target.string() + ".tmp" + std::to_string(omp_get_thread_num());
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) {
                warn_once("cannot write detection cache under " + dir_.string());
                return;
            }
            out << header_for(rev_id, cfg, digest) << '\n';
            for (const auto& c : classes)
                for (const auto& r : c.members)
                    out << c.id << ' ' << r.start_line << ' ' << r.end_line << ' ' << r.path << '\n';
        }
        fs::rename(tmp, target, ec);
        if (ec)
            warn_once("cannot update detection cache: " + ec.message());
    }

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }

private:
    static std::string header_for(const std::string& rev_id, const clonedetect::CloneConfig& cfg,
                                  const std::string& digest) {
        return "clonestab-detection v1\t" + rev_id + "\t" + cfg.key() + "\t" + digest;
    }
    fs::path file_for(const std::string& rev_id, const clonedetect::CloneConfig& cfg, const std::string& digest) const {
        return dir_ / Fnv1a().add(cfg.key()).hex() / (Fnv1a().add(rev_id).hex() + "-" + digest + ".txt");
    }
    void warn_once(const std::string& msg) {
        std::lock_guard lock(mu_);
        if (!warned_) {
            warned_ = true;
            log::warn(msg);
        }
    }

    fs::path dir_;
    bool enabled_;
    std::mutex mu_;
    bool warned_ = false;
    std::atomic<std::size_t> hits_{0}, misses_{0};
};

struct RevisionWork {
    Revision rev;
    std::vector<FileSnapshot> files;
    std::vector<LineClassification> lines;          // per configured type
    std::vector<std::vector<CloneClass>> classes;   // per configured type
};

RevisionWork process_revision(const Revision& rev, const RunConfig& config, const history::Repository& repo,
                              LexCache& lex, DetectionCache& cache) {
    RevisionWork w{rev, repo.read_snapshot(rev, config.filter), {}, {}};
    std::vector<lexnorm::LineClassArray> tags;
    std::vector<lexnorm::Block> blocks;
    tags.reserve(w.files.size());
    for (const auto& f : w.files) {
        const auto r = lex.get(f);
        tags.push_back(r->tags);
        blocks.insert(blocks.end(), r->blocks.begin(), r->blocks.end());
    }
    const std::string digest = content_digest(w.files);
    for (int type : config.types) {
        const auto cfg = config.clone_config(type);
        auto classes = cache.load(rev.id, cfg, digest);
        if (!classes) {
            // revisions already run in parallel; the pair kernel stays serial-in-thread
            classes = clonedetect::detect_clone_classes(blocks, cfg, clonedetect::Kernel::Parallel);
            cache.store(rev.id, cfg, digest, *classes);
        }
        w.lines.push_back(clonedetect::classify_lines(rev.id, w.files, tags, *classes));
        w.classes.push_back(std::move(*classes));
    }
    return w;
}

template <typename F>
void parallel_for(std::size_t n, F&& body) {
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

Rational direct_mean_age(const Revision& last, const history::BlameMap& blame, const LineClassification& lines) {
    std::int64_t sum = 0, n = 0;
    const Date at = day_of(last.timestamp);
    for (const auto& f : lines.files) {
        const auto& origins = blame.at(f.path);
        for (std::size_t i = 0; i < f.tags.tags.size(); ++i)
            if (f.tags.tags[i] == lexnorm::LineTag::Code) {
                sum += days_between(day_of(origins[i].origin_date), at);
                ++n;
            }
    }
    return n == 0 ? Rational(0) : Rational(sum, n);
}

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text))
        fail(ErrorKind::Config, "cannot write " + p.string());
}

nlohmann::ordered_json rational_json(const std::optional<Rational>& r) {
    if (!r)
        return nullptr;
    return r->to_double();
}

nlohmann::ordered_json exact_json(const std::optional<Rational>& r) {
    if (!r)
        return nullptr;
    return std::to_string(r->num()) + "/" + std::to_string(r->den());
}

nlohmann::ordered_json date_json(const std::optional<Date>& d) {
    if (!d)
        return nullptr;
    return format_ymd(*d);
}

}  // namespace

void RunConfig::validate() const {
    if (backend != "git" && backend != "snapshots")
        fail(ErrorKind::Usage, "backend must be git or snapshots, got '" + backend + "'");
    if (repo.empty())
        fail(ErrorKind::Usage, "no repository given");
    if (types.empty())
        fail(ErrorKind::Usage, "at least one clone type is required");
    std::set<int> seen;
    for (int t : types) {
        if (t < 1 || t > 3)
            fail(ErrorKind::Usage, "clone types must be 1, 2 or 3, got " + std::to_string(t));
        if (!seen.insert(t).second)
            fail(ErrorKind::Usage, "clone type " + std::to_string(t) + " given twice");
    }
    if (min_block_lines < 1)
        fail(ErrorKind::Usage, "min-block-lines must be at least 1");
    if (filter.empty())
        fail(ErrorKind::Usage, "file glob list is empty");
    if (out.empty())
        fail(ErrorKind::Usage, "no output directory given");
}

clonedetect::CloneConfig RunConfig::clone_config(int type) const {
    auto c = clonedetect::CloneConfig::defaults(type);
    c.min_block_lines = min_block_lines;
    return c;
}

fs::path RunConfig::effective_cache_dir() const { return cache_dir.empty() ? out / ".cache" : cache_dir; }

AnalysisReport analyze(const RunConfig& config, const history::Repository& repo) {
    config.validate();
    AnalysisReport report{config.system, config.language, repo.list_revisions(config.filter), {}, 0, 0};
    const auto& revs = report.revisions;
    const std::size_t ntypes = config.types.size();
    for (int t : config.types) {
        report.types.emplace_back();
        report.types.back().clone_type = t;
    }

    LexCache lex;
    DetectionCache cache(config.effective_cache_dir(), config.use_cache);

    // Chunked parallel map over revisions; transitions need the previous
    // revision, which is carried from one chunk to the next.
    const std::size_t window = std::max<std::size_t>(4, 2 * static_cast<std::size_t>(omp_get_max_threads()));
    std::optional<RevisionWork> previous;
    for (std::size_t start = 0; start < revs.size(); start += window) {
        const std::size_t n = std::min(window, revs.size() - start);
        std::vector<std::optional<RevisionWork>> work(n);
        parallel_for(n, [&](std::size_t i) { work[i] = process_revision(revs[start + i], config, repo, lex, cache); });

        std::vector<std::vector<metrics::TransitionCounts>> counts(n);
        parallel_for(n, [&](std::size_t i) {
            const RevisionWork* from = i == 0 ? (previous ? &*previous : nullptr) : &*work[i - 1];
            if (from == nullptr)
                return;
            const auto diffs = metrics::diff_snapshots(from->files, work[i]->files);
            for (std::size_t k = 0; k < ntypes; ++k)
                counts[i].push_back(
                    metrics::transition_counts(from->rev, work[i]->rev, from->lines[k], work[i]->lines[k], diffs));
        });

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < ntypes; ++k) {
                if (!counts[i].empty())
                    report.types[k].series.push_back(counts[i][k]);
                if (config.export_revision_clones)
                    report.types[k].revision_classes.push_back(work[i]->classes[k]);
            }
        }
        previous = std::move(work[n - 1]);
    }

    const RevisionWork& last = *previous;
    const history::BlameMap blame = repo.compute_blame_all(last.rev, config.filter);
    for (std::size_t k = 0; k < ntypes; ++k) {
        TypeReport& tr = report.types[k];
        const auto& lines = last.lines[k];
        tr.loc = lines.loc();
        tr.loc_d = lines.loc_d();
        tr.loc_n = lines.loc_n();
        tr.last_classes = last.classes[k];
        try {
            tr.hotta = metrics::compute_mf(tr.series);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::EmptyHistory)
                throw;
            tr.mf_error = e.what();
            log::warn(config.system + " type-" + std::to_string(tr.clone_type) + ": " + e.what() +
                      "; MF undefined");
        }
        tr.krinke = metrics::krinke_metrics(last.rev, blame, lines);
        tr.variant = metrics::variant_metrics(last.rev, blame, lines);
        tr.aa_all = direct_mean_age(last.rev, blame, lines);
        const auto mean = tr.variant.all_lines_mean();
        if (mean && *mean != tr.aa_all)
            throw std::logic_error("variant weighted-mean identity violated for type " + std::to_string(tr.clone_type));

        tr.krinke_decision = decision::decide_krinke(tr.krinke.alc_c, tr.krinke.alc_n, tr.krinke.pf_c, tr.krinke.pf_n);
        tr.hotta_decision = tr.hotta ? decision::decide_hotta(tr.hotta->mf_d, tr.hotta->mf_n)
                                     : decision::Decision{decision::Verdict::Undecidable, decision::Method::Hotta,
                                                          "MF undefined: no transitions"};
        tr.variant_decision = decision::decide_variant(tr.variant.aa_c, tr.variant.aa_n);
        tr.cell = decision::agreement(tr.krinke_decision.value, tr.hotta_decision.value, tr.variant_decision.value);
    }
    report.cache_hits = cache.hits();
    report.cache_misses = cache.misses();
    return report;
}

AnalysisReport analyze(const RunConfig& config) {
    config.validate();
    const auto repo = history::open_repository(config.backend, config.repo);
    auto report = analyze(config, *repo);
    write_bundle(report, config);
    return report;
}

std::vector<decision::DecisionRow> decision_rows(const AnalysisReport& report) {
    std::vector<decision::DecisionRow> rows;
    for (const auto& t : report.types)
        for (const auto* d : {&t.krinke_decision, &t.hotta_decision, &t.variant_decision})
            rows.push_back({report.system, report.language, t.clone_type, d->method, d->value});
    return rows;
}

void write_bundle(const AnalysisReport& report, const RunConfig& config) {
    const fs::path& out = config.out;
    fs::create_directories(out);

    nlohmann::ordered_json docs = nlohmann::ordered_json::array();
    std::vector<decision::CellRow> cells;
    std::vector<CloneClass> all_last;
    for (const auto& t : report.types) {
        nlohmann::ordered_json d;
        d["system"] = report.system;
        d["language"] = report.language;
        d["clone_type"] = t.clone_type;
        d["revisions"] = report.revisions.size();
        d["transitions"] = t.series.size();
        d["last_revision"] = report.revisions.empty() ? "" : report.revisions.back().id;
        d["mf_d"] = t.hotta ? rational_json(t.hotta->mf_d) : nullptr;
        d["mf_n"] = t.hotta ? rational_json(t.hotta->mf_n) : nullptr;
        d["mf_error"] = t.hotta ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(t.mf_error);
        d["alc_c"] = date_json(t.krinke.alc_c);
        d["alc_n"] = date_json(t.krinke.alc_n);
        d["pf_c"] = rational_json(t.krinke.pf_c);
        d["pf_n"] = rational_json(t.krinke.pf_n);
        d["aa_c"] = rational_json(t.variant.aa_c);
        d["aa_n"] = rational_json(t.variant.aa_n);
        d["exact"] = {{"mf_d", t.hotta ? exact_json(t.hotta->mf_d) : nullptr},
                      {"mf_n", t.hotta ? exact_json(t.hotta->mf_n) : nullptr},
                      {"pf_c", exact_json(t.krinke.pf_c)},
                      {"pf_n", exact_json(t.krinke.pf_n)},
                      {"aa_c", exact_json(t.variant.aa_c)},
                      {"aa_n", exact_json(t.variant.aa_n)},
                      {"aa_all", exact_json(t.aa_all)}};
        d["counts"] = {{"loc", t.loc},
                       {"loc_d", t.loc_d},
                       {"loc_n", t.loc_n},
                       {"n_c", t.variant.n_c},
                       {"n_n", t.variant.n_n},
                       {"analyzed_files", t.krinke.analyzed_files},
                       {"excluded_files", t.krinke.excluded_files},
                       {"clone_classes", t.last_classes.size()}};
        nlohmann::ordered_json decisions;
        for (const auto* dec : {&t.krinke_decision, &t.hotta_decision, &t.variant_decision}) {
            decisions[std::string(decision::to_string(dec->method))] = {
                {"decision", std::string(decision::to_string(dec->value))},
                {"reason", dec->reason.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(dec->reason)}};
        }
        d["decisions"] = decisions;
        d["agreement"] = std::string(decision::to_string(t.cell));
        docs.push_back(d);

        cells.push_back({report.system, report.language, t.clone_type, t.cell});
        all_last.insert(all_last.end(), t.last_classes.begin(), t.last_classes.end());

        const fs::path type_dir = out / ("type-" + std::to_string(t.clone_type));
        std::ostringstream series;
        metrics::write_mf_series_csv(series, t.series);
        write_file(type_dir / "mf_series.csv", series.str());
        for (std::size_t i = 0; i < t.revision_classes.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "rev-%04zu.csv", report.revisions[i].ordinal);
            std::ostringstream clones;
            clonedetect::write_clones_csv(clones, t.revision_classes[i]);
            write_file(type_dir / "clones" / name, clones.str());
        }
    }
    write_file(out / "metrics.json", docs.dump(2) + "\n");

    std::ostringstream dec, agr, clones;
    decision::write_decisions_csv(dec, decision_rows(report));
    decision::write_agreement_csv(agr, cells);
    clonedetect::write_clones_csv(clones, all_last);
    write_file(out / "decisions.csv", dec.str());
    write_file(out / "agreement.csv", agr.str());
    write_file(out / "clones.csv", clones.str());
}

}  // namespace clonestab::pipeline
