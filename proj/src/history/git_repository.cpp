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

#include <algorithm>
#include <charconv>
#include <mutex>
#include <unordered_map>

#include "clonestab/error.hpp"
#include "clonestab/history.hpp"
#include "clonestab/log.hpp"
#include "clonestab/process.hpp"

namespace clonestab::history {

namespace fs = std::filesystem;

struct GitRepository::BlobCache {
    std::mutex mutex;
    std::unordered_map<std::string, std::string> blobs;  // object id -> bytes
};

namespace {

// `*.c` becomes `:(glob)**/*.c` so git matches basenames at any depth, the
// same rule PathFilter applies.
std::vector<std::string> pathspecs(const PathFilter& filter) {
    std::vector<std::string> out;
    for (const auto& g : filter.globs())
        out.push_back(g.find('/') == std::string::npos ? ":(glob)**/" + g : ":(glob)" + g);
    for (const auto& p : filter.exact_paths())
        out.push_back(":(literal)" + p);
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start < s.size()) {
        std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos)
            end = s.size();
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::int64_t parse_epoch(std::string_view text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        fail(ErrorKind::Data, "malformed git timestamp '" + std::string(text) + "'");
    return v;
}

bool is_hex_id(std::string_view s) {
    if (s.size() != 40 && s.size() != 64)
        return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
            return false;
    return true;
}

}  // namespace

GitRepository::GitRepository(fs::path root) : root_(std::move(root)), blobs_(std::make_unique<BlobCache>()) {
    std::error_code ec;
    if (!fs::is_directory(root_, ec))
        fail(ErrorKind::Config, "repository " + root_.string() + " is not a directory");
    auto r = run_process({"git", "-C", root_.string(), "rev-parse", "--git-dir"});
    if (r.exit_code != 0)
        fail(ErrorKind::Config, "cannot open git repository " + root_.string() + ": " + r.err);
}

GitRepository::~GitRepository() = default;

std::string GitRepository::git(const std::vector<std::string>& args) const {
    std::vector<std::string> argv = {"git", "-C", root_.string(), "-c", "core.quotepath=off"};
    argv.insert(argv.end(), args.begin(), args.end());
    auto r = run_process(argv);
    if (r.exit_code != 0) {
        std::string cmd;
        for (const auto& a : args)
            cmd += " " + a;
        fail(ErrorKind::NotFound, "git" + cmd + " failed: " + r.err);
    }
    return std::move(r.out);
}

std::vector<Revision> GitRepository::list_revisions(const PathFilter& filter) const {
    if (filter.empty())
        fail(ErrorKind::Config, "empty path filter");
    std::vector<std::string> args = {"log", "--first-parent", "--reverse", "--format=%H%x09%ct%x09%s", "--"};
    for (auto& p : pathspecs(filter))
        args.push_back(std::move(p));
    std::string out;
    try {
        out = git(args);
    } catch (const Error& e) {
        // A repository without commits fails here; that is an empty history.
        fail(ErrorKind::EmptyHistory, std::string("no relevant revisions: ") + e.what());
    }
    std::vector<Revision> revs;
    for (auto line : split(out, '\n')) {
        if (line.empty())
            continue;
        auto fields = split(line, '\t');
        if (fields.size() < 2)
            fail(ErrorKind::Data, "unexpected git log line '" + std::string(line) + "'");
        Revision r;
        r.id = std::string(fields[0]);
        r.timestamp = Instant{std::chrono::seconds{parse_epoch(fields[1])}};
        // The subject itself may contain tabs.
        const std::size_t subject_at = fields[0].size() + fields[1].size() + 2;
        r.message = subject_at <= line.size() ? std::string(line.substr(subject_at)) : std::string();
        r.ordinal = revs.size();
        revs.push_back(std::move(r));
    }
    if (revs.empty())
        fail(ErrorKind::EmptyHistory, "no commit in " + root_.string() + " touches a file matching the filter");
    return revs;
}

std::vector<FileSnapshot> GitRepository::read_snapshot(const Revision& rev, const PathFilter& filter) const {
    const std::string tree = git({"ls-tree", "-r", "-z", "--full-tree", rev.id});
    std::vector<FileSnapshot> out;
    for (auto entry : split(tree, '\0')) {
        // <mode> SP <type> SP <object> TAB <path>
        const auto tab = entry.find('\t');
        if (tab == std::string_view::npos)
            continue;
        auto meta = split(entry.substr(0, tab), ' ');
        const std::string path(entry.substr(tab + 1));
        if (meta.size() != 3 || meta[1] != "blob" || meta[0] == "120000" || !filter.matches(path))
            continue;
        const std::string object(meta[2]);
        std::string bytes;
        bool cached = false;
        {
            std::lock_guard lock(blobs_->mutex);
            auto it = blobs_->blobs.find(object);
            if (it != blobs_->blobs.end()) {
                bytes = it->second;
                cached = true;
            }
        }
        if (!cached) {
            bytes = git({"cat-file", "blob", object});
            std::lock_guard lock(blobs_->mutex);
            blobs_->blobs.emplace(object, bytes);
        }
        if (looks_binary(bytes)) {
            log::warn("skipping binary-looking file " + path + " at " + rev.id);
            continue;
        }
        out.push_back({path, split_lines(bytes)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    return out;
}

std::vector<LineOrigin> parse_line_porcelain(std::string_view output, const std::string& path) {
    std::vector<LineOrigin> out;
    std::string current_rev;
    std::size_t final_line = 0;
    std::int64_t committer_time = 0;
    bool have_time = false;
    for (auto line : split(output, '\n')) {
        if (!line.empty() && line.front() == '\t') {
            if (current_rev.empty() || !have_time)
                fail(ErrorKind::Data, "git blame output: content line without a complete header");
            out.push_back({path, final_line, current_rev, Instant{std::chrono::seconds{committer_time}}});
            current_rev.clear();
            have_time = false;
            continue;
        }
        const auto space = line.find(' ');
        const std::string_view head = line.substr(0, space);
        if (current_rev.empty() && is_hex_id(head)) {
            // <sha> <orig line> <final line> [<group size>]
            auto fields = split(line, ' ');
            if (fields.size() < 3)
                fail(ErrorKind::Data, "git blame output: malformed header '" + std::string(line) + "'");
            current_rev = std::string(head);
            final_line = static_cast<std::size_t>(parse_epoch(fields[2]));
        } else if (head == "committer-time" && space != std::string_view::npos) {
            committer_time = parse_epoch(line.substr(space + 1));
            have_time = true;
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].line_no != i + 1)
            fail(ErrorKind::Data, "git blame output: line numbers not contiguous for " + path);
    return out;
}

std::vector<LineOrigin> GitRepository::compute_blame(const Revision& rev, const std::string& path) const {
    ProcessResult r = run_process({"git", "-C", root_.string(), "blame", "--line-porcelain", "--first-parent",
                                   rev.id, "--", path});
    if (r.exit_code != 0)
        fail(ErrorKind::NotFound, "git blame " + path + " at " + rev.id + " failed: " + r.err);
    return parse_line_porcelain(r.out, path);
}

BlameMap GitRepository::compute_blame_all(const Revision& rev, const PathFilter& filter) const {
    BlameMap out;
    for (const auto& snap : read_snapshot(rev, filter))
        out.emplace(snap.path, compute_blame(rev, snap.path));
    return out;
}

}  // namespace clonestab::history
