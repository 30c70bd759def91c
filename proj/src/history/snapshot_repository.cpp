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
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "clonestab/error.hpp"
#include "clonestab/hash.hpp"
#include "clonestab/history.hpp"
#include "clonestab/log.hpp"
#include "replay.hpp"

namespace clonestab::history {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        fail(ErrorKind::Config, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_revision_dir(const std::string& name) {
    if (name.size() < 8 || name.compare(0, 4, "rev-") != 0)
        return false;
    return std::all_of(name.begin() + 4, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Revision read_manifest(const fs::path& file, std::size_t ordinal) {
    const auto lines = split_lines(read_file(file));
    if (lines.size() != 3)
        fail(ErrorKind::Config, file.string() + ": manifest must have exactly three lines");
    auto value = [&](std::size_t i, std::string_view key) {
        const std::string& l = lines[i];
        if (l.size() < key.size() + 1 || l.compare(0, key.size(), key) != 0 || l[key.size()] != '=')
            fail(ErrorKind::Config, file.string() + ": line " + std::to_string(i + 1) + " must start with '" +
                                        std::string(key) + "='");
        return l.substr(key.size() + 1);
    };
    Revision r;
    r.id = value(0, "id");
    if (r.id.empty())
        fail(ErrorKind::Config, file.string() + ": empty revision id");
    try {
        r.timestamp = parse_iso8601(value(1, "timestamp"));
    } catch (const Error& e) {
        fail(ErrorKind::Config, file.string() + ": " + e.what());
    }
    r.message = value(2, "message");
    r.ordinal = ordinal;
    return r;
}

// One warning per (path, content) for binary files.
void warn_binary_once(const std::string& where, std::uint64_t hash) {
    static std::mutex m;
    static std::set<std::pair<std::string, std::uint64_t>> seen;
    std::lock_guard lock(m);
    if (seen.emplace(where, hash).second)
        log::warn("skipping binary-looking file " + where);
}

}  // namespace

SnapshotRepository::SnapshotRepository(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    if (!fs::is_directory(root_, ec))
        fail(ErrorKind::Config, "snapshot root " + root_.string() + " is not a readable directory");

    std::vector<std::pair<std::size_t, fs::path>> dirs;
    for (const auto& entry : fs::directory_iterator(root_)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_directory() && is_revision_dir(name))
            dirs.emplace_back(std::stoul(name.substr(4)), entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    for (std::size_t i = 0; i < dirs.size(); ++i)
        if (dirs[i].first != i)
            fail(ErrorKind::Config, root_.string() + ": revision directories are not dense (expected rev-" +
                                        std::to_string(i) + ")");

    std::set<std::string> ids;
    for (const auto& [ordinal, dir] : dirs) {
        Revision rev = read_manifest(dir / "manifest.txt", ordinal);
        if (!ids.insert(rev.id).second)
            fail(ErrorKind::Config, root_.string() + ": duplicate revision id " + rev.id);
        if (!revisions_.empty() && rev.timestamp < revisions_.back().timestamp)
            fail(ErrorKind::Config, dir.string() + ": timestamp earlier than the previous revision");
        Entry e;
        e.dir = dir;
        const fs::path files = dir / "files";
        if (fs::is_directory(files)) {
            for (const auto& f : fs::recursive_directory_iterator(files)) {
                if (!f.is_regular_file())
                    continue;
                e.file_hashes.emplace(fs::relative(f.path(), files).generic_string(), fnv1a(read_file(f.path())));
            }
        }
        revisions_.push_back(std::move(rev));
        entries_.push_back(std::move(e));
    }
}

std::size_t SnapshotRepository::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < revisions_.size(); ++i)
        if (revisions_[i].id == id)
            return i;
    fail(ErrorKind::NotFound, "revision " + id + " not found in " + root_.string());
}

std::vector<Revision> SnapshotRepository::list_revisions(const PathFilter& filter) const {
    if (filter.empty())
        fail(ErrorKind::Config, "empty path filter");
    std::vector<Revision> out;
    std::map<std::string, std::uint64_t> previous;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        std::map<std::string, std::uint64_t> current;
        for (const auto& [path, hash] : entries_[i].file_hashes)
            if (filter.matches(path))
                current.emplace(path, hash);
        if (current != previous) {
            Revision r = revisions_[i];
            r.ordinal = out.size();
            out.push_back(std::move(r));
        }
        previous = std::move(current);
    }
    if (out.empty())
        fail(ErrorKind::EmptyHistory, "no revision in " + root_.string() + " touches a file matching the filter");
    return out;
}

std::vector<std::string> SnapshotRepository::read_lines(std::size_t index, const std::string& path) const {
    return split_lines(read_file(entries_[index].dir / "files" / path));
}

std::vector<FileSnapshot> SnapshotRepository::read_snapshot(const Revision& rev, const PathFilter& filter) const {
    const std::size_t index = index_of(rev.id);
    std::vector<FileSnapshot> out;
    for (const auto& [path, hash] : entries_[index].file_hashes) {
        if (!filter.matches(path))
            continue;
        const std::string bytes = read_file(entries_[index].dir / "files" / path);
        if (looks_binary(bytes)) {
            warn_binary_once(path + " at " + rev.id, hash);
            continue;
        }
        out.push_back({path, split_lines(bytes)});
    }
    return out;
}

BlameMap SnapshotRepository::compute_blame_all(const Revision& rev, const PathFilter& filter) const {
    const std::size_t last = index_of(rev.id);
    std::map<std::string, detail::BlameState> state;
    std::map<std::string, std::uint64_t> hashes;
    for (std::size_t i = 0; i <= last; ++i) {
        std::map<std::string, detail::BlameState> next;
        std::map<std::string, std::uint64_t> next_hashes;
        for (const auto& [path, hash] : entries_[i].file_hashes) {
            if (!filter.matches(path))
                continue;
            auto it = state.find(path);
            if (it != state.end() && hashes[path] == hash) {
                next.emplace(path, std::move(it->second));
                next_hashes.emplace(path, hash);
                continue;
            }
            const std::string bytes = read_file(entries_[i].dir / "files" / path);
            if (looks_binary(bytes))
                continue;
            static const detail::BlameState kEmpty;
            const auto& prev = it == state.end() ? kEmpty : it->second;
            next.emplace(path, detail::advance(prev, path, split_lines(bytes), revisions_[i]));
            next_hashes.emplace(path, hash);
        }
        state = std::move(next);
        hashes = std::move(next_hashes);
    }
    BlameMap out;
    for (auto& [path, s] : state)
        out.emplace(path, std::move(s.origins));
    return out;
}

}  // namespace clonestab::history
