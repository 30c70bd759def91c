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
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "clonestab/date.hpp"

namespace clonestab::history {

struct Revision {
    std::string id;
    Instant timestamp;
    std::string message;
    std::size_t ordinal = 0;  // position among the relevant revisions

    friend bool operator==(const Revision&, const Revision&) = default;
};

struct FileSnapshot {
    std::string path;
    std::vector<std::string> lines;  // lines[0] is line 1

    std::size_t line_count() const { return lines.size(); }
    friend bool operator==(const FileSnapshot&, const FileSnapshot&) = default;
};

/// Deleted lines old_start..old_start+old_count-1 are replaced by new lines
/// new_start..new_start+new_count-1 (1-based). An empty side records the
/// position the other side attaches to, unified-diff style: for a pure
/// insertion old_start is the old line after which the lines are inserted.
struct Hunk {
    std::size_t old_start = 0;
    std::size_t old_count = 0;
    std::size_t new_start = 0;
    std::size_t new_count = 0;

    friend bool operator==(const Hunk&, const Hunk&) = default;
};

struct DiffScript {
    std::string old_path;
    std::string new_path;
    std::vector<Hunk> hunks;

    bool empty() const { return hunks.empty(); }
    std::size_t deleted_lines() const;
    std::size_t added_lines() const;
};

struct LineOrigin {
    std::string path;
    std::size_t line_no = 0;
    std::string origin_rev;
    Instant origin_date;

    friend bool operator==(const LineOrigin&, const LineOrigin&) = default;
};

/// Glob set over repository-relative paths. A pattern without '/' matches
/// the basename (`*.c` matches `src/a.c`); a pattern with '/' matches the
/// whole path.
class PathFilter {
public:
    PathFilter() = default;
    explicit PathFilter(std::vector<std::string> globs);

    /// Splits a comma-separated list (`*.c,*.h`).
    static PathFilter parse(std::string_view csv);

    /// Matches exactly one repository-relative path, no glob expansion.
    static PathFilter exact(std::string path);

    bool matches(std::string_view path) const;
    const std::vector<std::string>& globs() const { return globs_; }
    bool empty() const { return globs_.empty() && exact_.empty(); }
    const std::vector<std::string>& exact_paths() const { return exact_; }

private:
    std::vector<std::string> globs_;
    std::vector<std::string> exact_;
};

/// Splits stored bytes into lines. `\n` terminates a line, a trailing `\r`
/// is stripped, and a final unterminated fragment is a line of its own.
std::vector<std::string> split_lines(std::string_view bytes);

/// True for content containing a NUL byte or invalid UTF-8.
bool looks_binary(std::string_view bytes);

/// Minimal line-based edit script between two snapshots.
DiffScript diff_files(const FileSnapshot& old_file, const FileSnapshot& new_file);

/// Replays a diff script on `old_lines`, taking inserted text from `new_lines`.
/// Used to check the round-trip property.
std::vector<std::string> apply_diff(const std::vector<std::string>& old_lines, const DiffScript& diff,
                                    const std::vector<std::string>& new_lines);

/// For each old line (0-based), the 0-based new line it is matched to, or
/// npos when deleted.
std::vector<std::size_t> old_to_new(const DiffScript& diff, std::size_t old_size);

using BlameMap = std::map<std::string, std::vector<LineOrigin>>;

/// Read-only view of a revision history. Implementations are safe for
/// concurrent calls after construction.
class Repository {
public:
    virtual ~Repository() = default;

    /// Relevant revisions (touching at least one filtered file), ordinals
    /// assigned after filtering. Throws EmptyHistory when there are none.
    virtual std::vector<Revision> list_revisions(const PathFilter& filter) const = 0;

    /// Filtered files at `rev`, ordered by path. Binary files are skipped
    /// with a warning. Throws NotFound for an unknown revision id.
    virtual std::vector<FileSnapshot> read_snapshot(const Revision& rev, const PathFilter& filter) const = 0;

    /// Line origins for one file at `rev`. Throws NotFound when the path is
    /// absent at `rev`.
    virtual std::vector<LineOrigin> compute_blame(const Revision& rev, const std::string& path) const;

    /// Line origins for every filtered file at `rev`.
    virtual BlameMap compute_blame_all(const Revision& rev, const PathFilter& filter) const;

    virtual std::string describe() const = 0;
};

/// Blame by forward replay of diff_files over the relevant revisions up to
/// and including `rev`: LCS-matched lines keep their origin, inserted lines
/// take the inserting revision.
BlameMap replay_blame(const Repository& repo, const Revision& rev, const PathFilter& filter);

/// Snapshot-directory backend: `rev-NNNN/manifest.txt` plus `rev-NNNN/files/`.
class SnapshotRepository final : public Repository {
public:
    explicit SnapshotRepository(std::filesystem::path root);

    std::vector<Revision> list_revisions(const PathFilter& filter) const override;
    std::vector<FileSnapshot> read_snapshot(const Revision& rev, const PathFilter& filter) const override;
    BlameMap compute_blame_all(const Revision& rev, const PathFilter& filter) const override;
    std::string describe() const override { return "snapshots:" + root_.string(); }

    /// Every revision directory in ordinal order, regardless of relevance.
    const std::vector<Revision>& all_revisions() const { return revisions_; }

private:
    struct Entry {
        std::filesystem::path dir;
        std::map<std::string, std::uint64_t> file_hashes;  // path -> content hash
    };

    std::size_t index_of(const std::string& id) const;
    std::vector<std::string> read_lines(std::size_t index, const std::string& path) const;

    std::filesystem::path root_;
    std::vector<Revision> revisions_;
    std::vector<Entry> entries_;
};

/// Live git repository, driven through the `git` executable.
class GitRepository final : public Repository {
public:
    explicit GitRepository(std::filesystem::path root);
    ~GitRepository() override;

    std::vector<Revision> list_revisions(const PathFilter& filter) const override;
    std::vector<FileSnapshot> read_snapshot(const Revision& rev, const PathFilter& filter) const override;
    std::vector<LineOrigin> compute_blame(const Revision& rev, const std::string& path) const override;
    BlameMap compute_blame_all(const Revision& rev, const PathFilter& filter) const override;
    std::string describe() const override { return "git:" + root_.string(); }

private:
    struct BlobCache;

    std::string git(const std::vector<std::string>& args) const;

    std::filesystem::path root_;
    std::unique_ptr<BlobCache> blobs_;
};

/// Parses `git blame --line-porcelain` output into origins for `path`.
std::vector<LineOrigin> parse_line_porcelain(std::string_view output, const std::string& path);

/// Opens a repository by backend name (`git` or `snapshots`).
std::unique_ptr<Repository> open_repository(const std::string& backend, const std::filesystem::path& root);

}  // namespace clonestab::history
