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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clonestab/date.hpp"

namespace clonestab::fixture {

// Fixture spec text format, one command per line ('#' starts a comment line):
//
//   revision <id>
//   timestamp <YYYY-MM-DDTHH:MM:SSZ>
//   message <text>
//   write <path>            block: replaces the whole file
//   insert <path> <after>   block: inserted after line <after> (0 = top)
//   replace <path> <line>   block: replaces line <line> with the block
//   remove <path> <line> [<count>]
//   delete <path>
//
// Block content lines start with '|'; one following space is dropped. A block
// ends with a line reading `end`. Files carry over from the previous revision.

enum class EditKind { Write, Insert, Replace, Remove, Delete };

struct Edit {
    EditKind kind = EditKind::Write;
    std::string path;
    std::size_t line = 0;
    std::size_t count = 1;
    std::vector<std::string> lines;
};

struct RevisionSpec {
    std::string id;
    Instant timestamp;
    std::string message;
    std::vector<Edit> edits;
};

struct FixtureSpec {
    std::vector<RevisionSpec> revisions;
};

using Tree = std::map<std::string, std::vector<std::string>>;  // path -> lines

/// Throws Error(Data) on malformed input or non-monotonic timestamps.
FixtureSpec parse_spec(std::string_view text);
FixtureSpec read_spec(const std::filesystem::path& file);

/// File trees after each revision's edits.
std::vector<Tree> materialize(const FixtureSpec& spec);

/// Writes the snapshot directory (`rev-0000/manifest.txt`, `rev-0000/files/...`).
/// The output directory must be absent or empty.
void write_snapshots(const FixtureSpec& spec, const std::filesystem::path& out);

/// Renders a spec back to text; parse_spec(render_spec(s)) reproduces s.
std::string render_spec(const FixtureSpec& spec);

/// Replays a snapshot directory as a linear git history in `git_dir`, one
/// commit per revision with author and committer dates set to the manifest
/// timestamp.
void export_to_git(const std::filesystem::path& snapshot_root, const std::filesystem::path& git_dir);

}  // namespace clonestab::fixture
