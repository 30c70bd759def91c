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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clonestab/history.hpp"
#include "clonestab/lexnorm.hpp"
#include "clonestab/rational.hpp"

namespace clonestab::clonedetect {

enum class Rename { None, Blind };

struct CloneConfig {
    int clone_type = 1;
    Rename rename = Rename::None;
    Rational threshold;  // dissimilarity, inclusive, in [0, 1]
    std::size_t min_block_lines = 5;

    /// Type-1 (none, 0), Type-2 (blind, 0), Type-3 (blind, 0.2).
    static CloneConfig defaults(int clone_type);
    void validate() const;
    /// Stable text form, used for cache keys.
    std::string key() const;
};

struct Region {
    std::string path;
    std::size_t start_line = 0;
    std::size_t end_line = 0;

    friend auto operator<=>(const Region&, const Region&) = default;
};

struct CloneClass {
    std::size_t id = 0;  // 1-based
    int clone_type = 1;
    std::vector<Region> members;  // sorted, >= 2

    friend bool operator==(const CloneClass&, const CloneClass&) = default;
};

/// 1 - |LCS(a,b)| / max(|a|,|b|). Domain error on empty input.
Rational dissimilarity(std::span<const std::string> a, std::span<const std::string> b);

enum class Kernel {
    Serial,    // every eligible pair, full LCS; the reference
    Parallel,  // OpenMP, length pre-filter and edit-bounded LCS
};

/// Index pairs (i < j) into `blocks` that are clone pairs under `config`.
/// Blocks are compared as given; renaming is the caller's job here.
std::vector<std::pair<std::size_t, std::size_t>> clone_pairs(std::span<const lexnorm::Block> blocks,
                                                             const CloneConfig& config, Kernel kernel);

/// Renames per config, pairs, and closes pairs transitively into classes.
/// Class ids follow the smallest member's (path, start_line).
std::vector<CloneClass> detect_clone_classes(std::span<const lexnorm::Block> blocks, const CloneConfig& config,
                                             Kernel kernel = Kernel::Parallel);

struct FileLines {
    std::string path;
    lexnorm::LineClassArray tags;
    std::vector<bool> cloned;     // region ∩ CODE, index 0 is line 1
    std::vector<bool> in_region;  // raw region membership, any tag

    std::size_t loc() const;
    std::size_t loc_d() const;
    std::size_t loc_n() const { return loc() - loc_d(); }
};

struct LineClassification {
    std::string rev_id;
    std::vector<FileLines> files;  // sorted by path

    const FileLines* find(const std::string& path) const;
    std::size_t loc() const;
    std::size_t loc_d() const;
    std::size_t loc_n() const { return loc() - loc_d(); }
};

/// `tags` runs parallel to `files`. Regions outside their file are a bug
/// and throw std::logic_error.
LineClassification classify_lines(std::string rev_id, std::span<const history::FileSnapshot> files,
                                  std::span<const lexnorm::LineClassArray> tags,
                                  std::span<const CloneClass> classes);

/// `class_id,clone_type,path,start_line,end_line`, one row per member.
void write_clones_csv(std::ostream& out, std::span<const CloneClass> classes);

}  // namespace clonestab::clonedetect
