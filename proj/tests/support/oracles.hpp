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

// Independent reference computations and generators for tests. Nothing in
// here calls into the code paths it is used to check.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace clonestab::testing {

/// Textbook O(n*m) dynamic-programming LCS length.
std::size_t dp_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Random line sequence over a small alphabet so matches are frequent.
std::vector<std::string> random_lines(std::mt19937_64& rng, std::size_t max_len, int alphabet);

/// Random edit of `base`: a few deletions, insertions and replacements.
std::vector<std::string> mutate_lines(std::mt19937_64& rng, const std::vector<std::string>& base, int alphabet);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "clonestab-test");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

private:
    std::filesystem::path path_;
};

std::string read_text(const std::filesystem::path& p);
void write_text(const std::filesystem::path& p, const std::string& text);

}  // namespace clonestab::testing
