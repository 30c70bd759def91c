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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace clonestab::lcs {

using Symbol = std::uint32_t;

/// Maps line text to dense integer symbols so sequence comparison is an
/// integer compare. Not thread-safe; intern once, compare from many threads.
class Interner {
public:
    Symbol intern(std::string_view text);
    std::vector<Symbol> intern_all(std::span<const std::string> lines);
    std::size_t size() const { return ids_.size(); }

private:
    std::unordered_map<std::string, Symbol> ids_;
};

/// A matched pair (index into a, index into b), 0-based.
using Match = std::pair<std::size_t, std::size_t>;

/// One longest common subsequence of a and b as strictly increasing index
/// pairs. Linear-space divide and conquer over Myers' middle snake, so the
/// complement is a minimal insert/delete edit script.
std::vector<Match> longest_common_subsequence(std::span<const Symbol> a, std::span<const Symbol> b);

/// LCS length when the insert/delete edit distance is at most `max_edits`,
/// otherwise nullopt. O((|a|+|b|) * max_edits) time.
std::optional<std::size_t> lcs_length_within(std::span<const Symbol> a, std::span<const Symbol> b,
                                             std::size_t max_edits);

/// Unbounded LCS length.
std::size_t lcs_length(std::span<const Symbol> a, std::span<const Symbol> b);

}  // namespace clonestab::lcs
