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
#include <string>
#include <string_view>
#include <vector>

#include "clonestab/history.hpp"

namespace clonestab::lexnorm {

enum class LineTag : std::uint8_t { Code, Comment, Blank };

struct LineClassArray {
    std::string path;
    std::vector<LineTag> tags;  // tags[0] is line 1

    std::size_t count(LineTag tag) const;
    bool is_code(std::size_t line_no) const { return tags.at(line_no - 1) == LineTag::Code; }
};

/// A top-level function body. Physical range runs from the line holding the
/// opening brace to the line holding the closing brace.
struct Block {
    std::string path;
    std::size_t start_line = 0;
    std::size_t end_line = 0;
    std::vector<std::string> normalized_lines;
    std::vector<std::size_t> line_map;  // normalized index -> physical line

    friend bool operator==(const Block&, const Block&) = default;
};

/// CODE / COMMENT / BLANK per physical line. `//` and `/* */` comments,
/// string and character literals shield comment markers. An unterminated
/// block comment turns the rest of the file into comment, with a warning.
LineClassArray classify_physical_lines(const history::FileSnapshot& snapshot);

/// One Block per top-level function body. Braces inside literals, comments
/// and preprocessor lines are ignored; `extern "C" {` and `namespace x {`
/// scopes are transparent. Unbalanced braces yield no blocks and a warning.
std::vector<Block> extract_blocks(const history::FileSnapshot& snapshot, const LineClassArray& classes);

/// Replaces identifiers by `X` and literals by `0`, `"S"`, `'C'`; keywords,
/// punctuation and spacing are kept.
Block blind_rename(const Block& block);
std::string blind_rename_line(std::string_view line);

bool is_c_keyword(std::string_view word);

}  // namespace clonestab::lexnorm
