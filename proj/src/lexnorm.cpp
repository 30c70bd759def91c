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

#include "clonestab/lexnorm.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "clonestab/log.hpp"

namespace clonestab::lexnorm {

namespace {

constexpr std::array<std::string_view, 44> kKeywords = {
    "auto",     "break",    "case",     "char",     "const",         "continue",       "default",  "do",
    "double",   "else",     "enum",     "extern",   "float",         "for",            "goto",     "if",
    "inline",   "int",      "long",     "register", "restrict",      "return",         "short",    "signed",
    "sizeof",   "static",   "struct",   "switch",   "typedef",       "union",          "unsigned", "void",
    "volatile", "while",    "_Alignas", "_Alignof", "_Atomic",       "_Bool",          "_Complex", "_Generic",
    "_Imaginary", "_Noreturn", "_Static_assert", "_Thread_local"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\f' || c == '\v' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool literal_prefix(std::string_view ident) {
    return ident == "L" || ident == "u" || ident == "U" || ident == "u8";
}

// End (exclusive) of a quoted literal starting at `pos`, honoring escapes.
// Stops at end of line when unterminated.
std::size_t literal_end(std::string_view line, std::size_t pos) {
    const char quote = line[pos];
    std::size_t i = pos + 1;
    while (i < line.size()) {
        if (line[i] == '\\') {
            i += 2;
            continue;
        }
        if (line[i] == quote)
            return i + 1;
        ++i;
    }
    return line.size();
}

// End (exclusive) of a preprocessing number starting at `pos`.
std::size_t number_end(std::string_view line, std::size_t pos) {
    std::size_t i = pos + 1;
    while (i < line.size()) {
        const char c = line[i];
        if ((c == '+' || c == '-') && (line[i - 1] == 'e' || line[i - 1] == 'E' || line[i - 1] == 'p' ||
                                       line[i - 1] == 'P')) {
            ++i;
        } else if (ident_char(c) || c == '.') {
            ++i;
        } else {
            break;
        }
    }
    return i;
}

enum class TokKind { Ident, Number, String, Char, Punct };

struct Token {
    TokKind kind;
    std::string text;
    std::size_t line;  // 1-based
    std::size_t col;   // offset into LineScan::code
};

struct LineScan {
    std::string code;  // comments replaced by one space, literals intact
    bool has_code = false;
    bool preprocessor = false;
};

struct FileScan {
    std::vector<LineScan> lines;
    std::vector<Token> tokens;  // preprocessor lines contribute none
    bool unterminated_comment = false;
};

FileScan scan(const history::FileSnapshot& snap) {
    FileScan out;
    out.lines.resize(snap.lines.size());
    bool in_comment = false;
    bool continue_directive = false;
    for (std::size_t n = 0; n < snap.lines.size(); ++n) {
        const std::string_view line = snap.lines[n];
        LineScan& ls = out.lines[n];
        ls.preprocessor = continue_directive;
        auto emit = [&](TokKind kind, std::string text, std::size_t col) {
            if (!ls.preprocessor)
                out.tokens.push_back({kind, std::move(text), n + 1, col});
        };
        std::size_t i = 0;
        while (i < line.size()) {
            const char c = line[i];
            if (in_comment) {
                if (c == '*' && i + 1 < line.size() && line[i + 1] == '/') {
                    in_comment = false;
                    ls.code += ' ';
                    i += 2;
                } else {
                    ++i;
                }
                continue;
            }
            if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') {
                ls.code += ' ';
                break;
            }
            if (c == '/' && i + 1 < line.size() && line[i + 1] == '*') {
                in_comment = true;
                i += 2;
                continue;
            }
            if (is_space(c)) {
                ls.code += c;
                ++i;
                continue;
            }
            if (c == '#' && !ls.has_code && !ls.preprocessor)
                ls.preprocessor = true;
            ls.has_code = true;
            const std::size_t col = ls.code.size();
            if (c == '"' || c == '\'') {
                const std::size_t end = literal_end(line, i);
                ls.code.append(line.substr(i, end - i));
                emit(c == '"' ? TokKind::String : TokKind::Char, std::string(line.substr(i, end - i)), col);
                i = end;
            } else if (ident_start(c)) {
                std::size_t end = i;
                while (end < line.size() && ident_char(line[end]))
                    ++end;
                std::string_view word = line.substr(i, end - i);
                if (literal_prefix(word) && end < line.size() && (line[end] == '"' || line[end] == '\'')) {
                    const char q = line[end];
                    end = literal_end(line, end);
                    emit(q == '"' ? TokKind::String : TokKind::Char, std::string(line.substr(i, end - i)), col);
                } else {
                    emit(TokKind::Ident, std::string(word), col);
                }
                ls.code.append(line.substr(i, end - i));
                i = end;
            } else if (is_digit(c) || (c == '.' && i + 1 < line.size() && is_digit(line[i + 1]))) {
                const std::size_t end = number_end(line, i);
                ls.code.append(line.substr(i, end - i));
                emit(TokKind::Number, std::string(line.substr(i, end - i)), col);
                i = end;
            } else {
                ls.code += c;
                emit(TokKind::Punct, std::string(1, c), col);
                ++i;
            }
        }
        if (in_comment)
            ls.code += ' ';
        std::string_view trimmed = ls.code;
        while (!trimmed.empty() && is_space(trimmed.back()))
            trimmed.remove_suffix(1);
        continue_directive = ls.preprocessor && !trimmed.empty() && trimmed.back() == '\\';
    }
    out.unterminated_comment = in_comment;
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space)
            out += ' ';
        pending_space = false;
        out += c;
    }
    return out;
}

bool whitespace_only(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

}  // namespace

bool is_c_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::size_t LineClassArray::count(LineTag tag) const {
    return static_cast<std::size_t>(std::count(tags.begin(), tags.end(), tag));
}

LineClassArray classify_physical_lines(const history::FileSnapshot& snapshot) {
    const FileScan fs = scan(snapshot);
    LineClassArray out{snapshot.path, {}};
    out.tags.reserve(snapshot.lines.size());
    for (std::size_t n = 0; n < snapshot.lines.size(); ++n) {
        if (whitespace_only(snapshot.lines[n]))
            out.tags.push_back(LineTag::Blank);
        else if (fs.lines[n].has_code)
            out.tags.push_back(LineTag::Code);
        else
            out.tags.push_back(LineTag::Comment);
    }
    if (fs.unterminated_comment)
        log::warn(snapshot.path + ": unterminated block comment; rest of file treated as comment");
    return out;
}

std::vector<Block> extract_blocks(const history::FileSnapshot& snapshot, const LineClassArray& classes) {
    const FileScan fs = scan(snapshot);

    enum class Scope { Transparent, Function, Other };
    struct Frame {
        Scope scope;
        std::size_t line, col;
    };
    struct Body {
        std::size_t open_line, open_col, close_line, close_col;
    };
    std::vector<Frame> stack;
    std::vector<Body> bodies;
    const Token* prev1 = nullptr;
    const Token* prev2 = nullptr;

    auto at_file_scope = [&] {
        return std::all_of(stack.begin(), stack.end(), [](const Frame& f) { return f.scope == Scope::Transparent; });
    };
    auto unbalanced = [&](std::size_t line) {
        log::warn(snapshot.path + ":" + std::to_string(line) + ": unbalanced braces; file contributes no blocks");
        return std::vector<Block>{};
    };

    for (const Token& t : fs.tokens) {
        if (t.kind == TokKind::Punct && t.text == "{") {
            Scope scope = Scope::Other;
            if (at_file_scope() && prev1 != nullptr) {
                if (prev1->kind == TokKind::Punct && prev1->text == ")")
                    scope = Scope::Function;
                else if (prev1->kind == TokKind::String && prev2 != nullptr && prev2->text == "extern")
                    scope = Scope::Transparent;
                else if (prev1->text == "namespace" || (prev2 != nullptr && prev2->text == "namespace"))
                    scope = Scope::Transparent;
            }
            stack.push_back({scope, t.line, t.col});
        } else if (t.kind == TokKind::Punct && t.text == "}") {
            if (stack.empty())
                return unbalanced(t.line);
            const Frame f = stack.back();
            stack.pop_back();
            if (f.scope == Scope::Function && at_file_scope())
                bodies.push_back({f.line, f.col, t.line, t.col});
        }
        prev2 = prev1;
        prev1 = &t;
    }
    if (!stack.empty())
        return unbalanced(stack.back().line);

    std::vector<Block> blocks;
    for (const Body& b : bodies) {
        Block block{snapshot.path, b.open_line, b.close_line, {}, {}};
        for (std::size_t line = b.open_line; line <= b.close_line; ++line) {
            const LineScan& ls = fs.lines[line - 1];
            if (!classes.is_code(line) || ls.preprocessor)
                continue;
            std::string_view text = ls.code;
            if (line == b.close_line)
                text = text.substr(0, b.close_col + 1);
            if (line == b.open_line)
                text = text.substr(b.open_col);
            std::string normalized = collapse_whitespace(text);
            if (normalized.empty())
                continue;
            block.normalized_lines.push_back(std::move(normalized));
            block.line_map.push_back(line);
        }
        if (!block.normalized_lines.empty())
            blocks.push_back(std::move(block));
    }
    return blocks;
}

std::string blind_rename_line(std::string_view line) {
    std::string out;
    out.reserve(line.size());
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '"' || c == '\'') {
            out += c == '"' ? "\"S\"" : "'C'";
            i = literal_end(line, i);
        } else if (ident_start(c)) {
            std::size_t end = i;
            while (end < line.size() && ident_char(line[end]))
                ++end;
            std::string_view word = line.substr(i, end - i);
            if (literal_prefix(word) && end < line.size() && (line[end] == '"' || line[end] == '\'')) {
                out += line[end] == '"' ? "\"S\"" : "'C'";
                end = literal_end(line, end);
            } else if (is_c_keyword(word)) {
                out.append(word);
            } else {
                out += 'X';
            }
            i = end;
        } else if (is_digit(c) || (c == '.' && i + 1 < line.size() && is_digit(line[i + 1]))) {
            out += '0';
            i = number_end(line, i);
        } else {
            out += c;
            ++i;
        }
    }
    return out;
}

Block blind_rename(const Block& block) {
    Block out = block;
    for (auto& l : out.normalized_lines)
        l = blind_rename_line(l);
    return out;
}

}  // namespace clonestab::lexnorm
