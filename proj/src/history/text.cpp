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

#include <fnmatch.h>

#include <algorithm>

#include "clonestab/error.hpp"
#include "clonestab/history.hpp"
#include "clonestab/lcs.hpp"

namespace clonestab::history {

PathFilter::PathFilter(std::vector<std::string> globs) : globs_(std::move(globs)) {
    globs_.erase(std::remove(globs_.begin(), globs_.end(), std::string{}), globs_.end());
}

PathFilter PathFilter::parse(std::string_view csv) {
    std::vector<std::string> globs;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string_view::npos)
            comma = csv.size();
        std::string_view item = csv.substr(start, comma - start);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (!item.empty())
            globs.emplace_back(item);
        start = comma + 1;
    }
    return PathFilter(std::move(globs));
}

PathFilter PathFilter::exact(std::string path) {
    PathFilter f;
    f.exact_.push_back(std::move(path));
    return f;
}

bool PathFilter::matches(std::string_view path) const {
    for (const auto& e : exact_)
        if (e == path)
            return true;
    const std::string full(path);
    const auto slash = full.rfind('/');
    const std::string base = slash == std::string::npos ? full : full.substr(slash + 1);
    for (const auto& g : globs_) {
        const bool whole_path = g.find('/') != std::string::npos;
        const std::string& subject = whole_path ? full : base;
        if (::fnmatch(g.c_str(), subject.c_str(), whole_path ? FNM_PATHNAME : 0) == 0)
            return true;
    }
    return false;
}

std::vector<std::string> split_lines(std::string_view bytes) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < bytes.size()) {
        std::size_t nl = bytes.find('\n', start);
        std::size_t end = nl == std::string_view::npos ? bytes.size() : nl;
        std::string_view line = bytes.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.emplace_back(line);
        if (nl == std::string_view::npos)
            break;
        start = nl + 1;
    }
    return lines;
}

bool looks_binary(std::string_view bytes) {
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        const auto c = static_cast<unsigned char>(bytes[i]);
        if (c == 0)
            return true;
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len;
        std::uint32_t cp;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return true;
        }
        if (i + len > n)
            return true;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(bytes[i + k]);
            if ((cc & 0xC0) != 0x80)
                return true;
            cp = (cp << 6) | (cc & 0x3F);
        }
        // Overlong forms, surrogates, out-of-range code points.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
            (cp >= 0xD800 && cp <= 0xDFFF))
            return true;
        i += len;
    }
    return false;
}

std::size_t DiffScript::deleted_lines() const {
    std::size_t n = 0;
    for (const auto& h : hunks)
        n += h.old_count;
    return n;
}

std::size_t DiffScript::added_lines() const {
    std::size_t n = 0;
    for (const auto& h : hunks)
        n += h.new_count;
    return n;
}

DiffScript diff_files(const FileSnapshot& old_file, const FileSnapshot& new_file) {
    DiffScript script{old_file.path, new_file.path, {}};
    if (old_file.lines == new_file.lines)
        return script;

    lcs::Interner interner;
    const auto a = interner.intern_all(old_file.lines);
    const auto b = interner.intern_all(new_file.lines);
    auto matches = lcs::longest_common_subsequence(a, b);
    matches.emplace_back(a.size(), b.size());  // sentinel

    // (prev_old, prev_new) is one past the last matched pair, 0-based.
    std::size_t prev_old = 0, prev_new = 0;
    for (auto [i, j] : matches) {
        const std::size_t del = i - prev_old;
        const std::size_t add = j - prev_new;
        if (del > 0 || add > 0) {
            Hunk h;
            h.old_count = del;
            h.new_count = add;
            h.old_start = del > 0 ? prev_old + 1 : prev_old;
            h.new_start = add > 0 ? prev_new + 1 : prev_new;
            script.hunks.push_back(h);
        }
        prev_old = i + 1;
        prev_new = j + 1;
    }
    return script;
}

std::vector<std::string> apply_diff(const std::vector<std::string>& old_lines, const DiffScript& diff,
                                    const std::vector<std::string>& new_lines) {
    std::vector<std::string> out;
    std::size_t cursor = 0;  // next old line to copy, 0-based
    for (const auto& h : diff.hunks) {
        // Old lines before the hunk are unchanged.
        const std::size_t keep_until = h.old_count > 0 ? h.old_start - 1 : h.old_start;
        if (keep_until < cursor || keep_until > old_lines.size())
            fail(ErrorKind::Usage, "diff script does not fit the old file");
        out.insert(out.end(), old_lines.begin() + static_cast<std::ptrdiff_t>(cursor),
                   old_lines.begin() + static_cast<std::ptrdiff_t>(keep_until));
        cursor = keep_until + h.old_count;
        if (h.new_count > 0) {
            if (h.new_start == 0 || h.new_start - 1 + h.new_count > new_lines.size())
                fail(ErrorKind::Usage, "diff script does not fit the new file");
            const auto first = new_lines.begin() + static_cast<std::ptrdiff_t>(h.new_start - 1);
            out.insert(out.end(), first, first + static_cast<std::ptrdiff_t>(h.new_count));
        }
    }
    if (cursor > old_lines.size())
        fail(ErrorKind::Usage, "diff script does not fit the old file");
    out.insert(out.end(), old_lines.begin() + static_cast<std::ptrdiff_t>(cursor), old_lines.end());
    return out;
}

std::vector<std::size_t> old_to_new(const DiffScript& diff, std::size_t old_size) {
    constexpr auto npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> map(old_size, npos);
    std::size_t old_i = 0, new_i = 0;  // 0-based cursors
    auto copy_until = [&](std::size_t old_end) {
        while (old_i < old_end && old_i < old_size)
            map[old_i++] = new_i++;
    };
    for (const auto& h : diff.hunks) {
        copy_until(h.old_count > 0 ? h.old_start - 1 : h.old_start);
        old_i += h.old_count;
        new_i += h.new_count;
    }
    copy_until(old_size);
    return map;
}

}  // namespace clonestab::history
