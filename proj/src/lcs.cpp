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

#include "clonestab/lcs.hpp"

#include <algorithm>
#include <cassert>

namespace clonestab::lcs {

Symbol Interner::intern(std::string_view text) {
    auto it = ids_.find(std::string(text));
    if (it != ids_.end())
        return it->second;
    auto id = static_cast<Symbol>(ids_.size());
    ids_.emplace(std::string(text), id);
    return id;
}

std::vector<Symbol> Interner::intern_all(std::span<const std::string> lines) {
    std::vector<Symbol> out;
    out.reserve(lines.size());
    for (const auto& l : lines)
        out.push_back(intern(l));
    return out;
}

namespace {

using Seq = std::span<const Symbol>;

struct Snake {
    std::ptrdiff_t x0, y0, x1, y1;  // forward coordinates, start and end
};

// Myers' middle snake on a[0..n) x b[0..m). Both sequences non-empty.
class MiddleSnakeFinder {
public:
    MiddleSnakeFinder(Seq a, Seq b)
        : a_(a), b_(b), n_(static_cast<std::ptrdiff_t>(a.size())), m_(static_cast<std::ptrdiff_t>(b.size())) {
        std::size_t width = static_cast<std::size_t>(2 * (n_ + m_) + 3);
        fwd_.assign(width, 0);
        bwd_.assign(width, 0);
        offset_ = n_ + m_ + 1;
    }

    Snake find() {
        const std::ptrdiff_t delta = n_ - m_;
        const bool odd = (delta & 1) != 0;
        const std::ptrdiff_t max_d = (n_ + m_ + 1) / 2;
        fwd(1) = 0;
        bwd(1) = 0;
        for (std::ptrdiff_t d = 0; d <= max_d; ++d) {
            for (std::ptrdiff_t k = -d; k <= d; k += 2) {
                std::ptrdiff_t x = (k == -d || (k != d && fwd(k - 1) < fwd(k + 1))) ? fwd(k + 1) : fwd(k - 1) + 1;
                std::ptrdiff_t y = x - k;
                const std::ptrdiff_t x0 = x, y0 = y;
                while (x < n_ && y < m_ && a_[x] == b_[y]) {
                    ++x;
                    ++y;
                }
                fwd(k) = x;
                const std::ptrdiff_t c = delta - k;
                if (odd && c >= -(d - 1) && c <= d - 1 && fwd(k) + bwd(c) >= n_)
                    return {x0, y0, x, y};
            }
            for (std::ptrdiff_t c = -d; c <= d; c += 2) {
                std::ptrdiff_t x = (c == -d || (c != d && bwd(c - 1) < bwd(c + 1))) ? bwd(c + 1) : bwd(c - 1) + 1;
                std::ptrdiff_t y = x - c;
                const std::ptrdiff_t x0 = x, y0 = y;
                while (x < n_ && y < m_ && a_[n_ - 1 - x] == b_[m_ - 1 - y]) {
                    ++x;
                    ++y;
                }
                bwd(c) = x;
                const std::ptrdiff_t k = delta - c;
                if (!odd && k >= -d && k <= d && fwd(k) + bwd(c) >= n_)
                    return {n_ - x, m_ - y, n_ - x0, m_ - y0};
            }
        }
        assert(false && "middle snake not found");
        return {0, 0, 0, 0};
    }

private:
    std::ptrdiff_t& fwd(std::ptrdiff_t k) { return fwd_[static_cast<std::size_t>(k + offset_)]; }
    std::ptrdiff_t& bwd(std::ptrdiff_t k) { return bwd_[static_cast<std::size_t>(k + offset_)]; }

    Seq a_, b_;
    std::ptrdiff_t n_, m_;
    std::ptrdiff_t offset_ = 0;
    std::vector<std::ptrdiff_t> fwd_, bwd_;
};

void collect(Seq a, Seq b, std::size_t a_base, std::size_t b_base, std::vector<Match>& out) {
    std::size_t lo = 0;
    while (lo < a.size() && lo < b.size() && a[lo] == b[lo]) {
        out.emplace_back(a_base + lo, b_base + lo);
        ++lo;
    }
    std::size_t suffix = 0;
    while (suffix < a.size() - lo && suffix < b.size() - lo && a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix])
        ++suffix;

    Seq mid_a = a.subspan(lo, a.size() - lo - suffix);
    Seq mid_b = b.subspan(lo, b.size() - lo - suffix);
    if (!mid_a.empty() && !mid_b.empty()) {
        Snake s = MiddleSnakeFinder(mid_a, mid_b).find();
        auto x0 = static_cast<std::size_t>(s.x0), y0 = static_cast<std::size_t>(s.y0);
        auto x1 = static_cast<std::size_t>(s.x1), y1 = static_cast<std::size_t>(s.y1);
        collect(mid_a.first(x0), mid_b.first(y0), a_base + lo, b_base + lo, out);
        for (std::size_t i = 0; i < x1 - x0; ++i)
            out.emplace_back(a_base + lo + x0 + i, b_base + lo + y0 + i);
        collect(mid_a.subspan(x1), mid_b.subspan(y1), a_base + lo + x1, b_base + lo + y1, out);
    }

    for (std::size_t i = 0; i < suffix; ++i)
        out.emplace_back(a_base + a.size() - suffix + i, b_base + b.size() - suffix + i);
}

}  // namespace

std::vector<Match> longest_common_subsequence(Seq a, Seq b) {
    std::vector<Match> out;
    out.reserve(std::min(a.size(), b.size()));
    collect(a, b, 0, 0, out);
    return out;
}

std::optional<std::size_t> lcs_length_within(Seq a, Seq b, std::size_t max_edits) {
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    const auto m = static_cast<std::ptrdiff_t>(b.size());
    const auto limit = static_cast<std::ptrdiff_t>(std::min<std::size_t>(max_edits, a.size() + b.size()));
    // |n - m| edits are unavoidable.
    if (std::abs(n - m) > limit)
        return std::nullopt;
    std::vector<std::ptrdiff_t> v(static_cast<std::size_t>(2 * limit + 3), 0);
    const std::ptrdiff_t off = limit + 1;
    auto at = [&](std::ptrdiff_t k) -> std::ptrdiff_t& { return v[static_cast<std::size_t>(k + off)]; };
    for (std::ptrdiff_t d = 0; d <= limit; ++d) {
        for (std::ptrdiff_t k = -d; k <= d; k += 2) {
            std::ptrdiff_t x = (k == -d || (k != d && at(k - 1) < at(k + 1))) ? at(k + 1) : at(k - 1) + 1;
            std::ptrdiff_t y = x - k;
            while (x < n && y < m && a[static_cast<std::size_t>(x)] == b[static_cast<std::size_t>(y)]) {
                ++x;
                ++y;
            }
            at(k) = x;
            if (x >= n && y >= m)
                return static_cast<std::size_t>((n + m - d) / 2);
        }
    }
    return std::nullopt;
}

std::size_t lcs_length(Seq a, Seq b) { return *lcs_length_within(a, b, a.size() + b.size()); }

}  // namespace clonestab::lcs
