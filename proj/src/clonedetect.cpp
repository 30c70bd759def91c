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

#include "clonestab/clonedetect.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "clonestab/csv.hpp"
#include "clonestab/error.hpp"
#include "clonestab/lcs.hpp"

namespace clonestab::clonedetect {

namespace {

// Smallest LCS length that keeps a pair with longer side `m` within the
// threshold: ceil((1 - t) * m), exact.
std::size_t required_lcs(const Rational& t, std::size_t m) {
    const __int128 keep = static_cast<__int128>(t.den() - t.num()) * static_cast<__int128>(m);
    const __int128 den = t.den();
    return static_cast<std::size_t>((keep + den - 1) / den);
}

struct Encoded {
    std::vector<std::vector<lcs::Symbol>> seqs;
};

Encoded encode(std::span<const lexnorm::Block> blocks) {
    lcs::Interner interner;
    Encoded e;
    e.seqs.reserve(blocks.size());
    for (const auto& b : blocks)
        e.seqs.push_back(interner.intern_all(b.normalized_lines));
    return e;
}

std::vector<std::pair<std::size_t, std::size_t>> serial_pairs(std::span<const lexnorm::Block> blocks,
                                                              const CloneConfig& config) {
    const Encoded e = encode(blocks);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (e.seqs[i].size() < config.min_block_lines)
            continue;
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            if (e.seqs[j].size() < config.min_block_lines)
                continue;
            const auto l = lcs::lcs_length(e.seqs[i], e.seqs[j]);
            const auto m = std::max(e.seqs[i].size(), e.seqs[j].size());
            if (Rational(1) - Rational(static_cast<std::int64_t>(l), static_cast<std::int64_t>(m)) <=
                config.threshold)
                out.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> parallel_pairs(std::span<const lexnorm::Block> blocks,
                                                                const CloneConfig& config) {
    const Encoded e = encode(blocks);
    // eligible blocks by (length, index); a block only meets longer ones
    // until the length pre-filter cuts off
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (e.seqs[i].size() >= config.min_block_lines)
            order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return e.seqs[x].size() < e.seqs[y].size(); });

    const auto n = static_cast<std::ptrdiff_t>(order.size());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> found(order.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
        const auto& a = e.seqs[order[p]];
        for (std::ptrdiff_t q = p + 1; q < n; ++q) {
            const auto& b = e.seqs[order[q]];
            const std::size_t need = required_lcs(config.threshold, b.size());
            if (need > a.size())
                break;
            bool hit;
            if (config.threshold == Rational(0)) {
                hit = a == b;
            } else {
                const std::size_t budget = a.size() + b.size() - 2 * need;
                const auto l = lcs::lcs_length_within(a, b, budget);
                hit = l.has_value() && *l >= need;
            }
            if (hit)
                found[p].emplace_back(std::min(order[p], order[q]), std::max(order[p], order[q]));
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (auto& f : found)
        out.insert(out.end(), f.begin(), f.end());
    std::sort(out.begin(), out.end());
    return out;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

CloneConfig CloneConfig::defaults(int clone_type) {
    switch (clone_type) {
    case 1:
        return {1, Rename::None, Rational(0), 5};
    case 2:
        return {2, Rename::Blind, Rational(0), 5};
    case 3:
        return {3, Rename::Blind, Rational(1, 5), 5};
    default:
        fail(ErrorKind::Config, "clone type must be 1, 2 or 3, got " + std::to_string(clone_type));
    }
}

void CloneConfig::validate() const {
    if (clone_type < 1 || clone_type > 3)
        fail(ErrorKind::Config, "clone type must be 1, 2 or 3");
    if (threshold < Rational(0) || threshold > Rational(1))
        fail(ErrorKind::Config, "dissimilarity threshold must lie in [0, 1]");
    if (min_block_lines < 1)
        fail(ErrorKind::Config, "min_block_lines must be at least 1");
}

std::string CloneConfig::key() const {
    return "type=" + std::to_string(clone_type) + ";rename=" + (rename == Rename::Blind ? "blind" : "none") +
           ";threshold=" + std::to_string(threshold.num()) + "/" + std::to_string(threshold.den()) +
           ";min=" + std::to_string(min_block_lines);
}

Rational dissimilarity(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() || b.empty())
        fail(ErrorKind::Domain, "dissimilarity of an empty sequence is undefined");
    lcs::Interner interner;
    const auto sa = interner.intern_all(a);
    const auto sb = interner.intern_all(b);
    const auto l = lcs::lcs_length(sa, sb);
    const auto m = std::max(a.size(), b.size());
    return Rational(1) - Rational(static_cast<std::int64_t>(l), static_cast<std::int64_t>(m));
}

std::vector<std::pair<std::size_t, std::size_t>> clone_pairs(std::span<const lexnorm::Block> blocks,
                                                             const CloneConfig& config, Kernel kernel) {
    config.validate();
    return kernel == Kernel::Serial ? serial_pairs(blocks, config) : parallel_pairs(blocks, config);
}

std::vector<CloneClass> detect_clone_classes(std::span<const lexnorm::Block> blocks, const CloneConfig& config,
                                             Kernel kernel) {
    std::vector<lexnorm::Block> renamed;
    if (config.rename == Rename::Blind) {
        renamed.reserve(blocks.size());
        for (const auto& b : blocks)
            renamed.push_back(lexnorm::blind_rename(b));
        blocks = renamed;
    }
    const auto pairs = clone_pairs(blocks, config, kernel);

    UnionFind uf(blocks.size());
    std::vector<bool> paired(blocks.size(), false);
    for (auto [i, j] : pairs) {
        uf.unite(i, j);
        paired[i] = paired[j] = true;
    }
    std::map<std::size_t, std::vector<Region>> groups;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (paired[i])
            groups[uf.find(i)].push_back({blocks[i].path, blocks[i].start_line, blocks[i].end_line});

    std::vector<CloneClass> classes;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (members.size() >= 2)
            classes.push_back({0, config.clone_type, std::move(members)});
    }
    std::sort(classes.begin(), classes.end(),
              [](const CloneClass& x, const CloneClass& y) { return x.members.front() < y.members.front(); });
    for (std::size_t k = 0; k < classes.size(); ++k)
        classes[k].id = k + 1;
    return classes;
}

std::size_t FileLines::loc() const { return tags.count(lexnorm::LineTag::Code); }

std::size_t FileLines::loc_d() const { return static_cast<std::size_t>(std::count(cloned.begin(), cloned.end(), true)); }

const FileLines* LineClassification::find(const std::string& path) const {
    auto it = std::lower_bound(files.begin(), files.end(), path,
                               [](const FileLines& f, const std::string& p) { return f.path < p; });
    return it != files.end() && it->path == path ? &*it : nullptr;
}

std::size_t LineClassification::loc() const {
    std::size_t n = 0;
    for (const auto& f : files)
        n += f.loc();
    return n;
}

std::size_t LineClassification::loc_d() const {
    std::size_t n = 0;
    for (const auto& f : files)
        n += f.loc_d();
    return n;
}

LineClassification classify_lines(std::string rev_id, std::span<const history::FileSnapshot> files,
                                  std::span<const lexnorm::LineClassArray> tags,
                                  std::span<const CloneClass> classes) {
    if (files.size() != tags.size())
        throw std::logic_error("classify_lines: tags do not run parallel to files");
    LineClassification out{std::move(rev_id), {}};
    out.files.reserve(files.size());
    for (std::size_t k = 0; k < files.size(); ++k) {
        if (tags[k].tags.size() != files[k].lines.size())
            throw std::logic_error("classify_lines: tag count differs from line count for " + files[k].path);
        const std::size_t n = files[k].lines.size();
        out.files.push_back({files[k].path, tags[k], std::vector<bool>(n, false), std::vector<bool>(n, false)});
    }
    std::sort(out.files.begin(), out.files.end(),
              [](const FileLines& x, const FileLines& y) { return x.path < y.path; });

    for (const auto& c : classes) {
        for (const auto& r : c.members) {
            auto it = std::lower_bound(out.files.begin(), out.files.end(), r.path,
                                       [](const FileLines& f, const std::string& p) { return f.path < p; });
            if (it == out.files.end() || it->path != r.path)
                throw std::logic_error("clone region in unknown file " + r.path);
            if (r.start_line < 1 || r.end_line < r.start_line || r.end_line > it->in_region.size())
                throw std::logic_error("clone region " + r.path + ":" + std::to_string(r.start_line) + "-" +
                                       std::to_string(r.end_line) + " outside the file");
            for (std::size_t line = r.start_line; line <= r.end_line; ++line) {
                it->in_region[line - 1] = true;
                if (it->tags.tags[line - 1] == lexnorm::LineTag::Code)
                    it->cloned[line - 1] = true;
            }
        }
    }
    return out;
}

void write_clones_csv(std::ostream& out, std::span<const CloneClass> classes) {
    out << "class_id,clone_type,path,start_line,end_line\n";
    for (const auto& c : classes)
        for (const auto& r : c.members)
            out << c.id << ',' << c.clone_type << ',' << csv_field(r.path) << ',' << r.start_line << ',' << r.end_line << '\n';
}

}  // namespace clonestab::clonedetect
