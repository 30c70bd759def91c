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

#include <map>

#include "clonestab/error.hpp"
#include "clonestab/history.hpp"
#include "replay.hpp"

namespace clonestab::history {

namespace detail {

BlameState advance(const BlameState& old_state, const std::string& path, std::vector<std::string> new_lines,
                   const Revision& rev) {
    BlameState next;
    if (old_state.lines == new_lines) {
        next = old_state;
        return next;
    }
    next.origins.resize(new_lines.size());
    std::vector<bool> matched(new_lines.size(), false);
    if (!old_state.lines.empty()) {
        const DiffScript diff = diff_files({path, old_state.lines}, {path, new_lines});
        const auto map = old_to_new(diff, old_state.lines.size());
        for (std::size_t i = 0; i < map.size(); ++i) {
            if (map[i] == static_cast<std::size_t>(-1))
                continue;
            next.origins[map[i]] = old_state.origins[i];
            matched[map[i]] = true;
        }
    }
    for (std::size_t j = 0; j < new_lines.size(); ++j) {
        if (!matched[j]) {
            next.origins[j].origin_rev = rev.id;
            next.origins[j].origin_date = rev.timestamp;
        }
        next.origins[j].path = path;
        next.origins[j].line_no = j + 1;
    }
    next.lines = std::move(new_lines);
    return next;
}

}  // namespace detail

std::vector<LineOrigin> Repository::compute_blame(const Revision& rev, const std::string& path) const {
    BlameMap all = compute_blame_all(rev, PathFilter::exact(path));
    auto it = all.find(path);
    if (it == all.end())
        fail(ErrorKind::NotFound, "path '" + path + "' does not exist at revision " + rev.id);
    return std::move(it->second);
}

BlameMap Repository::compute_blame_all(const Revision& rev, const PathFilter& filter) const {
    return replay_blame(*this, rev, filter);
}

BlameMap replay_blame(const Repository& repo, const Revision& rev, const PathFilter& filter) {
    const auto revisions = repo.list_revisions(filter);
    std::size_t last = revisions.size();
    for (std::size_t i = 0; i < revisions.size(); ++i)
        if (revisions[i].id == rev.id)
            last = i;
    if (last == revisions.size())
        fail(ErrorKind::NotFound, "revision " + rev.id + " is not a relevant revision");

    std::map<std::string, detail::BlameState> state;
    for (std::size_t i = 0; i <= last; ++i) {
        std::map<std::string, detail::BlameState> next;
        for (auto& snap : repo.read_snapshot(revisions[i], filter)) {
            auto it = state.find(snap.path);
            static const detail::BlameState kEmpty;
            const auto& prev = it == state.end() ? kEmpty : it->second;
            next.emplace(snap.path, detail::advance(prev, snap.path, std::move(snap.lines), revisions[i]));
        }
        state = std::move(next);
    }

    BlameMap out;
    for (auto& [path, s] : state)
        out.emplace(path, std::move(s.origins));
    return out;
}

std::unique_ptr<Repository> open_repository(const std::string& backend, const std::filesystem::path& root) {
    if (backend == "git")
        return std::make_unique<GitRepository>(root);
    if (backend == "snapshots")
        return std::make_unique<SnapshotRepository>(root);
    fail(ErrorKind::Config, "unknown backend '" + backend + "' (expected git or snapshots)");
}

}  // namespace clonestab::history
