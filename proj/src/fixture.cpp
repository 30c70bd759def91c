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

#include "clonestab/fixture.hpp"

#include <fstream>
#include <sstream>

#include "clonestab/error.hpp"
#include "clonestab/history.hpp"
#include "clonestab/process.hpp"

namespace clonestab::fixture {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> words(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ')
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ')
            ++j;
        if (j > i)
            out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::size_t to_index(const std::string& s, std::size_t line_no) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-')
        fail(ErrorKind::Data, "fixture spec line " + std::to_string(line_no) + ": expected a number, got '" + s + "'");
    return v;
}

void write_text(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out)
        fail(ErrorKind::Config, "cannot write " + p.string());
    out << text;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string s;
    for (const auto& l : lines) {
        s += l;
        s += '\n';
    }
    return s;
}

}  // namespace

FixtureSpec parse_spec(std::string_view text) {
    FixtureSpec spec;
    const auto lines = history::split_lines(text);
    Edit* open_block = nullptr;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        const std::size_t line_no = n + 1;
        auto bad = [&](const std::string& why) {
            fail(ErrorKind::Data, "fixture spec line " + std::to_string(line_no) + ": " + why);
        };
        if (open_block != nullptr) {
            if (line == "end") {
                open_block = nullptr;
            } else if (!line.empty() && line[0] == '|') {
                open_block->lines.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
            } else {
                bad("expected '| text' or 'end' inside a block");
            }
            continue;
        }
        if (line.empty() || line[0] == '#')
            continue;
        const auto w = words(line);
        const std::string& cmd = w[0];
        if (cmd == "revision") {
            if (w.size() != 2)
                bad("usage: revision <id>");
            spec.revisions.push_back({w[1], {}, {}, {}});
            continue;
        }
        if (spec.revisions.empty())
            bad("'" + cmd + "' before any 'revision'");
        RevisionSpec& rev = spec.revisions.back();
        if (cmd == "timestamp") {
            if (w.size() != 2)
                bad("usage: timestamp <YYYY-MM-DDTHH:MM:SSZ>");
            rev.timestamp = parse_iso8601(w[1]);
        } else if (cmd == "message") {
            rev.message = line.size() > 8 ? line.substr(8) : std::string();
        } else if (cmd == "write" || cmd == "insert" || cmd == "replace") {
            Edit e;
            e.kind = cmd == "write" ? EditKind::Write : cmd == "insert" ? EditKind::Insert : EditKind::Replace;
            if (e.kind == EditKind::Write && w.size() != 2)
                bad("usage: write <path>");
            if (e.kind != EditKind::Write && w.size() != 3)
                bad("usage: " + cmd + " <path> <line>");
            e.path = w[1];
            if (e.kind != EditKind::Write)
                e.line = to_index(w[2], line_no);
            rev.edits.push_back(std::move(e));
            open_block = &rev.edits.back();
        } else if (cmd == "remove") {
            if (w.size() != 3 && w.size() != 4)
                bad("usage: remove <path> <line> [<count>]");
            Edit e{EditKind::Remove, w[1], to_index(w[2], line_no), w.size() == 4 ? to_index(w[3], line_no) : 1, {}};
            rev.edits.push_back(std::move(e));
        } else if (cmd == "delete") {
            if (w.size() != 2)
                bad("usage: delete <path>");
            rev.edits.push_back({EditKind::Delete, w[1], 0, 1, {}});
        } else {
            bad("unknown command '" + cmd + "'");
        }
    }
    if (open_block != nullptr)
        fail(ErrorKind::Data, "fixture spec: unterminated block at end of input");
    if (spec.revisions.empty())
        fail(ErrorKind::Data, "fixture spec: no revisions");
    for (std::size_t i = 0; i < spec.revisions.size(); ++i) {
        const auto& r = spec.revisions[i];
        if (r.timestamp == Instant{})
            fail(ErrorKind::Data, "fixture spec: revision " + r.id + " has no timestamp");
        if (i > 0 && r.timestamp < spec.revisions[i - 1].timestamp)
            fail(ErrorKind::Data, "fixture spec: revision " + r.id + " has a timestamp earlier than " +
                                      spec.revisions[i - 1].id + " (timestamps must be non-decreasing)");
        for (std::size_t j = 0; j < i; ++j)
            if (spec.revisions[j].id == r.id)
                fail(ErrorKind::Data, "fixture spec: duplicate revision id " + r.id);
    }
    return spec;
}

FixtureSpec read_spec(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        fail(ErrorKind::Config, "cannot read fixture spec " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::vector<Tree> materialize(const FixtureSpec& spec) {
    std::vector<Tree> out;
    Tree tree;
    for (const auto& rev : spec.revisions) {
        for (const auto& e : rev.edits) {
            auto where = [&] { return " (revision " + rev.id + ", " + e.path + ")"; };
            if (e.kind == EditKind::Write) {
                tree[e.path] = e.lines;
                continue;
            }
            auto it = tree.find(e.path);
            if (it == tree.end())
                fail(ErrorKind::Data, "fixture spec: edit of a missing file" + where());
            auto& lines = it->second;
            switch (e.kind) {
            case EditKind::Delete:
                tree.erase(it);
                break;
            case EditKind::Insert:
                if (e.line > lines.size())
                    fail(ErrorKind::Data, "fixture spec: insert position out of range" + where());
                lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(e.line), e.lines.begin(), e.lines.end());
                break;
            case EditKind::Replace:
                if (e.line == 0 || e.line > lines.size())
                    fail(ErrorKind::Data, "fixture spec: replace line out of range" + where());
                lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(e.line - 1));
                lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(e.line - 1), e.lines.begin(), e.lines.end());
                break;
            case EditKind::Remove:
                if (e.line == 0 || e.line - 1 + e.count > lines.size())
                    fail(ErrorKind::Data, "fixture spec: remove range out of range" + where());
                lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(e.line - 1),
                            lines.begin() + static_cast<std::ptrdiff_t>(e.line - 1 + e.count));
                break;
            case EditKind::Write:
                break;
            }
        }
        out.push_back(tree);
    }
    return out;
}

void write_snapshots(const FixtureSpec& spec, const fs::path& out) {
    std::error_code ec;
    if (fs::exists(out, ec) && !fs::is_empty(out, ec))
        fail(ErrorKind::Config, "output directory " + out.string() + " is not empty");
    const auto trees = materialize(spec);
    for (std::size_t i = 0; i < spec.revisions.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "rev-%04zu", i);
        const fs::path dir = out / name;
        const auto& r = spec.revisions[i];
        write_text(dir / "manifest.txt",
                   "id=" + r.id + "\ntimestamp=" + format_iso8601(r.timestamp) + "\nmessage=" + r.message + "\n");
        fs::create_directories(dir / "files");
        for (const auto& [path, lines] : trees[i])
            write_text(dir / "files" / path, join_lines(lines));
    }
}

std::string render_spec(const FixtureSpec& spec) {
    std::string s;
    auto block = [&](const std::vector<std::string>& lines) {
        for (const auto& l : lines)
            s += "| " + l + "\n";
        s += "end\n";
    };
    for (const auto& r : spec.revisions) {
        s += "revision " + r.id + "\n";
        s += "timestamp " + format_iso8601(r.timestamp) + "\n";
        s += "message " + r.message + "\n";
        for (const auto& e : r.edits) {
            switch (e.kind) {
            case EditKind::Write:
                s += "write " + e.path + "\n";
                block(e.lines);
                break;
            case EditKind::Insert:
                s += "insert " + e.path + " " + std::to_string(e.line) + "\n";
                block(e.lines);
                break;
            case EditKind::Replace:
                s += "replace " + e.path + " " + std::to_string(e.line) + "\n";
                block(e.lines);
                break;
            case EditKind::Remove:
                s += "remove " + e.path + " " + std::to_string(e.line) + " " + std::to_string(e.count) + "\n";
                break;
            case EditKind::Delete:
                s += "delete " + e.path + "\n";
                break;
            }
        }
    }
    return s;
}

void export_to_git(const fs::path& snapshot_root, const fs::path& git_dir) {
    history::SnapshotRepository snaps(snapshot_root);
    fs::create_directories(git_dir);
    auto git = [&](std::vector<std::string> args, std::vector<std::string> env = {}) {
        std::vector<std::string> argv = {"git", "-C", git_dir.string(), "-c", "user.name=fixture",
                                         "-c", "user.email=fixture@example.invalid", "-c", "commit.gpgsign=false"};
        argv.insert(argv.end(), args.begin(), args.end());
        auto r = run_process(argv, {}, env);
        if (r.exit_code != 0)
            fail(ErrorKind::Config, "git export failed: " + r.err);
    };
    git({"init", "-q"});
    for (std::size_t i = 0; i < snaps.all_revisions().size(); ++i) {
        const auto& rev = snaps.all_revisions()[i];
        for (const auto& entry : fs::directory_iterator(git_dir))
            if (entry.path().filename() != ".git")
                fs::remove_all(entry.path());
        char name[32];
        std::snprintf(name, sizeof name, "rev-%04zu", i);
        const fs::path files = snapshot_root / name / "files";
        if (fs::is_directory(files))
            fs::copy(files, git_dir, fs::copy_options::recursive);
        git({"add", "-A"});
        const std::string date = "@" + std::to_string(rev.timestamp.time_since_epoch().count()) + " +0000";
        git({"commit", "-q", "--allow-empty", "-m", rev.message.empty() ? rev.id : rev.message},
            {"GIT_AUTHOR_DATE=" + date, "GIT_COMMITTER_DATE=" + date});
    }
}

}  // namespace clonestab::fixture
