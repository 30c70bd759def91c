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

// Serial reference vs parallel pair kernel on the synthetic code base, plus
// one full analyze over its history.
//
//   bench_kernels [--files N] [--functions N] [--revisions N] [--reps N] [--no-analyze]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "clonestab/clonedetect.hpp"
#include "clonestab/fixture.hpp"
#include "clonestab/lexnorm.hpp"
#include "clonestab/pipeline.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace clonestab;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pair-kernel benchmark"};
    testing::SyntheticParams params;
    int reps = 3;
    bool no_analyze = false;
    app.add_option("--files", params.files)->capture_default_str();
    app.add_option("--functions", params.functions_per_file)->capture_default_str();
    app.add_option("--revisions", params.revisions)->capture_default_str();
    app.add_option("--reps", reps)->capture_default_str();
    app.add_flag("--no-analyze", no_analyze);
    CLI11_PARSE(app, argc, argv);

    const auto spec = testing::synthetic_history(params);
    const auto trees = fixture::materialize(spec);
    std::vector<lexnorm::Block> blocks;
    std::size_t lines = 0;
    for (const auto& [path, text] : trees.back()) {
        const history::FileSnapshot f{path, text};
        const auto b = lexnorm::extract_blocks(f, lexnorm::classify_physical_lines(f));
        blocks.insert(blocks.end(), b.begin(), b.end());
        lines += text.size();
    }
    std::vector<lexnorm::Block> renamed;
    for (const auto& b : blocks)
        renamed.push_back(lexnorm::blind_rename(b));
    std::printf("last revision: %zu lines, %zu blocks, %d thread(s)\n", lines, blocks.size(), omp_get_max_threads());
    std::printf("%-6s %12s %12s %8s %8s\n", "type", "serial s", "parallel s", "speedup", "pairs");

    for (int type = 1; type <= 3; ++type) {
        const auto cfg = clonedetect::CloneConfig::defaults(type);
        const auto& input = type == 1 ? blocks : renamed;
        std::vector<std::pair<std::size_t, std::size_t>> serial, parallel;
        const double ts = best_of(reps, [&] { serial = clonedetect::clone_pairs(input, cfg, clonedetect::Kernel::Serial); });
        const double tp =
            best_of(reps, [&] { parallel = clonedetect::clone_pairs(input, cfg, clonedetect::Kernel::Parallel); });
        std::sort(serial.begin(), serial.end());
        std::sort(parallel.begin(), parallel.end());
        if (serial != parallel) {
            std::fprintf(stderr, "type %d: kernels disagree\n", type);
            return 1;
        }
        std::printf("%-6d %12.4f %12.4f %7.1fx %8zu\n", type, ts, tp, ts / tp, serial.size());
    }

    if (!no_analyze) {
        testing::TempDir dir("clonestab-bench");
        fixture::write_snapshots(spec, dir / "snap");
        pipeline::RunConfig cfg;
        cfg.backend = "snapshots";
        cfg.repo = dir / "snap";
        cfg.out = dir / "out";
        cfg.filter = history::PathFilter::parse("*.c");
        const auto t0 = Clock::now();
        const auto r = pipeline::analyze(cfg);
        const double cold = std::chrono::duration<double>(Clock::now() - t0).count();
        cfg.out = dir / "out2";
        cfg.cache_dir = dir / "out" / ".cache";
        const auto t1 = Clock::now();
        pipeline::analyze(cfg);
        const double warm = std::chrono::duration<double>(Clock::now() - t1).count();
        std::printf("analyze: %zu revisions x 3 types, cold cache %.2f s, warm cache %.2f s\n", r.revisions.size(),
                    cold, warm);
    }
    return 0;
}
