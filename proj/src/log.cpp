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

#include "clonestab/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>
#include <vector>

namespace clonestab::log {

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

Sink& current_sink() {
    static Sink sink;
    return sink;
}

std::atomic<std::size_t> g_count{0};

}  // namespace

void warn(const std::string& message) {
    ++g_count;
    std::lock_guard lock(sink_mutex());
    auto& sink = current_sink();
    if (sink)
        sink(message);
    else
        std::cerr << "warning: " << message << '\n';
}

Sink set_sink(Sink sink) {
    std::lock_guard lock(sink_mutex());
    Sink previous = std::move(current_sink());
    current_sink() = std::move(sink);
    return previous;
}

std::size_t warning_count() { return g_count.load(); }

Capture::Capture() {
    previous_ = set_sink([this](const std::string& m) { messages_.push_back(m); });
}

Capture::~Capture() { set_sink(std::move(previous_)); }

bool Capture::contains(const std::string& needle) const {
    for (const auto& m : messages_)
        if (m.find(needle) != std::string::npos)
            return true;
    return false;
}

}  // namespace clonestab::log
