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

#include <functional>
#include <string>
#include <vector>

namespace clonestab::log {

using Sink = std::function<void(const std::string&)>;

/// Emits a warning through the installed sink (stderr by default).
/// Thread-safe; sinks are invoked under a lock.
void warn(const std::string& message);

/// Installs a sink and returns the previous one. Passing an empty function
/// restores the stderr sink.
Sink set_sink(Sink sink);

/// Number of warnings emitted since process start.
std::size_t warning_count();

/// Scoped capture of warnings, used by tests and by the CLI's --quiet mode.
class Capture {
public:
    Capture();
    ~Capture();
    Capture(const Capture&) = delete;
    Capture& operator=(const Capture&) = delete;

    const std::vector<std::string>& messages() const { return messages_; }
    bool contains(const std::string& needle) const;

private:
    std::vector<std::string> messages_;
    Sink previous_;
};

}  // namespace clonestab::log
