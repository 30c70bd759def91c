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

#include <stdexcept>
#include <string>

namespace clonestab {

// Maps onto the CLI exit codes: configuration problems exit with 1, data
// problems with 2.
enum class ErrorKind {
    Config,        // unreadable repository, bad arguments, malformed input files
    Usage,         // API misuse (mismatched revisions and the like)
    EmptyHistory,  // no relevant revisions / no transitions
    NotFound,      // missing revision id or path
    Domain,        // operation undefined for the given input (empty sequences)
    Data,          // malformed or incomplete data (fixture specs, paper tables)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    int exit_code() const noexcept {
        switch (kind_) {
        case ErrorKind::Config:
        case ErrorKind::Usage:
            return 1;
        default:
            return 2;
        }
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace clonestab
