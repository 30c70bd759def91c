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

#include <string>
#include <vector>

#include "clonestab/history.hpp"

namespace clonestab::history::detail {

struct BlameState {
    std::vector<std::string> lines;
    std::vector<LineOrigin> origins;
};

/// Advances one file's blame state to `new_lines` introduced at `rev`.
BlameState advance(const BlameState& old_state, const std::string& path, std::vector<std::string> new_lines,
                   const Revision& rev);

}  // namespace clonestab::history::detail
