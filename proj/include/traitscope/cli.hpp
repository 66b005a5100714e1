// Copyright 2026 The Traitscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace traitscope {

/// Exit statuses shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // some goal does not hold
inline constexpr int kExitUsage = 2;    // parse, well-formedness, lookup or usage errors

/// Entry point behind the `traitscope` binary. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace traitscope
