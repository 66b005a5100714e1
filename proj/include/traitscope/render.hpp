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

#include <string>

#include "traitscope/context.hpp"
#include "traitscope/printer.hpp"
#include "traitscope/tree.hpp"

namespace traitscope {

/// "[+]" yes, "[x]" no, "[?]" maybe.
[[nodiscard]] const char* glyph(Verdict verdict);

[[nodiscard]] std::string describe(const Reason& reason, PrintMode mode, const Context& context);

/// One line per node, children indented two spaces below their parent.
[[nodiscard]] std::string render_tree_text(const InferenceTree& tree, const Context& context,
                                           PrintMode mode = PrintMode::FullyQualified);

}  // namespace traitscope
