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

namespace traitscope {

/// Shortened prints bare symbol names and elides every generic argument
/// list as `<..>`; FullyQualified prints paths and all arguments.
enum class PrintMode { Shortened, FullyQualified };

[[nodiscard]] std::string pretty_print(const Type& type, PrintMode mode, const Context& context);
[[nodiscard]] std::string pretty_print(const Predicate& predicate, PrintMode mode, const Context& context);
[[nodiscard]] std::string pretty_print(const TraitInstance& instance, PrintMode mode, const Context& context);

/// `impl<..> Trait<..> for Self` head line of an impl block.
[[nodiscard]] std::string impl_head(const ImplBlock& impl, PrintMode mode, const Context& context);

/// Surface-syntax source for a whole context. References are written as
/// absolute paths, so `parse_context(render_context(c))` reproduces `c`
/// up to spans.
[[nodiscard]] std::string render_context(const Context& context);

}  // namespace traitscope
