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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "traitscope/context.hpp"

namespace traitscope {

/// Syntax or name-resolution error in a `.tl` source.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string file, std::uint32_t line, std::uint32_t column, std::string message,
               std::vector<std::string> expected = {});

    [[nodiscard]] const std::string& file() const { return file_; }
    [[nodiscard]] std::uint32_t line() const { return line_; }
    [[nodiscard]] std::uint32_t column() const { return column_; }
    [[nodiscard]] const std::string& message() const { return message_; }
    [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

  private:
    std::string file_;
    std::uint32_t line_;
    std::uint32_t column_;
    std::string message_;
    std::vector<std::string> expected_;
};

/// Parses a `.tl` program. Declarations marked `extern` (directly or via
/// an enclosing `extern mod`) are External; all others get
/// `provenance_default`. Throws ParseError.
[[nodiscard]] Context parse_context(std::string_view source, Provenance provenance_default = Provenance::Local,
                                    std::string file_name = "<input>");

/// Reads and parses a file; the span file names are `path` as given.
[[nodiscard]] Context parse_file(const std::string& path, Provenance provenance_default = Provenance::Local);

}  // namespace traitscope
