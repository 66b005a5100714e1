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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "traitscope/context.hpp"
#include "traitscope/solver.hpp"

namespace traitscope {

inline constexpr const char* kSchemaVersion = "1";

struct DocSpan {
    std::string file;
    std::uint32_t line_start = 0;
    std::uint32_t line_end = 0;
    friend bool operator==(const DocSpan&, const DocSpan&) = default;
};

struct DocSymbol {
    std::string path;
    std::string provenance;  // "local" | "external"
    DocSpan span;
    friend bool operator==(const DocSymbol&, const DocSymbol&) = default;
};

struct DocReason {
    std::string kind;  // ambiguous | overflow | no_candidates | mismatch
    std::vector<std::uint32_t> vars;
    std::vector<std::uint32_t> cycle_path;
    std::string expected;
    std::string found;
    friend bool operator==(const DocReason&, const DocReason&) = default;
};

struct DocPredicate {
    std::string short_text;
    std::string qualified;
    nlohmann::json structured;
    friend bool operator==(const DocPredicate&, const DocPredicate&) = default;
};

struct DocImpl {
    std::string id;
    std::string head_short;
    std::string head_qualified;
    DocSpan span;
    friend bool operator==(const DocImpl&, const DocImpl&) = default;
};

struct DocGoalKind {
    std::string name;
    std::uint64_t weight = 0;
    friend bool operator==(const DocGoalKind&, const DocGoalKind&) = default;
};

struct DocNode {
    std::string kind;    // goal | candidate
    std::string result;  // yes | no | maybe
    std::optional<DocReason> reason;
    std::optional<DocPredicate> predicate;  // goals
    std::optional<std::string> role;        // goals: normal | evidence | unify
    std::optional<DocImpl> impl;            // impl candidates
    std::optional<std::string> builtin;     // builtin candidates
    std::optional<DocGoalKind> goal_kind;   // failed leaves
    std::vector<std::uint32_t> children;
    std::uint32_t depth = 0;
    std::optional<std::uint32_t> parent;
    friend bool operator==(const DocNode&, const DocNode&) = default;
};

struct DocGoal {
    std::string label;
    std::uint32_t root = 0;
    std::string result;
    std::map<std::uint32_t, DocNode> nodes;
    friend bool operator==(const DocGoal&, const DocGoal&) = default;
};

struct DocBottomUpEntry {
    std::uint32_t leaf = 0;
    std::uint64_t key = 0;
    std::vector<std::uint32_t> chain;
    friend bool operator==(const DocBottomUpEntry&, const DocBottomUpEntry&) = default;
};

struct DocViews {
    std::vector<DocBottomUpEntry> bottom_up;
    std::uint32_t top_down_root = 0;
    std::vector<std::uint32_t> top_down_failures;  // visible under FailuresOnly
    friend bool operator==(const DocViews&, const DocViews&) = default;
};

/// Serialized form of every goal in a program: trees, symbol table,
/// rankings and view descriptors. Node ids are unique across the document.
struct TreeDocument {
    std::string schema_version = kSchemaVersion;
    std::map<std::uint32_t, DocSymbol> symbols;
    std::vector<DocGoal> goals;
    std::map<std::string, std::map<std::string, std::vector<std::uint32_t>>> rankings;  // label -> heuristic -> ids
    std::map<std::string, DocViews> views;                                              // label -> views
    friend bool operator==(const TreeDocument&, const TreeDocument&) = default;

    [[nodiscard]] const DocGoal* find_goal(const std::string& label) const;
    [[nodiscard]] const DocNode* find_node(std::uint32_t id) const;
};

class DocumentError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SolvedGoal {
    std::string label;
    InferenceTree tree;
};

/// Solves every goal of `context` (or only `only_label`).
[[nodiscard]] std::vector<SolvedGoal> solve_all(const Context& context, const SolveConfig& config,
                                                const std::string& only_label = "");

[[nodiscard]] TreeDocument build_document(const Context& context, const std::vector<SolvedGoal>& goals);

[[nodiscard]] nlohmann::json to_json(const TreeDocument& doc);
/// Throws DocumentError on schema violations or dangling node ids.
[[nodiscard]] TreeDocument from_json(const nlohmann::json& json);

/// Canonical text: sorted keys, two-space indent, trailing newline.
[[nodiscard]] std::string write_document(const TreeDocument& doc);
[[nodiscard]] TreeDocument read_document(const std::string& text);

/// JSON shape of a predicate / type, keyed by symbol ids.
[[nodiscard]] nlohmann::json structured(const Predicate& predicate);
[[nodiscard]] nlohmann::json structured(const Type& type);

}  // namespace traitscope
