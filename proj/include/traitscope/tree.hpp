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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "traitscope/types.hpp"
#include "traitscope/unify.hpp"

namespace traitscope {

using NodeId = std::uint32_t;

enum class Verdict { Yes, No, Maybe };

namespace reason {
struct None {
    friend bool operator==(const None&, const None&) = default;
};
struct Ambiguous {
    std::vector<std::uint32_t> vars;
    friend bool operator==(const Ambiguous&, const Ambiguous&) = default;
};
struct Overflow {
    std::vector<NodeId> cycle_path;  // goal ids, repeated ancestor first, cut node last
    friend bool operator==(const Overflow&, const Overflow&) = default;
};
struct NoCandidates {
    friend bool operator==(const NoCandidates&, const NoCandidates&) = default;
};
/// A normalized associated type disagreed with the required one.
struct Mismatch {
    Type expected;
    Type found;
    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};
}  // namespace reason

using Reason = std::variant<reason::None, reason::Ambiguous, reason::Overflow, reason::NoCandidates, reason::Mismatch>;

struct EvalResult {
    Verdict verdict = Verdict::Maybe;
    Reason reason;

    static EvalResult yes() { return {Verdict::Yes, reason::None{}}; }
    static EvalResult no(Reason r = reason::None{}) { return {Verdict::No, std::move(r)}; }
    static EvalResult maybe(Reason r = reason::None{}) { return {Verdict::Maybe, std::move(r)}; }

    [[nodiscard]] bool is_yes() const { return verdict == Verdict::Yes; }
    [[nodiscard]] bool failed() const { return verdict != Verdict::Yes; }

    friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

[[nodiscard]] const char* to_string(Verdict verdict);

enum class BuiltinKind {
    OutlivesAssumed,
    FnCallable,        // function type/item against a `#[callable]` trait
    ExistentialBound,  // `dyn` type whose bounds include the goal
    ProjectionReflexive,
    NormalizesTo,
    NormalizeFirst,  // replace nested projections by fresh variables
};

[[nodiscard]] const char* to_string(BuiltinKind kind);

using CandidateSource = std::variant<ImplId, BuiltinKind>;

/// Normal goals come from where clauses; Evidence goals prove the trait
/// bound behind a projection; Unify goals compare a normalized projection
/// with the required type and have no candidates.
enum class GoalRole { Normal, Evidence, Unify };

struct GoalNode {
    NodeId id = 0;
    Predicate predicate;
    EvalResult result;
    std::vector<NodeId> candidates;
    std::uint32_t depth = 0;
    std::optional<NodeId> parent;  // candidate id
    GoalRole role = GoalRole::Normal;
};

struct CandidateNode {
    NodeId id = 0;
    CandidateSource source;
    Substitution unifier;
    std::vector<NodeId> subgoals;
    EvalResult result;
    NodeId parent = 0;  // goal id
    /// Impl type binders mapped to the fresh variables that replaced them.
    std::map<std::string, Type> binder_instantiation;
};

using TreeNode = std::variant<GoalNode, CandidateNode>;

/// Flat arena holding an And-Or tree. Ids are indexes; a parent's id is
/// always smaller than its children's.
class InferenceTree {
  public:
    NodeId add_goal(Predicate predicate, std::optional<NodeId> parent_candidate, GoalRole role = GoalRole::Normal);
    NodeId add_candidate(NodeId goal, CandidateSource source, Substitution unifier = {});

    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] bool empty() const { return nodes_.empty(); }
    [[nodiscard]] NodeId root() const { return 0; }
    [[nodiscard]] bool contains(NodeId id) const { return id < nodes_.size(); }

    [[nodiscard]] const TreeNode& node(NodeId id) const { return nodes_.at(id); }
    [[nodiscard]] bool is_goal(NodeId id) const { return std::holds_alternative<GoalNode>(nodes_.at(id)); }
    [[nodiscard]] const GoalNode& goal(NodeId id) const { return std::get<GoalNode>(nodes_.at(id)); }
    [[nodiscard]] const CandidateNode& candidate(NodeId id) const { return std::get<CandidateNode>(nodes_.at(id)); }
    GoalNode& goal(NodeId id) { return std::get<GoalNode>(nodes_.at(id)); }
    CandidateNode& candidate(NodeId id) { return std::get<CandidateNode>(nodes_.at(id)); }

    [[nodiscard]] const EvalResult& result(NodeId id) const;
    [[nodiscard]] std::optional<NodeId> parent(NodeId id) const;
    [[nodiscard]] const std::vector<NodeId>& children(NodeId id) const;
    /// Goal depth; candidates report the depth of their goal.
    [[nodiscard]] std::uint32_t depth(NodeId id) const;

    [[nodiscard]] const std::vector<TreeNode>& nodes() const { return nodes_; }

  private:
    std::vector<TreeNode> nodes_;
};

/// Consistency violations (And-Or result rules, id order, overflow
/// endpoints). Empty for every tree the solver produces.
[[nodiscard]] std::vector<std::string> validate_tree(const InferenceTree& tree);

}  // namespace traitscope
