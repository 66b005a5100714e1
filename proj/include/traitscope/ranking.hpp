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
#include <string>
#include <variant>
#include <vector>

#include "traitscope/context.hpp"
#include "traitscope/tree.hpp"

namespace traitscope {

// ---------------------------------------------------------------------------
// Propositional view of a tree

struct Formula {
    enum class Kind { Var, True, False, And, Or };
    Kind kind = Kind::True;
    NodeId var = 0;
    std::vector<Formula> children;

    static Formula variable(NodeId id) { return {Kind::Var, id, {}}; }
    static Formula truth() { return {Kind::True, 0, {}}; }
    static Formula falsity() { return {Kind::False, 0, {}}; }
    /// Simplifying constructors: drop units, absorb zeros, unwrap singletons.
    static Formula all(std::vector<Formula> parts);
    static Formula any(std::vector<Formula> parts);

    [[nodiscard]] bool evaluate(const std::vector<NodeId>& true_vars) const;  // sorted
    [[nodiscard]] std::vector<NodeId> variables() const;                      // sorted, distinct

    friend bool operator==(const Formula&, const Formula&) = default;
};

/// Goals become Or over candidates, candidates And over subgoals; Yes
/// subtrees are True and failed leaves are variables.
[[nodiscard]] Formula to_formula(const InferenceTree& tree);

using Conjunct = std::vector<NodeId>;  // sorted, distinct

/// Exact distribution. Duplicates and absorbed supersets are dropped;
/// output is sorted.
[[nodiscard]] std::vector<Conjunct> dnf_normalize(const Formula& formula);

struct CorrectionSet {
    std::vector<NodeId> predicates;  // sorted
    std::uint64_t score = 0;
    friend bool operator==(const CorrectionSet&, const CorrectionSet&) = default;
};

/// Subset-minimal conjuncts, each scored by the summed weights of its
/// members (missing weights count as zero).
[[nodiscard]] std::vector<CorrectionSet> minimum_correction_sets(const std::vector<Conjunct>& conjuncts,
                                                                 const std::map<NodeId, std::uint64_t>& weights = {});

// ---------------------------------------------------------------------------
// Fix-complexity categories

namespace kind {
struct Trait {
    Provenance self_loc;
    Provenance trait_loc;
    friend bool operator==(const Trait&, const Trait&) = default;
};
struct TyChange {
    friend bool operator==(const TyChange&, const TyChange&) = default;
};
struct FnToTrait {
    Provenance trait_loc;
    std::uint32_t arity;
    friend bool operator==(const FnToTrait&, const FnToTrait&) = default;
};
struct TyAsCallable {
    std::uint32_t arity;
    friend bool operator==(const TyAsCallable&, const TyAsCallable&) = default;
};
struct DeleteFnParams {
    std::uint32_t delta;
    friend bool operator==(const DeleteFnParams&, const DeleteFnParams&) = default;
};
struct AddFnParams {
    std::uint32_t delta;
    friend bool operator==(const AddFnParams&, const AddFnParams&) = default;
};
struct IncorrectParams {
    std::uint32_t arity;
    friend bool operator==(const IncorrectParams&, const IncorrectParams&) = default;
};
struct Misc {
    friend bool operator==(const Misc&, const Misc&) = default;
};
}  // namespace kind

using GoalKind = std::variant<kind::Trait, kind::TyChange, kind::FnToTrait, kind::TyAsCallable, kind::DeleteFnParams,
                              kind::AddFnParams, kind::IncorrectParams, kind::Misc>;

[[nodiscard]] std::uint64_t weight(const GoalKind& kind);
[[nodiscard]] std::string to_string(const GoalKind& kind);

[[nodiscard]] GoalKind classify_goal(const GoalNode& leaf, const Context& context);

// ---------------------------------------------------------------------------
// Rankings

enum class Heuristic { Inertia, Depth, InferVarCount };

[[nodiscard]] const char* to_string(Heuristic heuristic);  // "inertia" | "depth" | "infer_vars"

struct RankEntry {
    NodeId leaf = 0;
    std::uint64_t key = 0;
    friend bool operator==(const RankEntry&, const RankEntry&) = default;
};

struct Ranking {
    Heuristic heuristic = Heuristic::Inertia;
    std::vector<RankEntry> entries;  // ascending key, then node id

    [[nodiscard]] std::vector<NodeId> order() const {
        std::vector<NodeId> out;
        for (const auto& e : entries) out.push_back(e.leaf);
        return out;
    }
    /// Position of `leaf`, or -1.
    [[nodiscard]] long index_of(NodeId leaf) const {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].leaf == leaf) return static_cast<long>(i);
        }
        return -1;
    }
};

/// `weight_scale` multiplies every category weight (1 in normal use).
[[nodiscard]] Ranking rank(const InferenceTree& tree, const Context& context, Heuristic heuristic,
                           std::uint64_t weight_scale = 1);

}  // namespace traitscope
