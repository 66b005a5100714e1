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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "traitscope/context.hpp"
#include "traitscope/tree.hpp"

namespace traitscope {

struct SolveConfig {
    std::uint32_t max_depth = 64;
    bool dedup_snapshots = true;
};

/// Builds the complete inference tree for `predicate`. Every candidate is
/// explored; the root is node 0.
[[nodiscard]] InferenceTree solve(const Context& context, const Predicate& predicate, const SolveConfig& config = {});

/// Solves `predicate` starting from a single goal node; alias of solve
/// that names the dispatch on predicate kind.
[[nodiscard]] InferenceTree evaluate_predicate_kind(const Context& context, const Predicate& predicate,
                                                    const SolveConfig& config = {});

struct CandidateMatch {
    ImplId impl;
    Substitution unifier;
    std::map<std::string, Type> binder_instantiation;
};

/// Impls whose freshly instantiated head unifies with `bound`, in
/// declaration order. Fresh variables start above the bound's own.
[[nodiscard]] std::vector<CandidateMatch> assemble_candidates(const Context& context, const TraitBound& bound);

struct Normalization {
    std::optional<Type> value;  // nullopt: unresolved
    InferenceTree tree;         // goal `projection == ?k`
    NodeId evidence = 0;        // the trait-bound goal inside `tree`
};

[[nodiscard]] Normalization normalize_projection(const Context& context, const Projection& projection,
                                                 const SolveConfig& config = {});

}  // namespace traitscope
