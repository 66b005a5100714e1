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
#include <random>
#include <string>
#include <vector>

#include "traitscope/context.hpp"
#include "traitscope/ranking.hpp"
#include "traitscope/solver.hpp"
#include "traitscope/tree.hpp"

namespace traitscope::testing {

// ---------------------------------------------------------------------------
// Fixtures

[[nodiscard]] std::string fixture_path(const std::string& name);  // "bevy.tl" -> absolute path
[[nodiscard]] std::vector<std::string> failing_fixture_names();   // the comparison suite
[[nodiscard]] std::vector<std::string> all_fixture_names();       // every parseable fixture
[[nodiscard]] Context load_fixture(const std::string& name);

/// First goal (by id) whose fully qualified or shortened print is `text`.
[[nodiscard]] std::optional<NodeId> find_goal_by_text(const InferenceTree& tree, const Context& context,
                                                      const std::string& text);

// ---------------------------------------------------------------------------
// Brute-force oracle over ground programs

/// Source of a random ground program: at most `max_impls` impls over a
/// fixed vocabulary, type depth at most 3, one goal labelled `g`.
[[nodiscard]] std::string random_ground_program(std::mt19937& rng, int max_impls = 4);
/// An extra impl in the same vocabulary (used to grow a program).
[[nodiscard]] std::string random_ground_impl(std::mt19937& rng);

/// Exhaustive impl-choice search written independently of the engine:
/// one-way head matching, three-valued And/Or, cut on a repeated
/// predicate along the path or when depth exceeds `max_depth`.
[[nodiscard]] Verdict oracle_verdict(const Context& context, const Predicate& goal, std::uint32_t max_depth);

// ---------------------------------------------------------------------------
// Formulas

/// Random monotone formula over variables 0..vars-1.
[[nodiscard]] Formula random_formula(std::mt19937& rng, int vars, int max_depth = 4);

/// Truth-table comparison of a formula and a DNF over every assignment of
/// the formula's variables. Returns an empty string or a description of
/// the first disagreement.
[[nodiscard]] std::string dnf_disagreement(const Formula& formula, const std::vector<Conjunct>& dnf);

// ---------------------------------------------------------------------------
// Synthetic trees

/// A consistent failing inference tree of roughly `target_nodes` nodes.
/// Predicates are placeholders; only shape and results matter.
[[nodiscard]] InferenceTree synthetic_tree(std::uint32_t target_nodes, std::uint32_t seed);

}  // namespace traitscope::testing
