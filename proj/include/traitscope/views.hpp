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

#include <vector>

#include "traitscope/ranking.hpp"
#include "traitscope/tree.hpp"

namespace traitscope {

/// A failing goal with nothing failing beneath it: every candidate (if
/// any) has only Yes subgoals.
[[nodiscard]] bool is_failed_leaf(const InferenceTree& tree, NodeId goal);

/// Failed leaves in ascending id order.
[[nodiscard]] std::vector<NodeId> failed_leaves(const InferenceTree& tree);

struct BottomUpEntry {
    NodeId leaf = 0;
    /// Parent candidate, its goal, ... up to and including the root goal.
    std::vector<NodeId> ancestor_chain;
};

struct BottomUpView {
    std::vector<BottomUpEntry> entries;  // ranking order
    Ranking ranking;
};

[[nodiscard]] BottomUpView bottom_up(const InferenceTree& tree, const Ranking& ranking);

enum class VisibleFilter { FailuresOnly, All };

struct TopDownView {
    NodeId root = 0;
    VisibleFilter filter = VisibleFilter::FailuresOnly;
    std::vector<NodeId> visible;  // ascending

    [[nodiscard]] bool shows(NodeId id) const;
    /// Visible children of a visible node.
    [[nodiscard]] std::vector<NodeId> children(const InferenceTree& tree, NodeId id) const;
};

/// FailuresOnly shows the root and every non-Yes node whose ancestors are
/// all non-Yes; subtrees rooted at a Yes node stay hidden.
[[nodiscard]] TopDownView top_down(const InferenceTree& tree, VisibleFilter filter);

}  // namespace traitscope
