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

#include "traitscope/views.hpp"

#include <algorithm>

namespace traitscope {

bool is_failed_leaf(const InferenceTree& tree, NodeId id) {
    if (!tree.is_goal(id)) return false;
    const auto& g = tree.goal(id);
    if (!g.result.failed()) return false;
    for (auto c : g.candidates) {
        for (auto s : tree.candidate(c).subgoals) {
            if (tree.result(s).failed()) return false;
        }
    }
    return true;
}

std::vector<NodeId> failed_leaves(const InferenceTree& tree) {
    std::vector<NodeId> out;
    for (NodeId id = 0; id < tree.size(); ++id) {
        if (is_failed_leaf(tree, id)) out.push_back(id);
    }
    return out;
}

BottomUpView bottom_up(const InferenceTree& tree, const Ranking& ranking) {
    BottomUpView view;
    view.ranking = ranking;
    for (const auto& e : ranking.entries) {
        BottomUpEntry entry;
        entry.leaf = e.leaf;
        for (auto p = tree.parent(e.leaf); p; p = tree.parent(*p)) entry.ancestor_chain.push_back(*p);
        view.entries.push_back(std::move(entry));
    }
    return view;
}

bool TopDownView::shows(NodeId id) const { return std::binary_search(visible.begin(), visible.end(), id); }

std::vector<NodeId> TopDownView::children(const InferenceTree& tree, NodeId id) const {
    std::vector<NodeId> out;
    if (!shows(id)) return out;
    for (auto c : tree.children(id)) {
        if (shows(c)) out.push_back(c);
    }
    return out;
}

TopDownView top_down(const InferenceTree& tree, VisibleFilter filter) {
    TopDownView view;
    view.root = tree.root();
    view.filter = filter;
    if (tree.empty()) return view;
    // Preorder ids: a parent's visibility is known before its children.
    std::vector<bool> shown(tree.size(), false);
    for (NodeId id = 0; id < tree.size(); ++id) {
        auto parent = tree.parent(id);
        if (!parent) {
            shown[id] = true;
        } else if (filter == VisibleFilter::All) {
            shown[id] = true;
        } else {
            shown[id] = shown[*parent] && tree.result(*parent).failed() && tree.result(id).failed();
        }
        if (shown[id]) view.visible.push_back(id);
    }
    return view;
}

}  // namespace traitscope
