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

#include <algorithm>
#include <limits>

#include "traitscope/ranking.hpp"
#include "traitscope/views.hpp"

namespace traitscope {

const char* to_string(Heuristic heuristic) {
    switch (heuristic) {
        case Heuristic::Inertia: return "inertia";
        case Heuristic::Depth: return "depth";
        case Heuristic::InferVarCount: return "infer_vars";
    }
    return "inertia";
}

namespace {

std::map<NodeId, std::uint64_t> inertia_keys(const InferenceTree& tree, const Context& context,
                                             const std::vector<NodeId>& leaves, std::uint64_t scale) {
    std::map<NodeId, std::uint64_t> weights;
    for (auto id : leaves) weights[id] = scale * weight(classify_goal(tree.goal(id), context));
    auto sets = minimum_correction_sets(dnf_normalize(to_formula(tree)), weights);

    constexpr auto unset = std::numeric_limits<std::uint64_t>::max();
    std::map<NodeId, std::uint64_t> keys;
    for (auto id : leaves) keys[id] = unset;
    std::uint64_t worst = 0;
    for (const auto& s : sets) {
        worst = std::max(worst, s.score);
        for (auto id : s.predicates) {
            if (auto it = keys.find(id); it != keys.end()) it->second = std::min(it->second, s.score);
        }
    }
    for (auto& [_, k] : keys) {
        if (k == unset) k = worst + 1;
    }
    return keys;
}

}  // namespace

Ranking rank(const InferenceTree& tree, const Context& context, Heuristic heuristic, std::uint64_t weight_scale) {
    Ranking out;
    out.heuristic = heuristic;
    auto leaves = failed_leaves(tree);
    std::map<NodeId, std::uint64_t> inertia;
    if (heuristic == Heuristic::Inertia) inertia = inertia_keys(tree, context, leaves, weight_scale);
    for (auto id : leaves) {
        std::uint64_t key = 0;
        switch (heuristic) {
            case Heuristic::Inertia: key = inertia.at(id); break;
            case Heuristic::Depth: key = tree.goal(id).depth; break;
            case Heuristic::InferVarCount: key = infer_vars_of(tree.goal(id).predicate).size(); break;
        }
        out.entries.push_back({id, key});
    }
    std::stable_sort(out.entries.begin(), out.entries.end(), [](const RankEntry& a, const RankEntry& b) {
        return a.key != b.key ? a.key < b.key : a.leaf < b.leaf;
    });
    return out;
}

}  // namespace traitscope
