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

#include "traitscope/tree.hpp"

namespace traitscope {

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::Maybe: return "maybe";
    }
    return "maybe";
}

const char* to_string(BuiltinKind kind) {
    switch (kind) {
        case BuiltinKind::OutlivesAssumed: return "outlives_assumed";
        case BuiltinKind::FnCallable: return "fn_callable";
        case BuiltinKind::ExistentialBound: return "existential_bound";
        case BuiltinKind::ProjectionReflexive: return "projection_reflexive";
        case BuiltinKind::NormalizesTo: return "normalizes_to";
        case BuiltinKind::NormalizeFirst: return "normalize_first";
    }
    return "builtin";
}

NodeId InferenceTree::add_goal(Predicate predicate, std::optional<NodeId> parent_candidate, GoalRole role) {
    GoalNode g;
    g.id = static_cast<NodeId>(nodes_.size());
    g.predicate = std::move(predicate);
    g.parent = parent_candidate;
    g.role = role;
    if (parent_candidate) {
        auto& cand = candidate(*parent_candidate);
        g.depth = goal(cand.parent).depth + 1;
        cand.subgoals.push_back(g.id);
    }
    NodeId id = g.id;
    nodes_.emplace_back(std::move(g));
    return id;
}

NodeId InferenceTree::add_candidate(NodeId goal_id, CandidateSource source, Substitution unifier) {
    CandidateNode c;
    c.id = static_cast<NodeId>(nodes_.size());
    c.source = source;
    c.unifier = std::move(unifier);
    c.parent = goal_id;
    goal(goal_id).candidates.push_back(c.id);
    NodeId id = c.id;
    nodes_.emplace_back(std::move(c));
    return id;
}

const EvalResult& InferenceTree::result(NodeId id) const {
    return std::visit([](const auto& n) -> const EvalResult& { return n.result; }, nodes_.at(id));
}

std::optional<NodeId> InferenceTree::parent(NodeId id) const {
    if (is_goal(id)) return goal(id).parent;
    return candidate(id).parent;
}

const std::vector<NodeId>& InferenceTree::children(NodeId id) const {
    if (is_goal(id)) return goal(id).candidates;
    return candidate(id).subgoals;
}

std::uint32_t InferenceTree::depth(NodeId id) const {
    if (is_goal(id)) return goal(id).depth;
    return goal(candidate(id).parent).depth;
}

namespace {

bool any_of(const InferenceTree& tree, const std::vector<NodeId>& ids, Verdict v) {
    for (auto id : ids) {
        if (tree.result(id).verdict == v) return true;
    }
    return false;
}

std::size_t count_of(const InferenceTree& tree, const std::vector<NodeId>& ids, Verdict v) {
    std::size_t n = 0;
    for (auto id : ids) n += tree.result(id).verdict == v;
    return n;
}

}  // namespace

std::vector<std::string> validate_tree(const InferenceTree& tree) {
    std::vector<std::string> errors;
    auto fail = [&](NodeId id, const std::string& what) {
        errors.push_back("node " + std::to_string(id) + ": " + what);
    };
    for (NodeId id = 0; id < tree.size(); ++id) {
        const auto& r = tree.result(id);
        if (r.is_yes() && !std::holds_alternative<reason::None>(r.reason)) fail(id, "yes with a reason");
        if (auto p = tree.parent(id); p && *p >= id) fail(id, "parent id not smaller than child id");
        if (id != tree.root() && !tree.parent(id)) fail(id, "orphan node");
        for (auto c : tree.children(id)) {
            if (!tree.contains(c) || tree.parent(c) != id) fail(id, "child link mismatch");
        }
        if (tree.is_goal(id)) {
            const auto& g = tree.goal(id);
            const auto& cs = g.candidates;
            if (cs.empty()) {
                bool ok = false;
                switch (r.verdict) {
                    case Verdict::Yes: ok = g.role == GoalRole::Unify; break;
                    case Verdict::No:
                        ok = std::holds_alternative<reason::NoCandidates>(r.reason) ||
                             (g.role == GoalRole::Unify && std::holds_alternative<reason::Mismatch>(r.reason));
                        break;
                    case Verdict::Maybe:
                        ok = std::holds_alternative<reason::Overflow>(r.reason) ||
                             std::holds_alternative<reason::Ambiguous>(r.reason);
                        break;
                }
                if (!ok) fail(id, "goal without candidates has an inconsistent result");
            } else {
                std::size_t yes = count_of(tree, cs, Verdict::Yes);
                bool ambiguous_downgrade = r.verdict == Verdict::Maybe && yes >= 2 &&
                                           std::holds_alternative<reason::Ambiguous>(r.reason) &&
                                           contains_infer_vars(g.predicate);
                if (r.is_yes() != (yes > 0) && !ambiguous_downgrade) fail(id, "goal yes iff some candidate yes");
                if (r.verdict == Verdict::No && (yes > 0 || any_of(tree, cs, Verdict::Maybe))) {
                    fail(id, "goal no while a candidate is not no");
                }
                if (r.verdict == Verdict::Maybe && !ambiguous_downgrade &&
                    (yes > 0 || !any_of(tree, cs, Verdict::Maybe))) {
                    fail(id, "goal maybe without a maybe candidate");
                }
            }
            // Ancestors inherit the reason; only the cut node owns the path.
            const auto* o = std::get_if<reason::Overflow>(&r.reason);
            if (o && cs.empty()) {
                if (o->cycle_path.empty() || o->cycle_path.back() != id) {
                    fail(id, "overflow path does not end at the cut node");
                } else {
                    for (auto p : o->cycle_path) {
                        if (!tree.contains(p) || !tree.is_goal(p)) fail(id, "overflow path names a non-goal");
                    }
                    const auto front = o->cycle_path.front();
                    if (tree.contains(front) && tree.is_goal(front) &&
                        !alpha_equivalent(tree.goal(front).predicate, g.predicate)) {
                        fail(id, "overflow endpoints are not alpha-equivalent");
                    }
                }
            }
        } else {
            const auto& c = tree.candidate(id);
            if (!tree.is_goal(c.parent)) fail(id, "candidate parent is not a goal");
            const auto& ss = c.subgoals;
            Verdict expect = Verdict::Yes;
            if (any_of(tree, ss, Verdict::No)) {
                expect = Verdict::No;
            } else if (any_of(tree, ss, Verdict::Maybe)) {
                expect = Verdict::Maybe;
            }
            if (r.verdict != expect) fail(id, "candidate result disagrees with its subgoals");
        }
    }
    return errors;
}

}  // namespace traitscope
