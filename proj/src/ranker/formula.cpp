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

#include "traitscope/ranking.hpp"
#include "traitscope/views.hpp"

namespace traitscope {

namespace {

Formula connective(Formula::Kind kind, std::vector<Formula> parts) {
    const auto unit = kind == Formula::Kind::And ? Formula::Kind::True : Formula::Kind::False;
    const auto zero = kind == Formula::Kind::And ? Formula::Kind::False : Formula::Kind::True;
    std::vector<Formula> kept;
    for (auto& p : parts) {
        if (p.kind == unit) continue;
        if (p.kind == zero) return p;
        if (p.kind == kind) {
            for (auto& c : p.children) kept.push_back(std::move(c));
        } else {
            kept.push_back(std::move(p));
        }
    }
    if (kept.empty()) return Formula{unit, 0, {}};
    if (kept.size() == 1) return std::move(kept.front());
    return Formula{kind, 0, std::move(kept)};
}

bool subset(const Conjunct& small, const Conjunct& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Sorted, duplicate-free, no member a superset of another.
std::vector<Conjunct> minimize(std::vector<Conjunct> sets) {
    std::sort(sets.begin(), sets.end(), [](const Conjunct& a, const Conjunct& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Conjunct> kept;
    for (auto& s : sets) {
        bool absorbed = false;
        for (const auto& k : kept) {
            if (subset(k, s)) {
                absorbed = true;
                break;
            }
        }
        if (!absorbed) kept.push_back(std::move(s));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<Conjunct> normalize(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Var: return {{f.var}};
        case Formula::Kind::True: return {{}};
        case Formula::Kind::False: return {};
        case Formula::Kind::Or: {
            std::vector<Conjunct> out;
            for (const auto& c : f.children) {
                auto part = normalize(c);
                out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
            }
            return minimize(std::move(out));
        }
        case Formula::Kind::And: {
            std::vector<Conjunct> acc{{}};
            for (const auto& c : f.children) {
                auto part = normalize(c);
                std::vector<Conjunct> next;
                next.reserve(acc.size() * part.size());
                for (const auto& a : acc) {
                    for (const auto& b : part) {
                        Conjunct merged;
                        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
                        next.push_back(std::move(merged));
                    }
                }
                acc = minimize(std::move(next));
                if (acc.empty()) break;
            }
            return acc;
        }
    }
    return {};
}

Formula goal_formula(const InferenceTree& tree, NodeId id);

Formula candidate_formula(const InferenceTree& tree, NodeId id) {
    const auto& c = tree.candidate(id);
    if (c.result.is_yes()) return Formula::truth();
    std::vector<Formula> parts;
    for (auto s : c.subgoals) parts.push_back(goal_formula(tree, s));
    return Formula::all(std::move(parts));
}

Formula goal_formula(const InferenceTree& tree, NodeId id) {
    const auto& g = tree.goal(id);
    if (g.result.is_yes()) return Formula::truth();
    if (is_failed_leaf(tree, id)) return Formula::variable(id);
    std::vector<Formula> parts;
    for (auto c : g.candidates) parts.push_back(candidate_formula(tree, c));
    return Formula::any(std::move(parts));
}

void collect(const Formula& f, std::vector<NodeId>& out) {
    if (f.kind == Formula::Kind::Var) out.push_back(f.var);
    for (const auto& c : f.children) collect(c, out);
}

}  // namespace

Formula Formula::all(std::vector<Formula> parts) { return connective(Kind::And, std::move(parts)); }
Formula Formula::any(std::vector<Formula> parts) { return connective(Kind::Or, std::move(parts)); }

bool Formula::evaluate(const std::vector<NodeId>& true_vars) const {
    switch (kind) {
        case Kind::Var: return std::binary_search(true_vars.begin(), true_vars.end(), var);
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::And:
            return std::all_of(children.begin(), children.end(), [&](const Formula& c) { return c.evaluate(true_vars); });
        case Kind::Or:
            return std::any_of(children.begin(), children.end(), [&](const Formula& c) { return c.evaluate(true_vars); });
    }
    return false;
}

std::vector<NodeId> Formula::variables() const {
    std::vector<NodeId> out;
    collect(*this, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Formula to_formula(const InferenceTree& tree) {
    if (tree.empty()) return Formula::truth();
    return goal_formula(tree, tree.root());
}

std::vector<Conjunct> dnf_normalize(const Formula& formula) { return normalize(formula); }

std::vector<CorrectionSet> minimum_correction_sets(const std::vector<Conjunct>& conjuncts,
                                                   const std::map<NodeId, std::uint64_t>& weights) {
    std::vector<Conjunct> sorted;
    for (auto c : conjuncts) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        sorted.push_back(std::move(c));
    }
    std::vector<CorrectionSet> out;
    for (auto& c : minimize(std::move(sorted))) {
        CorrectionSet set;
        for (auto id : c) {
            if (auto it = weights.find(id); it != weights.end()) set.score += it->second;
        }
        set.predicates = std::move(c);
        out.push_back(std::move(set));
    }
    return out;
}

}  // namespace traitscope
