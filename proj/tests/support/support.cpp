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

#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "traitscope/parser.hpp"
#include "traitscope/printer.hpp"

#ifndef TRAITSCOPE_FIXTURE_DIR
#error "TRAITSCOPE_FIXTURE_DIR must be defined"
#endif

namespace traitscope::testing {

std::string fixture_path(const std::string& name) { return std::string(TRAITSCOPE_FIXTURE_DIR) + "/" + name; }

std::vector<std::string> failing_fixture_names() {
    return {"ast.tl", "axum.tl", "bevy.tl", "diesel.tl", "nalgebra.tl", "router.tl", "space.tl", "upload.tl"};
}

std::vector<std::string> all_fixture_names() {
    auto out = failing_fixture_names();
    out.push_back("ok.tl");
    return out;
}

Context load_fixture(const std::string& name) { return parse_file(fixture_path(name)); }

std::optional<NodeId> find_goal_by_text(const InferenceTree& tree, const Context& context, const std::string& text) {
    for (NodeId id = 0; id < tree.size(); ++id) {
        if (!tree.is_goal(id)) continue;
        const auto& p = tree.goal(id).predicate;
        if (pretty_print(p, PrintMode::FullyQualified, context) == text ||
            pretty_print(p, PrintMode::Shortened, context) == text) {
            return id;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Random ground programs

namespace {

int pick(std::mt19937& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Type over A, B, W<_>, P<_, _> and the given variables.
std::string random_type(std::mt19937& rng, int depth, const std::vector<std::string>& vars) {
    int leaves = 2 + static_cast<int>(vars.size());
    int choice = depth <= 1 ? pick(rng, leaves) : pick(rng, leaves + 3);
    if (choice == 0) return "A";
    if (choice == 1) return "B";
    if (choice < leaves) return vars[static_cast<std::size_t>(choice - 2)];
    if (choice < leaves + 2) return "W<" + random_type(rng, depth - 1, vars) + ">";
    return "P<" + random_type(rng, depth - 1, vars) + ", " + random_type(rng, depth - 1, vars) + ">";
}

struct Head {
    std::string trait;
    std::string self_type;
};

std::string random_bound(std::mt19937& rng, int depth, const std::vector<std::string>& vars) {
    std::string self = random_type(rng, depth, vars);
    switch (pick(rng, 3)) {
        case 0: return self + ": T0";
        case 1: return self + ": T1";
        default: return self + ": Q<" + random_type(rng, depth - 1, vars) + ">";
    }
}

}  // namespace

std::string random_ground_impl(std::mt19937& rng) {
    // Heads mention every binder so where clauses are ground once matched.
    const std::vector<std::string> all = {"X", "Y"};
    std::string self = random_type(rng, 2, all);
    std::string trait;
    switch (pick(rng, 3)) {
        case 0: trait = "T0"; break;
        case 1: trait = "T1"; break;
        default: trait = "Q<" + random_type(rng, 2, all) + ">"; break;
    }
    std::vector<std::string> used;
    for (const auto& v : all) {
        auto mentions = [&](const std::string& s) {
            for (std::size_t i = s.find(v); i != std::string::npos; i = s.find(v, i + 1)) return true;
            return false;
        };
        if (mentions(self) || mentions(trait)) used.push_back(v);
    }
    std::string out = "impl";
    if (!used.empty()) {
        out += "<";
        for (std::size_t i = 0; i < used.size(); ++i) out += (i ? ", " : "") + used[i];
        out += ">";
    }
    out += " " + trait + " for " + self;
    int clauses = pick(rng, 3);
    for (int i = 0; i < clauses; ++i) {
        out += (i ? ", " : " where ") + random_bound(rng, 3, used);
    }
    return out + ";\n";
}

std::string random_ground_program(std::mt19937& rng, int max_impls) {
    std::string out =
        "newtype A = unit;\nnewtype B = unit;\nnewtype W<T> = unit;\nnewtype P<T, U> = unit;\n"
        "trait T0;\ntrait T1;\ntrait Q<Z>;\n";
    int impls = pick(rng, max_impls + 1);
    for (int i = 0; i < impls; ++i) out += random_ground_impl(rng);
    out += "goal g: " + random_bound(rng, 3, {}) + ";\n";
    return out;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

using Binding = std::map<std::string, Type>;

bool match(const Type& pattern, const Type& ground, Binding& binding) {
    if (const auto* v = pattern.as<TypeVar>()) {
        auto [it, fresh] = binding.emplace(v->name, ground);
        return fresh || it->second == ground;
    }
    if (pattern.is<UnitType>()) return ground.is<UnitType>();
    if (const auto* c = pattern.as<CtorType>()) {
        const auto* g = ground.as<CtorType>();
        if (!g || g->head != c->head || g->args.size() != c->args.size()) return false;
        for (std::size_t i = 0; i < c->args.size(); ++i) {
            if (!match(c->args[i], g->args[i], binding)) return false;
        }
        return true;
    }
    return pattern == ground;
}

Type instantiate(const Type& t, const Binding& binding) {
    if (const auto* v = t.as<TypeVar>()) return binding.at(v->name);
    if (const auto* c = t.as<CtorType>()) {
        std::vector<Type> args;
        for (const auto& a : c->args) args.push_back(instantiate(a, binding));
        return Type::ctor(c->head, std::move(args));
    }
    return t;
}

class Oracle {
  public:
    Oracle(const Context& context, std::uint32_t max_depth) : context_(context), max_depth_(max_depth) {}

    Verdict eval(const TraitBound& goal, std::uint32_t depth) {
        if (depth > max_depth_) return Verdict::Maybe;
        if (std::find(path_.begin(), path_.end(), goal) != path_.end()) return Verdict::Maybe;
        path_.push_back(goal);
        bool any_yes = false, any_maybe = false;
        for (const auto& decl : context_.declarations()) {
            const auto* impl = std::get_if<ImplBlock>(&decl.item);
            if (!impl || impl->instance.trait != goal.instance.trait) continue;
            Binding b;
            if (!match(impl->self_type, goal.self_type, b)) continue;
            bool ok = impl->instance.type_args.size() == goal.instance.type_args.size();
            for (std::size_t i = 0; ok && i < impl->instance.type_args.size(); ++i) {
                ok = match(impl->instance.type_args[i], goal.instance.type_args[i], b);
            }
            if (!ok) continue;
            bool cand_no = false, cand_maybe = false;
            for (const auto& w : impl->params.where_clauses) {
                const auto& tb = std::get<TraitBound>(w);
                TraitBound sub{instantiate(tb.self_type, b), tb.instance};
                for (auto& a : sub.instance.type_args) a = instantiate(a, b);
                auto r = eval(sub, depth + 1);
                cand_no |= r == Verdict::No;
                cand_maybe |= r == Verdict::Maybe;
            }
            if (!cand_no && !cand_maybe) any_yes = true;
            if (!cand_no && cand_maybe) any_maybe = true;
        }
        path_.pop_back();
        if (any_yes) return Verdict::Yes;
        return any_maybe ? Verdict::Maybe : Verdict::No;
    }

  private:
    const Context& context_;
    std::uint32_t max_depth_;
    std::vector<TraitBound> path_;
};

}  // namespace

Verdict oracle_verdict(const Context& context, const Predicate& goal, std::uint32_t max_depth) {
    Oracle o(context, max_depth);
    return o.eval(std::get<TraitBound>(goal), 0);
}

// ---------------------------------------------------------------------------
// Formulas

Formula random_formula(std::mt19937& rng, int vars, int max_depth) {
    if (max_depth == 0 || coin(rng, 0.3)) {
        if (coin(rng, 0.03)) return coin(rng, 0.5) ? Formula::truth() : Formula::falsity();
        return Formula::variable(static_cast<NodeId>(pick(rng, vars)));
    }
    int n = 2 + pick(rng, 3);
    std::vector<Formula> parts;
    for (int i = 0; i < n; ++i) parts.push_back(random_formula(rng, vars, max_depth - 1));
    return coin(rng, 0.5) ? Formula::all(std::move(parts)) : Formula::any(std::move(parts));
}

std::string dnf_disagreement(const Formula& formula, const std::vector<Conjunct>& dnf) {
    auto vars = formula.variables();
    for (const auto& c : dnf) {
        for (auto v : c) {
            if (!std::binary_search(vars.begin(), vars.end(), v)) {
                return "conjunct mentions variable " + std::to_string(v) + " absent from the formula";
            }
        }
    }
    const std::uint64_t n = vars.size();
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::vector<NodeId> on;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (mask & (1ULL << i)) on.push_back(vars[i]);
        }
        bool lhs = formula.evaluate(on);
        bool rhs = std::any_of(dnf.begin(), dnf.end(), [&](const Conjunct& c) {
            return std::includes(on.begin(), on.end(), c.begin(), c.end());
        });
        if (lhs != rhs) return "assignment mask " + std::to_string(mask) + " disagrees";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Synthetic trees

namespace {

class TreeGrower {
  public:
    TreeGrower(std::uint32_t target, std::uint32_t seed) : target_(target), rng_(seed) {}

    InferenceTree grow() {
        NodeId root = tree_.add_goal(placeholder(), std::nullopt);
        // Wide root, bounded subtrees: the shape of a large real tree.
        while (tree_.size() + 1 < target_) {
            NodeId c = tree_.add_candidate(root, ImplId{0}, {});
            int subgoals = 1 + pick(rng_, 3);
            for (int i = 0; i < subgoals; ++i) goal(c, 1, i == 0);
        }
        finish(root);
        return std::move(tree_);
    }

  private:
    static Predicate placeholder() { return TraitBound{Type::unit(), TraitInstance{SymbolId{0}, {}, {}}}; }

    bool budget() const { return tree_.size() + 4 < target_; }

    // `must_fail` threads one failing path through every root candidate so
    // the root fails and the formula is not trivially true.
    void goal(NodeId parent, int depth, bool must_fail) {
        NodeId g = tree_.add_goal(placeholder(), parent);
        if (depth >= 6 || !budget() || coin(rng_, 0.35)) {
            if (must_fail || coin(rng_, 0.3)) return;  // failing leaf: no candidates
            tree_.add_candidate(g, ImplId{0}, {});
            return;
        }
        int candidates = 1 + (coin(rng_, 0.3) ? 1 : 0);
        for (int i = 0; i < candidates && budget(); ++i) {
            NodeId c = tree_.add_candidate(g, ImplId{0}, {});
            int subgoals = must_fail ? 1 + pick(rng_, 3) : pick(rng_, 4);
            for (int j = 0; j < subgoals && (j == 0 || budget()); ++j) goal(c, depth + 1, must_fail && j == 0);
        }
    }

    void finish(NodeId id) {
        for (auto child : tree_.children(id)) finish(child);
        if (tree_.is_goal(id)) {
            auto& g = tree_.goal(id);
            if (g.candidates.empty()) {
                g.result = EvalResult::no(reason::NoCandidates{});
                return;
            }
            bool yes = false;
            for (auto c : g.candidates) yes |= tree_.result(c).is_yes();
            g.result = yes ? EvalResult::yes() : EvalResult::no();
        } else {
            auto& c = tree_.candidate(id);
            bool yes = true;
            for (auto s : c.subgoals) yes &= tree_.result(s).is_yes();
            c.result = yes ? EvalResult::yes() : EvalResult::no();
        }
    }

    std::uint32_t target_;
    std::mt19937 rng_;
    InferenceTree tree_;
};

}  // namespace

InferenceTree synthetic_tree(std::uint32_t target_nodes, std::uint32_t seed) {
    return TreeGrower(target_nodes, seed).grow();
}

}  // namespace traitscope::testing
