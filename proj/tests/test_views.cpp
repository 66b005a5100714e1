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

#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "traitscope/parser.hpp"
#include "traitscope/printer.hpp"
#include "traitscope/views.hpp"

namespace traitscope {
namespace {

using testing::find_goal_by_text;
using testing::load_fixture;

struct Solved {
    Context ctx;
    InferenceTree tree;
};

Solved solve_fixture(const std::string& name) {
    Solved s{load_fixture(name), {}};
    s.tree = solve(s.ctx, s.ctx.goals()[0].predicate);
    return s;
}

std::string shortened(const Solved& s, NodeId id) {
    return pretty_print(s.tree.goal(id).predicate, PrintMode::Shortened, s.ctx);
}

TEST(FailedLeaves, Bevy) {
    auto s = solve_fixture("bevy.tl");
    std::vector<std::string> names;
    for (auto id : failed_leaves(s.tree)) names.push_back(shortened(s, id));
    EXPECT_EQ(names, (std::vector<std::string>{"Timer: SystemParam", "run_timer: System"}));
}

TEST(FailedLeaves, SuccessfulTreeHasNone) {
    auto s = solve_fixture("ok.tl");
    EXPECT_TRUE(failed_leaves(s.tree).empty());
}

TEST(FailedLeaves, AstCutNode) {
    auto s = solve_fixture("ast.tl");
    EXPECT_EQ(failed_leaves(s.tree), std::vector<NodeId>{4});
    EXPECT_TRUE(std::holds_alternative<reason::Overflow>(s.tree.result(4).reason));
}

TEST(FailedLeaves, PartitionOfFailingGoals) {
    for (const auto& name : testing::failing_fixture_names()) {
        auto s = solve_fixture(name);
        auto leaves = failed_leaves(s.tree);
        for (NodeId id = 0; id < s.tree.size(); ++id) {
            if (!s.tree.is_goal(id) || !s.tree.result(id).failed()) continue;
            if (is_failed_leaf(s.tree, id)) continue;
            bool ancestor = std::any_of(leaves.begin(), leaves.end(), [&](NodeId leaf) {
                for (auto p = s.tree.parent(leaf); p; p = s.tree.parent(*p)) {
                    if (*p == id) return true;
                }
                return false;
            });
            EXPECT_TRUE(ancestor) << name << ": failing goal " << id << " has no failed leaf below";
        }
    }
}

TEST(BottomUp, DieselChainShowsHiddenBound) {
    auto s = solve_fixture("diesel.tl");
    auto view = bottom_up(s.tree, rank(s.tree, s.ctx, Heuristic::Inertia));
    ASSERT_EQ(view.entries.size(), 1u);
    const auto& chain = view.entries[0].ancestor_chain;
    EXPECT_EQ(chain.back(), s.tree.root());
    std::vector<std::string> goals;
    for (auto id : chain) {
        if (s.tree.is_goal(id)) goals.push_back(pretty_print(s.tree.goal(id).predicate, PrintMode::FullyQualified, s.ctx));
    }
    auto hidden = "diesel::Eq<schema::users::id, schema::posts::id>: diesel::AppearsOnTable<schema::users::table>";
    EXPECT_NE(std::find(goals.begin(), goals.end(), hidden), goals.end());
    // No elisions: every step is a parent link.
    NodeId prev = view.entries[0].leaf;
    for (auto id : chain) {
        EXPECT_EQ(s.tree.parent(prev), id);
        prev = id;
    }
}

TEST(BottomUp, SingleFailingGoal) {
    auto ctx = parse_context("trait T; newtype A = unit; goal g: A: T;");
    auto tree = solve(ctx, ctx.goals()[0].predicate);
    auto view = bottom_up(tree, rank(tree, ctx, Heuristic::Inertia));
    ASSERT_EQ(view.entries.size(), 1u);
    EXPECT_EQ(view.entries[0].leaf, tree.root());
    EXPECT_TRUE(view.entries[0].ancestor_chain.empty());
}

TEST(BottomUp, BevyFirstChainReachesIntoSystem) {
    auto s = solve_fixture("bevy.tl");
    auto ranking = rank(s.tree, s.ctx, Heuristic::Inertia);
    auto view = bottom_up(s.tree, ranking);
    ASSERT_EQ(view.entries.size(), 2u);
    EXPECT_EQ(view.entries[0].leaf, ranking.entries[0].leaf);
    const auto& chain = view.entries[0].ancestor_chain;
    auto into_system = *find_goal_by_text(s.tree, s.ctx, "app::run_timer: bevy::ecs::IntoSystem<unit, unit, ?1>");
    auto it = std::find(chain.begin(), chain.end(), into_system);
    ASSERT_NE(it, chain.end());
    // After IntoSystem only the root's candidate and the root remain.
    EXPECT_EQ(std::distance(it, chain.end()), 3);
    EXPECT_EQ(chain.back(), s.tree.root());
    EXPECT_FALSE(s.tree.is_goal(chain.front()));
}

TEST(BottomUp, ChainsAreRootPaths) {
    for (const auto& name : testing::failing_fixture_names()) {
        auto s = solve_fixture(name);
        auto ranking = rank(s.tree, s.ctx, Heuristic::Inertia);
        auto view = bottom_up(s.tree, ranking);
        EXPECT_EQ(view.entries.size(), ranking.entries.size());
        for (std::size_t i = 0; i < view.entries.size(); ++i) {
            const auto& e = view.entries[i];
            EXPECT_EQ(e.leaf, ranking.entries[i].leaf);
            NodeId prev = e.leaf;
            for (std::size_t k = 0; k < e.ancestor_chain.size(); ++k) {
                auto id = e.ancestor_chain[k];
                ASSERT_TRUE(s.tree.contains(id));
                EXPECT_EQ(s.tree.parent(prev), id);
                EXPECT_EQ(s.tree.is_goal(id), k % 2 == 1) << "chain alternates candidate/goal";
                prev = id;
            }
            EXPECT_FALSE(s.tree.parent(prev).has_value());
        }
    }
}

TEST(TopDown, BevyShowsTwoBranches) {
    auto s = solve_fixture("bevy.tl");
    auto view = top_down(s.tree, VisibleFilter::FailuresOnly);
    EXPECT_EQ(view.root, s.tree.root());
    auto into_system = *find_goal_by_text(s.tree, s.ctx, "app::run_timer: bevy::ecs::IntoSystem<unit, unit, ?1>");
    ASSERT_TRUE(view.shows(into_system));
    auto kids = view.children(s.tree, into_system);
    ASSERT_EQ(kids.size(), 2u);
    for (auto k : kids) EXPECT_FALSE(s.tree.is_goal(k));
    // The satisfied FnMut subgoal stays hidden.
    auto fn_goal = *find_goal_by_text(s.tree, s.ctx, "run_timer: FnMut<..>");
    EXPECT_FALSE(view.shows(fn_goal));
}

TEST(TopDown, SuccessfulTreeShowsOnlyRoot) {
    auto s = solve_fixture("ok.tl");
    auto view = top_down(s.tree, VisibleFilter::FailuresOnly);
    EXPECT_EQ(view.visible, std::vector<NodeId>{s.tree.root()});
    EXPECT_TRUE(view.children(s.tree, s.tree.root()).empty());
}

TEST(TopDown, AllShowsEverything) {
    for (const auto& name : testing::all_fixture_names()) {
        auto s = solve_fixture(name);
        auto view = top_down(s.tree, VisibleFilter::All);
        EXPECT_EQ(view.visible.size(), s.tree.size()) << name;
    }
}

TEST(TopDown, FailuresOnlyHidesSatisfiedSubtrees) {
    for (const auto& name : testing::failing_fixture_names()) {
        auto s = solve_fixture(name);
        auto view = top_down(s.tree, VisibleFilter::FailuresOnly);
        for (NodeId id = 0; id < s.tree.size(); ++id) {
            bool expect = id == s.tree.root();
            if (!expect && s.tree.result(id).failed()) {
                expect = true;
                for (auto p = s.tree.parent(id); p; p = s.tree.parent(*p)) expect &= s.tree.result(*p).failed();
            }
            EXPECT_EQ(view.shows(id), expect) << name << " node " << id;
        }
        // Every failed leaf is reachable by expanding visible children.
        for (auto leaf : failed_leaves(s.tree)) {
            bool under_failure = true;
            for (auto p = s.tree.parent(leaf); p; p = s.tree.parent(*p)) under_failure &= s.tree.result(*p).failed();
            if (under_failure) EXPECT_TRUE(view.shows(leaf)) << name;
        }
    }
}

}  // namespace
}  // namespace traitscope
