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

#include <map>
#include <random>

#include "support.hpp"
#include "traitscope/parser.hpp"
#include "traitscope/solver.hpp"

namespace traitscope {
namespace {

TEST(Oracle, HandWrittenCases) {
    auto ctx = parse_context(R"(
        newtype A = unit; newtype B = unit; newtype W<T> = unit;
        trait T0; trait T1;
        impl T0 for A;
        impl<X> T0 for W<X> where X: T0;
        impl<X> T1 for W<X> where W<X>: T1;
        goal yes: W<W<A>>: T0;
        goal no: W<B>: T0;
        goal cycle: W<A>: T1;
    )");
    EXPECT_EQ(testing::oracle_verdict(ctx, ctx.find_goal("yes")->predicate, 6), Verdict::Yes);
    EXPECT_EQ(testing::oracle_verdict(ctx, ctx.find_goal("no")->predicate, 6), Verdict::No);
    EXPECT_EQ(testing::oracle_verdict(ctx, ctx.find_goal("cycle")->predicate, 6), Verdict::Maybe);
}

TEST(Oracle, EngineAgreesOnRandomPrograms) {
    std::mt19937 rng(20261017);
    SolveConfig cfg;
    cfg.max_depth = 6;
    std::map<Verdict, int> seen;
    for (int i = 0; i < 1000; ++i) {
        auto src = testing::random_ground_program(rng);
        auto ctx = parse_context(src);
        const auto& goal = ctx.goals()[0].predicate;
        auto expected = testing::oracle_verdict(ctx, goal, cfg.max_depth);
        auto tree = solve(ctx, goal, cfg);
        ++seen[expected];
        ASSERT_EQ(tree.result(0).verdict, expected) << "program " << i << ":\n" << src;
    }
    // The generator must exercise every outcome.
    EXPECT_GT(seen[Verdict::Yes], 50);
    EXPECT_GT(seen[Verdict::No], 50);
    EXPECT_GT(seen[Verdict::Maybe], 5);
}

}  // namespace
}  // namespace traitscope
