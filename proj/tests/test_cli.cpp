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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "support.hpp"
#include "traitscope/cli.hpp"
#include "traitscope/compare.hpp"
#include "traitscope/parser.hpp"
#include "traitscope/views.hpp"

namespace traitscope {
namespace {

using testing::fixture_path;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
  public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("traitscope_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string write(const std::string& name, const std::string& text) const {
        auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

  private:
    std::filesystem::path path_;
};

class EnvGuard {
  public:
    explicit EnvGuard(const char* value) { ::setenv("TRAITSCOPE_MAX_DEPTH", value, 1); }
    ~EnvGuard() { ::unsetenv("TRAITSCOPE_MAX_DEPTH"); }
};

TEST(Check, FailingProgramExitsOne) {
    auto r = run({"check", fixture_path("bevy.tl")});
    EXPECT_EQ(r.code, kExitFailure);
    EXPECT_NE(r.out.find("add_systems: no"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("1. Timer: SystemParam"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("2. run_timer: System"), std::string::npos) << r.out;
}

TEST(Check, HoldingProgramExitsZero) {
    auto r = run({"check", fixture_path("ok.tl")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("direct: yes"), std::string::npos);
    EXPECT_NE(r.out.find("all goals hold"), std::string::npos);
}

TEST(Check, SyntaxErrorIsUsageError) {
    auto r = run({"check", fixture_path("syntax_error.tl")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("syntax_error.tl:3:1:"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Check, WellFormednessErrorsCarryLocations) {
    TempDir dir;
    auto file = dir.write("bad.tl", "#[callable(arity = 3)]\ntrait C<A>;\n");
    auto r = run({"check", file});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("bad.tl:"), std::string::npos) << r.err;
}

TEST(Check, MissingFileIsUsageError) {
    auto r = run({"check", "/nonexistent/prog.tl"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_FALSE(r.err.empty());
}

TEST(Tree, AstTextShowsCycleInOrder) {
    auto r = run({"tree", fixture_path("ast.tl"), "--goal", "assocs", "--format", "text"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    auto a = r.out.find("goal 0: EmptyNode: AstAssocs");
    auto b = r.out.find("goal 2: EmptyNode: AssocData<EmptyNode>");
    auto c = r.out.find("goal 4: EmptyNode: AstAssocs");
    ASSERT_NE(a, std::string::npos) << r.out;
    ASSERT_NE(b, std::string::npos) << r.out;
    ASSERT_NE(c, std::string::npos) << r.out;
    EXPECT_LT(a, b);
    EXPECT_LT(b, c);
    EXPECT_NE(r.out.find("cycle through goals 0 -> 2 -> 4"), std::string::npos);
}

TEST(Tree, JsonIsADocument) {
    auto r = run({"tree", fixture_path("bevy.tl"), "--goal", "add_systems", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema_version"], "1");
    ASSERT_EQ(j["goals"].size(), 1u);
    EXPECT_EQ(j["goals"][0]["label"], "add_systems");
    EXPECT_EQ(j["goals"][0]["result"], "no");
}

TEST(Tree, UnknownGoalIsUsageError) {
    auto r = run({"tree", fixture_path("bevy.tl"), "--goal", "nope"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("no goal labelled `nope`"), std::string::npos);
    EXPECT_NE(r.err.find("add_systems"), std::string::npos);
}

TEST(Tree, BadFormatIsUsageError) {
    auto r = run({"tree", fixture_path("bevy.tl"), "--goal", "add_systems", "--format", "yaml"});
    EXPECT_EQ(r.code, kExitUsage);
}

TEST(Rank, InertiaAndDepthOrders) {
    auto r = run({"rank", fixture_path("bevy.tl"), "--goal", "add_systems"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out,
              "0\tnode 8\tkey 1\tTimer: SystemParam\tTrait(L, E)\n"
              "1\tnode 10\tkey 9\trun_timer: System\tFnToTrait(E, 1)\n");
    auto d = run({"rank", fixture_path("bevy.tl"), "--goal", "add_systems", "--heuristic", "depth"});
    ASSERT_EQ(d.code, kExitOk);
    EXPECT_EQ(d.out.rfind("0\tnode 10\t", 0), 0u) << d.out;
}

TEST(Rank, UnknownHeuristicIsUsageError) {
    auto r = run({"rank", fixture_path("bevy.tl"), "--goal", "add_systems", "--heuristic", "random"});
    EXPECT_EQ(r.code, kExitUsage);
}

TEST(Usage, NoCommandOrUnknownCommand) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Environment, MaxDepthValidated) {
    {
        EnvGuard env("0");
        EXPECT_EQ(run({"check", fixture_path("ok.tl")}).code, kExitUsage);
    }
    {
        EnvGuard env("lots");
        auto r = run({"check", fixture_path("ok.tl")});
        EXPECT_EQ(r.code, kExitUsage);
        EXPECT_NE(r.err.find("TRAITSCOPE_MAX_DEPTH"), std::string::npos) << r.err;
    }
    {
        EnvGuard env("1");
        // Bevy's leaves sit below depth 1, so the cut shows up as overflow.
        auto r = run({"tree", fixture_path("bevy.tl"), "--goal", "add_systems", "--format", "text"});
        EXPECT_EQ(r.code, kExitOk);
        EXPECT_NE(r.out.find("overflow"), std::string::npos) << r.out;
    }
}

std::vector<std::string> suite_args() {
    std::vector<std::string> args{"compare"};
    for (const auto& n : testing::failing_fixture_names()) args.push_back(fixture_path(n));
    args.push_back("--ground-truth-map");
    args.push_back(fixture_path("ground_truth.json"));
    return args;
}

TEST(Compare, InertiaBeatsBaselines) {
    auto args = suite_args();
    args.push_back("--json");
    args.push_back("-");
    auto r = run(args);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto brace = r.out.find("\n{");
    ASSERT_NE(brace, std::string::npos);
    EXPECT_NE(r.out.find("median"), std::string::npos);
    auto j = nlohmann::json::parse(r.out.substr(brace + 1));
    ASSERT_EQ(j["programs"].size(), testing::failing_fixture_names().size());
    for (const auto& p : j["programs"]) {
        auto inertia = p["distance"]["inertia"].get<unsigned>();
        for (const char* m : kMethods) EXPECT_LE(inertia, p["distance"][m].get<unsigned>()) << p["program"] << " " << m;
    }
    auto med = j["medians"];
    EXPECT_LE(med["inertia"].get<double>(), med["emulated_compiler"].get<double>());
    EXPECT_LE(med["inertia"].get<double>(), med["depth"].get<double>());
    EXPECT_LE(med["inertia"].get<double>(), med["infer_vars"].get<double>());
    EXPECT_LT(med["inertia"].get<double>(), med["emulated_compiler"].get<double>());
}

TEST(Compare, JsonToFile) {
    TempDir dir;
    auto out_file = dir.write("report.json", "");
    auto args = suite_args();
    args.push_back("--json");
    args.push_back(out_file);
    ASSERT_EQ(run(args).code, kExitOk);
    std::ifstream in(out_file);
    auto j = nlohmann::json::parse(in);
    EXPECT_TRUE(j.contains("medians"));
}

TEST(Compare, UnmatchedGroundTruthListsCandidates) {
    TempDir dir;
    auto map = dir.write("gt.json", R"({"bevy.tl": "Nope: Nothing"})");
    auto r = run({"compare", fixture_path("bevy.tl"), "--ground-truth-map", map});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("candidate: app::Timer: bevy::ecs::SystemParam"), std::string::npos) << r.err;
}

TEST(Compare, MissingOrMalformedMap) {
    TempDir dir;
    auto empty = dir.write("gt.json", "{}");
    EXPECT_EQ(run({"compare", fixture_path("bevy.tl"), "--ground-truth-map", empty}).code, kExitUsage);
    auto broken = dir.write("broken.json", "{not json");
    EXPECT_EQ(run({"compare", fixture_path("bevy.tl"), "--ground-truth-map", broken}).code, kExitUsage);
    auto list = dir.write("list.json", "[]");
    EXPECT_EQ(run({"compare", fixture_path("bevy.tl"), "--ground-truth-map", list}).code, kExitUsage);
}

TEST(Compare, ShortenedGroundTruthAccepted) {
    auto ctx = testing::load_fixture("bevy.tl");
    auto c = compare_program(ctx, "bevy.tl", "Timer: SystemParam");
    EXPECT_EQ(c.ground_truth, 8u);
    EXPECT_EQ(c.distance.at("inertia"), 0u);
    EXPECT_EQ(c.distance.at("depth"), 1u);
    EXPECT_EQ(c.distance.at("emulated_compiler"), 2u);
}

TEST(Emulation, BevyStopsAtBranchPoint) {
    auto ctx = testing::load_fixture("bevy.tl");
    auto tree = solve(ctx, ctx.goals()[0].predicate);
    auto at = emulate_compiler_report(tree);
    EXPECT_EQ(at, *testing::find_goal_by_text(tree, ctx, "app::run_timer: bevy::ecs::IntoSystem<unit, unit, ?1>"));
    EXPECT_EQ(goal_distance(tree, at, 8), 2u);
    EXPECT_EQ(goal_distance(tree, 8, at), 2u);
    EXPECT_EQ(goal_distance(tree, at, at), 0u);
}

TEST(Emulation, SingleLeafReportsItself) {
    auto ctx = parse_context("trait T; newtype A = unit; goal g: A: T;");
    auto tree = solve(ctx, ctx.goals()[0].predicate);
    EXPECT_EQ(emulate_compiler_report(tree), tree.root());
}

TEST(Emulation, ReportedNodeIsAFailingGoal) {
    for (const auto& name : testing::failing_fixture_names()) {
        auto ctx = testing::load_fixture(name);
        auto tree = solve(ctx, ctx.goals()[0].predicate);
        auto at = emulate_compiler_report(tree);
        ASSERT_TRUE(tree.is_goal(at)) << name;
        EXPECT_TRUE(tree.result(at).failed()) << name;
    }
}

TEST(Emulation, GoalDistanceIsAMetricOnPaths) {
    auto ctx = testing::load_fixture("diesel.tl");
    auto tree = solve(ctx, ctx.goals()[0].predicate);
    auto leaves = failed_leaves(tree);
    for (auto a : leaves) {
        EXPECT_EQ(goal_distance(tree, a, tree.root()), tree.depth(a));
        for (auto b : leaves) EXPECT_EQ(goal_distance(tree, a, b), goal_distance(tree, b, a));
    }
}

}  // namespace
}  // namespace traitscope
