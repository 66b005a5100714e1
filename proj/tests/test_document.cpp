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

#include <functional>
#include <set>

#include "support.hpp"
#include "traitscope/document.hpp"
#include "traitscope/parser.hpp"

namespace traitscope {
namespace {

using nlohmann::json;
using testing::load_fixture;

TreeDocument document_for(const Context& ctx) { return build_document(ctx, solve_all(ctx, SolveConfig{})); }

TEST(Document, RoundTripIsByteIdentical) {
    for (const auto& name : testing::all_fixture_names()) {
        auto ctx = load_fixture(name);
        auto doc = document_for(ctx);
        auto text = write_document(doc);
        auto back = read_document(text);
        EXPECT_EQ(back, doc) << name;
        EXPECT_EQ(write_document(back), text) << name;
        EXPECT_EQ(back.schema_version, "1");
    }
}

TEST(Document, EveryReferencedIdResolves) {
    for (const auto& name : testing::all_fixture_names()) {
        auto ctx = load_fixture(name);
        auto doc = document_for(ctx);
        for (const auto& g : doc.goals) {
            ASSERT_NE(doc.find_node(g.root), nullptr) << name;
            for (const auto& [id, n] : g.nodes) {
                for (auto c : n.children) {
                    ASSERT_NE(doc.find_node(c), nullptr);
                    EXPECT_EQ(doc.find_node(c)->parent, id);
                }
            }
            for (const auto& [h, ids] : doc.rankings.at(g.label)) {
                for (auto id : ids) EXPECT_NE(doc.find_node(id), nullptr) << name << " " << h;
            }
        }
    }
}

TEST(Document, BevyInertiaRanksTimerFirst) {
    auto ctx = load_fixture("bevy.tl");
    auto doc = document_for(ctx);
    ASSERT_EQ(doc.goals.size(), 1u);
    const auto& label = doc.goals[0].label;
    EXPECT_EQ(doc.goals[0].result, "no");
    const auto& ids = doc.rankings.at(label).at("inertia");
    ASSERT_FALSE(ids.empty());
    const auto* node = doc.find_node(ids.front());
    ASSERT_NE(node, nullptr);
    ASSERT_TRUE(node->predicate.has_value());
    EXPECT_EQ(node->predicate->short_text, "Timer: SystemParam");
    EXPECT_EQ(node->predicate->qualified, "app::Timer: bevy::ecs::SystemParam");
    ASSERT_TRUE(node->goal_kind.has_value());
    EXPECT_EQ(node->goal_kind->weight, 1u);
    EXPECT_EQ(doc.views.at(label).bottom_up.front().leaf, ids.front());
}

TEST(Document, NodeIdsAreUniqueAcrossGoals) {
    auto ctx = parse_context(R"(
        trait T; newtype A = unit; newtype B = unit;
        impl T for A;
        goal first: A: T;
        goal second: B: T;
    )");
    auto doc = document_for(ctx);
    ASSERT_EQ(doc.goals.size(), 2u);
    std::set<std::uint32_t> seen;
    for (const auto& g : doc.goals) {
        for (const auto& [id, _] : g.nodes) EXPECT_TRUE(seen.insert(id).second) << id;
    }
    EXPECT_EQ(doc.goals[0].result, "yes");
    EXPECT_EQ(doc.goals[1].result, "no");
    EXPECT_EQ(doc.find_goal("second")->root, doc.goals[0].nodes.size());
    EXPECT_EQ(doc.find_goal("missing"), nullptr);
}

TEST(Document, AstOverflowCarriesCyclePath) {
    auto ctx = load_fixture("ast.tl");
    auto doc = document_for(ctx);
    const auto* leaf = doc.find_node(4);
    ASSERT_NE(leaf, nullptr);
    ASSERT_TRUE(leaf->reason.has_value());
    EXPECT_EQ(leaf->reason->kind, "overflow");
    EXPECT_EQ(leaf->reason->cycle_path, (std::vector<std::uint32_t>{0, 2, 4}));
    EXPECT_EQ(leaf->result, "maybe");
}

TEST(Document, StructuredPredicateUsesSymbolIds) {
    auto ctx = load_fixture("bevy.tl");
    auto doc = document_for(ctx);
    auto j = to_json(doc);
    const auto& root = j["goals"][0]["nodes"][std::to_string(doc.goals[0].root)];
    const auto& s = root["predicate"]["structured"];
    ASSERT_TRUE(s.is_object());
    // Every symbol id referenced anywhere in the structured form is in the table.
    int hits = 0;
    std::function<void(const json&)> walk = [&](const json& v) {
        if (v.is_object()) {
            for (const auto& [k, x] : v.items()) {
                if ((k == "trait" || k == "head" || k == "assoc") && x.is_number_unsigned()) {
                    ++hits;
                    EXPECT_TRUE(doc.symbols.contains(x.get<std::uint32_t>())) << x;
                }
                walk(x);
            }
        } else if (v.is_array()) {
            for (const auto& x : v) walk(x);
        }
    };
    walk(s);
    EXPECT_GE(hits, 2);
}

TEST(DocumentReader, RejectsUnknownSchemaVersion) {
    auto ctx = load_fixture("bevy.tl");
    auto j = to_json(document_for(ctx));
    j["schema_version"] = "2";
    EXPECT_THROW((void)from_json(j), DocumentError);
}

TEST(DocumentReader, RejectsDanglingIds) {
    auto ctx = load_fixture("bevy.tl");
    auto j = to_json(document_for(ctx));
    auto label = j["goals"][0]["label"].get<std::string>();
    j["rankings"][label]["inertia"].push_back(99999);
    EXPECT_THROW((void)from_json(j), DocumentError);

    auto k = to_json(document_for(ctx));
    k["goals"][0]["root"] = 4242;
    EXPECT_THROW((void)from_json(k), DocumentError);
}

TEST(DocumentReader, RejectsMissingFieldsAndBadJson) {
    EXPECT_THROW((void)read_document("{"), DocumentError);
    EXPECT_THROW((void)read_document("{}"), DocumentError);
    auto ctx = load_fixture("bevy.tl");
    auto j = to_json(document_for(ctx));
    j.erase("views");
    EXPECT_THROW((void)from_json(j), DocumentError);
}

}  // namespace
}  // namespace traitscope
