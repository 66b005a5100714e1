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

#include "traitscope/ranking.hpp"

namespace traitscope {

namespace {

constexpr Provenance L = Provenance::Local;
constexpr Provenance E = Provenance::External;

const char* loc(Provenance p) { return p == L ? "L" : "E"; }

template <class... Ts>
struct Overload : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

}  // namespace

std::uint64_t weight(const GoalKind& kind) {
    return std::visit(Overload{
                          [](const kind::Trait& k) -> std::uint64_t {
                              if (k.self_loc == L && k.trait_loc == L) return 0;
                              if (k.self_loc == E && k.trait_loc == E) return 2;
                              return 1;
                          },
                          [](const kind::TyChange&) -> std::uint64_t { return 4; },
                          [](const kind::FnToTrait& k) -> std::uint64_t {
                              return k.trait_loc == L ? 1 : 4 + 5 * std::uint64_t{k.arity};
                          },
                          [](const kind::TyAsCallable& k) -> std::uint64_t { return 4 + 5 * std::uint64_t{k.arity}; },
                          [](const kind::DeleteFnParams& k) -> std::uint64_t { return 5 * std::uint64_t{k.delta}; },
                          [](const kind::AddFnParams& k) -> std::uint64_t { return 5 * std::uint64_t{k.delta}; },
                          [](const kind::IncorrectParams& k) -> std::uint64_t { return 5 * std::uint64_t{k.arity}; },
                          [](const kind::Misc&) -> std::uint64_t { return 50; },
                      },
                      kind);
}

std::string to_string(const GoalKind& kind) {
    return std::visit(
        Overload{
            [](const kind::Trait& k) { return std::string("Trait(") + loc(k.self_loc) + ", " + loc(k.trait_loc) + ")"; },
            [](const kind::TyChange&) { return std::string("TyChange"); },
            [](const kind::FnToTrait& k) {
                return std::string("FnToTrait(") + loc(k.trait_loc) + ", " + std::to_string(k.arity) + ")";
            },
            [](const kind::TyAsCallable& k) { return "TyAsCallable(" + std::to_string(k.arity) + ")"; },
            [](const kind::DeleteFnParams& k) { return "DeleteFnParams(" + std::to_string(k.delta) + ")"; },
            [](const kind::AddFnParams& k) { return "AddFnParams(" + std::to_string(k.delta) + ")"; },
            [](const kind::IncorrectParams& k) { return "IncorrectParams(" + std::to_string(k.arity) + ")"; },
            [](const kind::Misc&) { return std::string("Misc"); },
        },
        kind);
}

GoalKind classify_goal(const GoalNode& leaf, const Context& context) {
    if (std::holds_alternative<ProjectionEq>(leaf.predicate)) return kind::TyChange{};
    const auto* tb = std::get_if<TraitBound>(&leaf.predicate);
    if (!tb) return kind::Misc{};
    const auto* trait = context.trait(tb->instance.trait);
    if (!trait) return kind::Misc{};
    Provenance trait_loc = context.symbol(trait->name).provenance;
    auto self_arity = context.callable_arity_of(tb->self_type);

    if (trait->callable_arity) {
        std::uint32_t n = *trait->callable_arity;
        if (!self_arity) return kind::TyAsCallable{n};
        if (*self_arity < n) return kind::AddFnParams{n - *self_arity};
        if (*self_arity > n) return kind::DeleteFnParams{*self_arity - n};
        if (n > 0) return kind::IncorrectParams{n};
        return kind::Misc{};
    }
    if (self_arity) return kind::FnToTrait{trait_loc, *self_arity};

    Type self = tb->self_type;
    if (const auto* r = self.as<RefType>()) self = r->inner;
    if (const auto* c = self.as<CtorType>()) {
        if (context.has_symbol(c->head)) return kind::Trait{context.symbol(c->head).provenance, trait_loc};
    }
    return kind::Misc{};
}

}  // namespace traitscope
