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

#include "traitscope/context.hpp"

namespace traitscope {

std::string_view SymbolInfo::name() const {
    std::string_view p = path;
    auto pos = p.rfind("::");
    return pos == std::string_view::npos ? p : p.substr(pos + 2);
}

Context::Context(std::vector<Declaration> declarations, std::vector<GoalItem> goals,
                 std::vector<SymbolInfo> symbols)
    : declarations_(std::move(declarations)), goals_(std::move(goals)), symbols_(std::move(symbols)) {
    decl_of_symbol_.assign(symbols_.size(), std::nullopt);
    trait_of_assoc_.assign(symbols_.size(), std::nullopt);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        by_path_.emplace(symbols_[i].path, SymbolId{static_cast<std::uint32_t>(i)});
    }
    for (std::size_t i = 0; i < declarations_.size(); ++i) {
        const auto& item = declarations_[i].item;
        if (const auto* n = std::get_if<NewtypeDecl>(&item)) {
            if (n->head.value < symbols_.size()) decl_of_symbol_[n->head.value] = i;
        } else if (const auto* t = std::get_if<TraitDecl>(&item)) {
            if (t->name.value < symbols_.size()) decl_of_symbol_[t->name.value] = i;
            for (const auto& assoc : t->assoc_decls) {
                if (assoc.id.value < symbols_.size()) {
                    decl_of_symbol_[assoc.id.value] = i;
                    trait_of_assoc_[assoc.id.value] = t->name;
                }
            }
        } else if (const auto* impl = std::get_if<ImplBlock>(&item)) {
            if (impl_index_.size() <= impl->id.value) impl_index_.resize(impl->id.value + 1);
            impl_index_[impl->id.value] = i;
            impls_by_trait_[impl->instance.trait.value].push_back(impl->id);
        }
    }
}

std::optional<SymbolId> Context::find_symbol(std::string_view path) const {
    if (auto it = by_path_.find(std::string(path)); it != by_path_.end()) return it->second;
    return std::nullopt;
}

const Declaration* Context::declaration_of(SymbolId id) const {
    if (id.value >= decl_of_symbol_.size() || !decl_of_symbol_[id.value]) return nullptr;
    return &declarations_[*decl_of_symbol_[id.value]];
}

const NewtypeDecl* Context::newtype(SymbolId id) const {
    const auto* decl = declaration_of(id);
    return decl ? std::get_if<NewtypeDecl>(&decl->item) : nullptr;
}

const TraitDecl* Context::trait(SymbolId id) const {
    const auto* decl = declaration_of(id);
    if (!decl) return nullptr;
    const auto* t = std::get_if<TraitDecl>(&decl->item);
    return (t && t->name == id) ? t : nullptr;
}

const TraitDecl* Context::trait_of_assoc(SymbolId assoc) const {
    if (assoc.value >= trait_of_assoc_.size() || !trait_of_assoc_[assoc.value]) return nullptr;
    return trait(*trait_of_assoc_[assoc.value]);
}

const Declaration* Context::impl_declaration(ImplId id) const {
    if (id.value >= impl_index_.size()) return nullptr;
    return &declarations_[impl_index_[id.value]];
}

const ImplBlock* Context::impl(ImplId id) const {
    const auto* decl = impl_declaration(id);
    return decl ? std::get_if<ImplBlock>(&decl->item) : nullptr;
}

std::vector<const ImplBlock*> Context::impls_of(SymbolId trait) const {
    std::vector<const ImplBlock*> out;
    if (auto it = impls_by_trait_.find(trait.value); it != impls_by_trait_.end()) {
        for (auto id : it->second) out.push_back(impl(id));
    }
    return out;
}

const GoalItem* Context::find_goal(std::string_view label) const {
    for (const auto& goal : goals_) {
        if (goal.label == label) return &goal;
    }
    return nullptr;
}

std::optional<std::uint32_t> Context::callable_arity_of(const Type& type) const {
    if (const auto* fn = type.as<FnType>()) return fn->surface_arity;
    if (const auto* c = type.as<CtorType>()) {
        if (const auto* n = newtype(c->head)) {
            if (const auto* body = n->body.as<FnType>()) return body->surface_arity;
        }
    }
    return std::nullopt;
}

bool Context::is_function_item(const Type& type) const {
    const auto* c = type.as<CtorType>();
    if (!c) return false;
    const auto* n = newtype(c->head);
    return n && n->body.is<FnType>();
}

std::optional<FunctionShape> function_shape(const Type& fn_type) {
    const auto* fn = fn_type.as<FnType>();
    if (!fn) return std::nullopt;
    FunctionShape shape;
    if (fn->surface_arity == 0) {
        shape.output = fn->result;
        return shape;
    }
    shape.params.push_back(fn->param);
    Type rest = fn->result;
    for (std::uint32_t i = 1; i < fn->surface_arity; ++i) {
        const auto* next = rest.as<FnType>();
        if (!next) return std::nullopt;
        shape.params.push_back(next->param);
        rest = next->result;
    }
    shape.output = rest;
    return shape;
}

namespace {

bool same_symbols(const std::vector<SymbolInfo>& a, const std::vector<SymbolInfo>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].kind != b[i].kind || a[i].path != b[i].path || a[i].provenance != b[i].provenance) return false;
    }
    return true;
}

}  // namespace

bool same_up_to_spans(const Context& a, const Context& b) {
    if (!same_symbols(a.symbols(), b.symbols())) return false;
    if (a.declarations().size() != b.declarations().size()) return false;
    for (std::size_t i = 0; i < a.declarations().size(); ++i) {
        const auto& da = a.declarations()[i];
        const auto& db = b.declarations()[i];
        if (da.provenance != db.provenance || !(da.item == db.item)) return false;
    }
    if (a.goals().size() != b.goals().size()) return false;
    for (std::size_t i = 0; i < a.goals().size(); ++i) {
        if (a.goals()[i].label != b.goals()[i].label || !(a.goals()[i].predicate == b.goals()[i].predicate)) {
            return false;
        }
    }
    return true;
}

}  // namespace traitscope
