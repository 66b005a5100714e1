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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "traitscope/types.hpp"

namespace traitscope {

enum class Provenance { Local, External };

struct Span {
    std::string file;
    std::uint32_t line_start = 0;
    std::uint32_t line_end = 0;
    friend bool operator==(const Span&, const Span&) = default;
};

/// `forall regions, types where clauses`
struct Params {
    std::vector<RegionVar> region_binders;
    std::vector<std::string> type_binders;
    std::vector<Predicate> where_clauses;
    friend bool operator==(const Params&, const Params&) = default;
};

struct NewtypeDecl {
    SymbolId head;
    Params params;
    Type body;
    friend bool operator==(const NewtypeDecl&, const NewtypeDecl&) = default;
};

struct AssocDecl {
    SymbolId id;
    Params params;
    friend bool operator==(const AssocDecl&, const AssocDecl&) = default;
};

struct TraitDecl {
    SymbolId name;
    Params params;
    std::vector<AssocDecl> assoc_decls;
    /// Set for function-style traits (`#[callable(arity = N)]`): the first N
    /// type parameters are argument types, an optional trailing one the output.
    std::optional<std::uint32_t> callable_arity;
    friend bool operator==(const TraitDecl&, const TraitDecl&) = default;
};

struct AssocBinding {
    SymbolId assoc;
    Params params;
    Type value;
    friend bool operator==(const AssocBinding&, const AssocBinding&) = default;
};

struct ImplBlock {
    ImplId id;
    Params params;
    TraitInstance instance;
    Type self_type;
    std::vector<AssocBinding> assoc_bindings;
    friend bool operator==(const ImplBlock&, const ImplBlock&) = default;
};

struct Declaration {
    std::variant<NewtypeDecl, TraitDecl, ImplBlock> item;
    Provenance provenance = Provenance::Local;
    Span span;
};

enum class SymbolKind { Newtype, Trait, AssocType };

struct SymbolInfo {
    SymbolKind kind = SymbolKind::Newtype;
    std::string path;  // fully qualified, `::`-separated
    Provenance provenance = Provenance::Local;
    Span span;

    /// Last path segment.
    [[nodiscard]] std::string_view name() const;
};

struct GoalItem {
    std::string label;
    Predicate predicate;
    Span span;
};

/// A parsed program: declarations, goals and the symbol table. Immutable
/// once constructed; lookups are indexed at construction.
class Context {
  public:
    Context() = default;
    Context(std::vector<Declaration> declarations, std::vector<GoalItem> goals, std::vector<SymbolInfo> symbols);

    [[nodiscard]] const std::vector<Declaration>& declarations() const { return declarations_; }
    [[nodiscard]] const std::vector<GoalItem>& goals() const { return goals_; }
    [[nodiscard]] const std::vector<SymbolInfo>& symbols() const { return symbols_; }

    [[nodiscard]] bool has_symbol(SymbolId id) const { return id.value < symbols_.size(); }
    [[nodiscard]] const SymbolInfo& symbol(SymbolId id) const { return symbols_.at(id.value); }
    [[nodiscard]] std::optional<SymbolId> find_symbol(std::string_view path) const;

    [[nodiscard]] const NewtypeDecl* newtype(SymbolId id) const;
    [[nodiscard]] const TraitDecl* trait(SymbolId id) const;
    /// Trait owning an associated type symbol.
    [[nodiscard]] const TraitDecl* trait_of_assoc(SymbolId assoc) const;
    [[nodiscard]] const Declaration* declaration_of(SymbolId id) const;

    [[nodiscard]] const ImplBlock* impl(ImplId id) const;
    [[nodiscard]] const Declaration* impl_declaration(ImplId id) const;
    /// Impls of a trait in declaration order.
    [[nodiscard]] std::vector<const ImplBlock*> impls_of(SymbolId trait) const;
    [[nodiscard]] std::size_t impl_count() const { return impl_index_.size(); }

    [[nodiscard]] const GoalItem* find_goal(std::string_view label) const;

    /// Surface arity when `type` denotes something callable: a function
    /// type, or a function item (a newtype whose body is a function type).
    [[nodiscard]] std::optional<std::uint32_t> callable_arity_of(const Type& type) const;
    /// True for a nominal function item such as `run_timer`.
    [[nodiscard]] bool is_function_item(const Type& type) const;

  private:
    std::vector<Declaration> declarations_;
    std::vector<GoalItem> goals_;
    std::vector<SymbolInfo> symbols_;
    std::vector<std::optional<std::size_t>> decl_of_symbol_;
    std::vector<std::optional<SymbolId>> trait_of_assoc_;
    std::vector<std::size_t> impl_index_;  // ImplId -> declaration index
    std::unordered_map<std::uint32_t, std::vector<ImplId>> impls_by_trait_;
    std::unordered_map<std::string, SymbolId> by_path_;
};

/// Structural equality that ignores source spans.
[[nodiscard]] bool same_up_to_spans(const Context& a, const Context& b);

/// Parameters of a function type in surface order, plus its output.
struct FunctionShape {
    std::vector<Type> params;
    Type output;
};
[[nodiscard]] std::optional<FunctionShape> function_shape(const Type& fn_type);

}  // namespace traitscope
