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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace traitscope {

/// Index into a Context's symbol table.
struct SymbolId {
    std::uint32_t value = 0;
    friend auto operator<=>(SymbolId, SymbolId) = default;
};

/// Index of an impl block within a Context.
struct ImplId {
    std::uint32_t value = 0;
    friend auto operator<=>(ImplId, ImplId) = default;
};

/// Opaque region (lifetime) name. Regions never constrain solving.
struct RegionVar {
    std::string name;
    friend bool operator==(const RegionVar&, const RegionVar&) = default;
};

class TypeNode;
struct TraitBound;
struct Outlives;
struct ProjectionEq;

/// Immutable, shareable handle to a type term. Copies are cheap; equality
/// is structural.
class Type {
  public:
    Type();  // unit

    static Type unit();
    static Type var(std::string name);
    static Type infer(std::uint32_t index);
    static Type ref(RegionVar region, bool mutable_ref, Type inner);
    static Type ctor(SymbolId head, std::vector<Type> args = {});
    static Type tuple(Type left, Type right);
    /// `surface_arity` is the parameter count written at the surface; a
    /// curried tail carries arity 1.
    static Type function(Type param, Type result, std::uint32_t surface_arity = 1);
    static Type projection(struct Projection projection);
    static Type existential(std::string binder, std::vector<std::variant<TraitBound, Outlives, ProjectionEq>> bounds);

    template <class T>
    [[nodiscard]] const T* as() const;
    template <class T>
    [[nodiscard]] bool is() const { return as<T>() != nullptr; }

    [[nodiscard]] const TypeNode& node() const { return *node_; }

    friend bool operator==(const Type& a, const Type& b);

  private:
    explicit Type(std::shared_ptr<const TypeNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const TypeNode> node_;
};

struct TraitInstance {
    SymbolId trait;
    std::vector<Type> type_args;
    std::vector<RegionVar> region_args;
    friend bool operator==(const TraitInstance&, const TraitInstance&) = default;
};

/// `<self_type as instance>::assoc<type_args, region_args>`
struct Projection {
    Type self_type;
    SymbolId assoc;
    TraitInstance instance;
    std::vector<Type> type_args;
    std::vector<RegionVar> region_args;
    friend bool operator==(const Projection&, const Projection&) = default;
};

struct TraitBound {
    Type self_type;
    TraitInstance instance;
    friend bool operator==(const TraitBound&, const TraitBound&) = default;
};

struct Outlives {
    Type self_type;
    RegionVar region;
    friend bool operator==(const Outlives&, const Outlives&) = default;
};

struct ProjectionEq {
    Projection projection;
    Type rhs;
    friend bool operator==(const ProjectionEq&, const ProjectionEq&) = default;
};

using Predicate = std::variant<TraitBound, Outlives, ProjectionEq>;

// Type node alternatives.
struct UnitType {
    friend bool operator==(const UnitType&, const UnitType&) = default;
};
struct TypeVar {
    std::string name;
    friend bool operator==(const TypeVar&, const TypeVar&) = default;
};
struct InferVar {
    std::uint32_t index = 0;
    friend bool operator==(const InferVar&, const InferVar&) = default;
};
struct RefType {
    RegionVar region;
    bool mutable_ref = false;
    Type inner;
    friend bool operator==(const RefType&, const RefType&) = default;
};
struct CtorType {
    SymbolId head;
    std::vector<Type> args;
    friend bool operator==(const CtorType&, const CtorType&) = default;
};
struct TupleType {
    Type left;
    Type right;
    friend bool operator==(const TupleType&, const TupleType&) = default;
};
struct FnType {
    Type param;
    Type result;
    std::uint32_t surface_arity = 1;
    friend bool operator==(const FnType&, const FnType&) = default;
};
struct ProjType {
    Projection projection;
    friend bool operator==(const ProjType&, const ProjType&) = default;
};
struct DynType {
    std::string binder;
    std::vector<Predicate> bounds;
    friend bool operator==(const DynType&, const DynType&) = default;
};

class TypeNode {
  public:
    using Variant = std::variant<UnitType, TypeVar, InferVar, RefType, CtorType, TupleType, FnType, ProjType, DynType>;
    explicit TypeNode(Variant v) : value(std::move(v)) {}
    Variant value;
};

template <class T>
const T* Type::as() const {
    return std::get_if<T>(&node_->value);
}

/// Name of the binder used for `dyn` existentials written at the surface.
inline constexpr const char* kDynBinder = "dyn";

// Structural queries.
[[nodiscard]] bool contains_infer_vars(const Type& type);
[[nodiscard]] bool contains_infer_vars(const Predicate& predicate);
/// Distinct inference variables in first-occurrence order.
[[nodiscard]] std::vector<std::uint32_t> infer_vars_of(const Type& type);
[[nodiscard]] std::vector<std::uint32_t> infer_vars_of(const Predicate& predicate);
[[nodiscard]] std::uint32_t max_infer_var_bound(const Predicate& predicate);  // 1 + largest index, 0 if none
[[nodiscard]] bool contains_projection(const Type& type);

/// Injective structural encoding over symbol ids; useful as a map key.
[[nodiscard]] std::string structural_key(const Type& type);
[[nodiscard]] std::string structural_key(const TraitInstance& instance);
[[nodiscard]] std::string structural_key(const Predicate& predicate);

/// Key identifying a predicate up to consistent renaming of inference
/// variables (alpha-equivalence).
[[nodiscard]] std::string alpha_key(const Predicate& predicate);
[[nodiscard]] inline bool alpha_equivalent(const Predicate& a, const Predicate& b) {
    return alpha_key(a) == alpha_key(b);
}

/// Bare inference variable the predicate is "about", if any. Such
/// predicates cannot make progress until the variable is resolved.
[[nodiscard]] const InferVar* stalled_on(const Predicate& predicate);

[[nodiscard]] const Type& self_type_of(const Predicate& predicate);

/// Rebuilds a term top-down. `replace` is consulted at every type node; a
/// returned value is used verbatim (no further descent), otherwise the
/// node's children are rewritten.
using TypeRewriter = std::function<std::optional<Type>(const Type&)>;
[[nodiscard]] Type rewrite(const Type& type, const TypeRewriter& replace);
[[nodiscard]] TraitInstance rewrite(const TraitInstance& instance, const TypeRewriter& replace);
[[nodiscard]] Projection rewrite(const Projection& projection, const TypeRewriter& replace);
[[nodiscard]] Predicate rewrite(const Predicate& predicate, const TypeRewriter& replace);

/// Replaces type variables by name; other nodes are kept.
[[nodiscard]] Type substitute_type_vars(const Type& type, const std::map<std::string, Type>& mapping);
[[nodiscard]] Predicate substitute_type_vars(const Predicate& predicate, const std::map<std::string, Type>& mapping);
[[nodiscard]] TraitInstance substitute_type_vars(const TraitInstance& instance, const std::map<std::string, Type>& mapping);

}  // namespace traitscope
