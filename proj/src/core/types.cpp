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

#include "traitscope/types.hpp"

#include <algorithm>
#include <unordered_map>

namespace traitscope {

namespace {

template <class... Ts>
struct Overload : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

const std::shared_ptr<const TypeNode>& unit_node() {
    static const auto node = std::make_shared<const TypeNode>(UnitType{});
    return node;
}

// Pre-order walk over every type reachable from a term, including the
// components of projections and existential bounds.
void walk(const Type& type, const std::function<void(const Type&)>& visit);

void walk(const TraitInstance& instance, const std::function<void(const Type&)>& visit) {
    for (const auto& arg : instance.type_args) walk(arg, visit);
}

void walk(const Projection& projection, const std::function<void(const Type&)>& visit) {
    walk(projection.self_type, visit);
    walk(projection.instance, visit);
    for (const auto& arg : projection.type_args) walk(arg, visit);
}

void walk(const Predicate& predicate, const std::function<void(const Type&)>& visit) {
    std::visit(Overload{
                   [&](const TraitBound& p) {
                       walk(p.self_type, visit);
                       walk(p.instance, visit);
                   },
                   [&](const Outlives& p) { walk(p.self_type, visit); },
                   [&](const ProjectionEq& p) {
                       walk(p.projection, visit);
                       walk(p.rhs, visit);
                   },
               },
               predicate);
}

void walk(const Type& type, const std::function<void(const Type&)>& visit) {
    visit(type);
    std::visit(Overload{
                   [](const UnitType&) {},
                   [](const TypeVar&) {},
                   [](const InferVar&) {},
                   [&](const RefType& t) { walk(t.inner, visit); },
                   [&](const CtorType& t) {
                       for (const auto& arg : t.args) walk(arg, visit);
                   },
                   [&](const TupleType& t) {
                       walk(t.left, visit);
                       walk(t.right, visit);
                   },
                   [&](const FnType& t) {
                       walk(t.param, visit);
                       walk(t.result, visit);
                   },
                   [&](const ProjType& t) { walk(t.projection, visit); },
                   [&](const DynType& t) {
                       for (const auto& bound : t.bounds) walk(bound, visit);
                   },
               },
               type.node().value);
}

void encode(const Type& type, std::string& out);

void encode_regions(const std::vector<RegionVar>& regions, std::string& out) {
    for (const auto& r : regions) {
        out += '\'';
        out += std::to_string(r.name.size());
        out += ':';
        out += r.name;
    }
}

void encode(const TraitInstance& instance, std::string& out) {
    out += 'T';
    out += std::to_string(instance.trait.value);
    out += '[';
    for (const auto& arg : instance.type_args) encode(arg, out);
    encode_regions(instance.region_args, out);
    out += ']';
}

void encode(const Projection& projection, std::string& out) {
    out += "P(";
    encode(projection.self_type, out);
    encode(projection.instance, out);
    out += 'A';
    out += std::to_string(projection.assoc.value);
    out += '[';
    for (const auto& arg : projection.type_args) encode(arg, out);
    encode_regions(projection.region_args, out);
    out += "])";
}

void encode(const Predicate& predicate, std::string& out) {
    std::visit(Overload{
                   [&](const TraitBound& p) {
                       out += "B(";
                       encode(p.self_type, out);
                       encode(p.instance, out);
                       out += ')';
                   },
                   [&](const Outlives& p) {
                       out += "O(";
                       encode(p.self_type, out);
                       encode_regions({p.region}, out);
                       out += ')';
                   },
                   [&](const ProjectionEq& p) {
                       out += "E(";
                       encode(p.projection, out);
                       encode(p.rhs, out);
                       out += ')';
                   },
               },
               predicate);
}

void encode(const Type& type, std::string& out) {
    std::visit(Overload{
                   [&](const UnitType&) { out += 'u'; },
                   [&](const TypeVar& t) {
                       out += 'v';
                       out += std::to_string(t.name.size());
                       out += ':';
                       out += t.name;
                   },
                   [&](const InferVar& t) {
                       out += '?';
                       out += std::to_string(t.index);
                       out += ';';
                   },
                   [&](const RefType& t) {
                       out += t.mutable_ref ? "&m" : "&";
                       encode_regions({t.region}, out);
                       encode(t.inner, out);
                   },
                   [&](const CtorType& t) {
                       out += 'C';
                       out += std::to_string(t.head.value);
                       out += '[';
                       for (const auto& arg : t.args) encode(arg, out);
                       out += ']';
                   },
                   [&](const TupleType& t) {
                       out += "(";
                       encode(t.left, out);
                       encode(t.right, out);
                       out += ")";
                   },
                   [&](const FnType& t) {
                       out += "F";
                       out += std::to_string(t.surface_arity);
                       out += '(';
                       encode(t.param, out);
                       encode(t.result, out);
                       out += ')';
                   },
                   [&](const ProjType& t) { encode(t.projection, out); },
                   [&](const DynType& t) {
                       out += "D";
                       out += std::to_string(t.binder.size());
                       out += ':';
                       out += t.binder;
                       out += '[';
                       for (const auto& b : t.bounds) encode(b, out);
                       out += ']';
                   },
               },
               type.node().value);
}

std::vector<Type> rewrite_all(const std::vector<Type>& types, const TypeRewriter& replace) {
    std::vector<Type> out;
    out.reserve(types.size());
    for (const auto& t : types) out.push_back(rewrite(t, replace));
    return out;
}

}  // namespace

Type::Type() : node_(unit_node()) {}

Type Type::unit() { return Type(); }
Type Type::var(std::string name) { return Type(std::make_shared<const TypeNode>(TypeVar{std::move(name)})); }
Type Type::infer(std::uint32_t index) { return Type(std::make_shared<const TypeNode>(InferVar{index})); }
Type Type::ref(RegionVar region, bool mutable_ref, Type inner) {
    return Type(std::make_shared<const TypeNode>(RefType{std::move(region), mutable_ref, std::move(inner)}));
}
Type Type::ctor(SymbolId head, std::vector<Type> args) {
    return Type(std::make_shared<const TypeNode>(CtorType{head, std::move(args)}));
}
Type Type::tuple(Type left, Type right) {
    return Type(std::make_shared<const TypeNode>(TupleType{std::move(left), std::move(right)}));
}
Type Type::function(Type param, Type result, std::uint32_t surface_arity) {
    return Type(std::make_shared<const TypeNode>(FnType{std::move(param), std::move(result), surface_arity}));
}
Type Type::projection(Projection projection) {
    return Type(std::make_shared<const TypeNode>(ProjType{std::move(projection)}));
}
Type Type::existential(std::string binder, std::vector<Predicate> bounds) {
    return Type(std::make_shared<const TypeNode>(DynType{std::move(binder), std::move(bounds)}));
}

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    return a.node_->value == b.node_->value;
}

bool contains_infer_vars(const Type& type) {
    bool found = false;
    walk(type, [&](const Type& t) { found = found || t.is<InferVar>(); });
    return found;
}

bool contains_infer_vars(const Predicate& predicate) {
    bool found = false;
    walk(predicate, [&](const Type& t) { found = found || t.is<InferVar>(); });
    return found;
}

namespace {
void collect_vars(const Type& t, std::vector<std::uint32_t>& out) {
    if (const auto* v = t.as<InferVar>()) {
        if (std::find(out.begin(), out.end(), v->index) == out.end()) out.push_back(v->index);
    }
}
}  // namespace

std::vector<std::uint32_t> infer_vars_of(const Type& type) {
    std::vector<std::uint32_t> out;
    walk(type, [&](const Type& t) { collect_vars(t, out); });
    return out;
}

std::vector<std::uint32_t> infer_vars_of(const Predicate& predicate) {
    std::vector<std::uint32_t> out;
    walk(predicate, [&](const Type& t) { collect_vars(t, out); });
    return out;
}

std::uint32_t max_infer_var_bound(const Predicate& predicate) {
    std::uint32_t bound = 0;
    for (auto v : infer_vars_of(predicate)) bound = std::max(bound, v + 1);
    return bound;
}

bool contains_projection(const Type& type) {
    bool found = false;
    walk(type, [&](const Type& t) { found = found || t.is<ProjType>(); });
    return found;
}

std::string structural_key(const Type& type) {
    std::string out;
    encode(type, out);
    return out;
}

std::string structural_key(const TraitInstance& instance) {
    std::string out;
    encode(instance, out);
    return out;
}

std::string structural_key(const Predicate& predicate) {
    std::string out;
    encode(predicate, out);
    return out;
}

std::string alpha_key(const Predicate& predicate) {
    std::unordered_map<std::uint32_t, std::uint32_t> renaming;
    auto canonical = rewrite(predicate, [&](const Type& t) -> std::optional<Type> {
        if (const auto* v = t.as<InferVar>()) {
            auto [it, inserted] = renaming.try_emplace(v->index, static_cast<std::uint32_t>(renaming.size()));
            return Type::infer(it->second);
        }
        return std::nullopt;
    });
    return structural_key(canonical);
}

const Type& self_type_of(const Predicate& predicate) {
    return std::visit(Overload{
                          [](const TraitBound& p) -> const Type& { return p.self_type; },
                          [](const Outlives& p) -> const Type& { return p.self_type; },
                          [](const ProjectionEq& p) -> const Type& { return p.projection.self_type; },
                      },
                      predicate);
}

const InferVar* stalled_on(const Predicate& predicate) {
    if (std::holds_alternative<Outlives>(predicate)) return nullptr;
    return self_type_of(predicate).as<InferVar>();
}

Type rewrite(const Type& type, const TypeRewriter& replace) {
    if (auto replaced = replace(type)) return *replaced;
    return std::visit(Overload{
                          [&](const UnitType&) { return type; },
                          [&](const TypeVar&) { return type; },
                          [&](const InferVar&) { return type; },
                          [&](const RefType& t) {
                              return Type::ref(t.region, t.mutable_ref, rewrite(t.inner, replace));
                          },
                          [&](const CtorType& t) {
                              if (t.args.empty()) return type;
                              return Type::ctor(t.head, rewrite_all(t.args, replace));
                          },
                          [&](const TupleType& t) {
                              return Type::tuple(rewrite(t.left, replace), rewrite(t.right, replace));
                          },
                          [&](const FnType& t) {
                              return Type::function(rewrite(t.param, replace), rewrite(t.result, replace),
                                                    t.surface_arity);
                          },
                          [&](const ProjType& t) { return Type::projection(rewrite(t.projection, replace)); },
                          [&](const DynType& t) {
                              std::vector<Predicate> bounds;
                              bounds.reserve(t.bounds.size());
                              for (const auto& b : t.bounds) bounds.push_back(rewrite(b, replace));
                              return Type::existential(t.binder, std::move(bounds));
                          },
                      },
                      type.node().value);
}

TraitInstance rewrite(const TraitInstance& instance, const TypeRewriter& replace) {
    return TraitInstance{instance.trait, rewrite_all(instance.type_args, replace), instance.region_args};
}

Projection rewrite(const Projection& projection, const TypeRewriter& replace) {
    return Projection{rewrite(projection.self_type, replace), projection.assoc,
                      rewrite(projection.instance, replace), rewrite_all(projection.type_args, replace),
                      projection.region_args};
}

Predicate rewrite(const Predicate& predicate, const TypeRewriter& replace) {
    return std::visit(Overload{
                          [&](const TraitBound& p) -> Predicate {
                              return TraitBound{rewrite(p.self_type, replace), rewrite(p.instance, replace)};
                          },
                          [&](const Outlives& p) -> Predicate {
                              return Outlives{rewrite(p.self_type, replace), p.region};
                          },
                          [&](const ProjectionEq& p) -> Predicate {
                              return ProjectionEq{rewrite(p.projection, replace), rewrite(p.rhs, replace)};
                          },
                      },
                      predicate);
}

namespace {
TypeRewriter type_var_rewriter(const std::map<std::string, Type>& mapping) {
    return [&mapping](const Type& t) -> std::optional<Type> {
        if (const auto* v = t.as<TypeVar>()) {
            if (auto it = mapping.find(v->name); it != mapping.end()) return it->second;
        }
        return std::nullopt;
    };
}
}  // namespace

Type substitute_type_vars(const Type& type, const std::map<std::string, Type>& mapping) {
    if (mapping.empty()) return type;
    return rewrite(type, type_var_rewriter(mapping));
}

Predicate substitute_type_vars(const Predicate& predicate, const std::map<std::string, Type>& mapping) {
    if (mapping.empty()) return predicate;
    return rewrite(predicate, type_var_rewriter(mapping));
}

TraitInstance substitute_type_vars(const TraitInstance& instance, const std::map<std::string, Type>& mapping) {
    if (mapping.empty()) return instance;
    return rewrite(instance, type_var_rewriter(mapping));
}

}  // namespace traitscope
