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

#include "traitscope/unify.hpp"

namespace traitscope {

std::optional<Type> Substitution::lookup(std::uint32_t var) const {
    if (auto it = bindings_.find(var); it != bindings_.end()) return it->second;
    return std::nullopt;
}

void Substitution::bind(std::uint32_t var, const Type& value) {
    Substitution single;
    single.bindings_.emplace(var, value);
    for (auto& [_, bound] : bindings_) bound = apply(bound, single);
    bindings_.insert_or_assign(var, value);
}

namespace {

TypeRewriter applier(const Substitution& subst) {
    return [&subst](const Type& t) -> std::optional<Type> {
        if (const auto* v = t.as<InferVar>()) {
            if (auto bound = subst.lookup(v->index)) return *bound;
            return t;
        }
        return std::nullopt;
    };
}

// Unification state threaded through the recursive walk.
class Unifier {
  public:
    explicit Unifier(Substitution subst) : subst_(std::move(subst)) {}

    std::optional<UnifyFailure> run(const Type& a, const Type& b) {
        Type left = resolve(a);
        Type right = resolve(b);

        const auto* lv = left.as<InferVar>();
        const auto* rv = right.as<InferVar>();
        if (lv && rv && lv->index == rv->index) return std::nullopt;
        if (lv) return bind(lv->index, right);
        if (rv) return bind(rv->index, left);

        if (left.node().value.index() != right.node().value.index()) return UnifyFailure::ConstructorMismatch;

        if (left.is<UnitType>()) return std::nullopt;
        if (const auto* l = left.as<TypeVar>()) {
            return l->name == right.as<TypeVar>()->name ? std::nullopt
                                                        : std::optional(UnifyFailure::ConstructorMismatch);
        }
        if (const auto* l = left.as<RefType>()) {
            const auto* r = right.as<RefType>();
            if (l->mutable_ref != r->mutable_ref) return UnifyFailure::ConstructorMismatch;
            return run(l->inner, r->inner);
        }
        if (const auto* l = left.as<CtorType>()) {
            const auto* r = right.as<CtorType>();
            if (l->head != r->head) return UnifyFailure::ConstructorMismatch;
            return run_all(l->args, r->args);
        }
        if (const auto* l = left.as<TupleType>()) {
            const auto* r = right.as<TupleType>();
            if (auto f = run(l->left, r->left)) return f;
            return run(l->right, r->right);
        }
        if (const auto* l = left.as<FnType>()) {
            const auto* r = right.as<FnType>();
            if (l->surface_arity != r->surface_arity) return UnifyFailure::ArityMismatch;
            if (auto f = run(l->param, r->param)) return f;
            return run(l->result, r->result);
        }
        // Projections and existentials: structural identity only.
        return apply(left, subst_) == apply(right, subst_) ? std::nullopt
                                                           : std::optional(UnifyFailure::ConstructorMismatch);
    }

    std::optional<UnifyFailure> run_all(const std::vector<Type>& a, const std::vector<Type>& b) {
        if (a.size() != b.size()) return UnifyFailure::ArityMismatch;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (auto f = run(a[i], b[i])) return f;
        }
        return std::nullopt;
    }

    Substitution take() && { return std::move(subst_); }

  private:
    Type resolve(const Type& t) const {
        if (const auto* v = t.as<InferVar>()) {
            if (auto bound = subst_.lookup(v->index)) return *bound;
        }
        return t;
    }

    std::optional<UnifyFailure> bind(std::uint32_t var, const Type& value) {
        Type applied = apply(value, subst_);
        if (occurs(var, applied)) return UnifyFailure::OccursCheck;
        subst_.bind(var, applied);
        return std::nullopt;
    }

    Substitution subst_;
};

}  // namespace

Type apply(const Type& type, const Substitution& subst) {
    if (subst.empty()) return type;
    return rewrite(type, applier(subst));
}

TraitInstance apply(const TraitInstance& instance, const Substitution& subst) {
    if (subst.empty()) return instance;
    return rewrite(instance, applier(subst));
}

Projection apply(const Projection& projection, const Substitution& subst) {
    if (subst.empty()) return projection;
    return rewrite(projection, applier(subst));
}

Predicate apply(const Predicate& predicate, const Substitution& subst) {
    if (subst.empty()) return predicate;
    return rewrite(predicate, applier(subst));
}

const char* to_string(UnifyFailure failure) {
    switch (failure) {
        case UnifyFailure::ConstructorMismatch: return "constructor mismatch";
        case UnifyFailure::ArityMismatch: return "arity mismatch";
        case UnifyFailure::OccursCheck: return "occurs check";
    }
    return "unknown";
}

bool occurs(std::uint32_t var, const Type& type) {
    for (auto v : infer_vars_of(type)) {
        if (v == var) return true;
    }
    return false;
}

UnifyResult unify(const Type& left, const Type& right, Substitution subst) {
    Unifier unifier(std::move(subst));
    if (auto failure = unifier.run(left, right)) return *failure;
    return std::move(unifier).take();
}

UnifyResult unify(const TraitInstance& left, const TraitInstance& right, Substitution subst) {
    if (left.trait != right.trait) return UnifyFailure::ConstructorMismatch;
    Unifier unifier(std::move(subst));
    if (auto failure = unifier.run_all(left.type_args, right.type_args)) return *failure;
    return std::move(unifier).take();
}

UnifyResult unify(const Predicate& left, const Predicate& right, Substitution subst) {
    if (left.index() != right.index()) return UnifyFailure::ConstructorMismatch;
    Unifier unifier(std::move(subst));
    std::optional<UnifyFailure> failure;
    if (const auto* l = std::get_if<TraitBound>(&left)) {
        const auto& r = std::get<TraitBound>(right);
        if (l->instance.trait != r.instance.trait) return UnifyFailure::ConstructorMismatch;
        failure = unifier.run(l->self_type, r.self_type);
        if (!failure) failure = unifier.run_all(l->instance.type_args, r.instance.type_args);
    } else if (const auto* l = std::get_if<Outlives>(&left)) {
        failure = unifier.run(l->self_type, std::get<Outlives>(right).self_type);
    } else {
        const auto& a = std::get<ProjectionEq>(left);
        const auto& b = std::get<ProjectionEq>(right);
        if (a.projection.assoc != b.projection.assoc || a.projection.instance.trait != b.projection.instance.trait) {
            return UnifyFailure::ConstructorMismatch;
        }
        failure = unifier.run(a.projection.self_type, b.projection.self_type);
        if (!failure) failure = unifier.run_all(a.projection.instance.type_args, b.projection.instance.type_args);
        if (!failure) failure = unifier.run_all(a.projection.type_args, b.projection.type_args);
        if (!failure) failure = unifier.run(a.rhs, b.rhs);
    }
    if (failure) return *failure;
    return std::move(unifier).take();
}

}  // namespace traitscope
