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

#include "traitscope/wellformed.hpp"

#include <set>

#include "traitscope/printer.hpp"

namespace traitscope {

namespace {

class Checker {
  public:
    explicit Checker(const Context& context) : ctx_(context) {}

    std::vector<Diagnostic> run() {
        for (const auto& decl : ctx_.declarations()) {
            span_ = decl.span;
            if (const auto* n = std::get_if<NewtypeDecl>(&decl.item)) {
                auto scope = open(n->params, {});
                check_params(n->params, scope);
                check_type(n->body, scope);
            } else if (const auto* t = std::get_if<TraitDecl>(&decl.item)) {
                auto scope = open(t->params, {"Self"});
                check_params(t->params, scope);
                if (t->callable_arity && *t->callable_arity > t->params.type_binders.size()) {
                    report("callable trait `" + name(t->name) + "` declares arity " +
                           std::to_string(*t->callable_arity) + " but has only " +
                           std::to_string(t->params.type_binders.size()) + " type parameters");
                }
                for (const auto& assoc : t->assoc_decls) {
                    auto inner = open(assoc.params, scope);
                    check_params(assoc.params, inner);
                }
            } else {
                check_impl(std::get<ImplBlock>(decl.item));
            }
        }
        for (const auto& goal : ctx_.goals()) {
            span_ = goal.span;
            check_predicate(goal.predicate, {});
        }
        return std::move(out_);
    }

  private:
    using Scope = std::set<std::string>;

    std::string name(SymbolId id) const {
        return ctx_.has_symbol(id) ? ctx_.symbol(id).path : "#" + std::to_string(id.value);
    }

    void report(std::string message) { out_.push_back(Diagnostic{std::move(message), span_}); }

    Scope open(const Params& params, Scope outer) {
        for (const auto& b : params.type_binders) {
            if (!outer.insert(b).second) report("type parameter `" + b + "` shadows an outer binding");
        }
        std::set<std::string> seen;
        for (const auto& b : params.type_binders) {
            if (!seen.insert(b).second) report("duplicate type parameter `" + b + "`");
        }
        return outer;
    }

    void check_params(const Params& params, const Scope& scope) {
        for (const auto& w : params.where_clauses) check_predicate(w, scope);
    }

    void check_impl(const ImplBlock& impl) {
        auto scope = open(impl.params, {});
        check_params(impl.params, scope);
        check_type(impl.self_type, scope);
        check_instance(impl.instance, scope);
        const auto* trait = ctx_.trait(impl.instance.trait);
        if (!trait) return;
        std::set<std::uint32_t> bound;
        for (const auto& b : impl.assoc_bindings) {
            bound.insert(b.assoc.value);
            bool declared = false;
            for (const auto& a : trait->assoc_decls) {
                if (a.id == b.assoc) {
                    declared = true;
                    if (a.params.type_binders.size() != b.params.type_binders.size()) {
                        report("associated type `" + name(b.assoc) + "` expects " +
                               std::to_string(a.params.type_binders.size()) + " type parameters, binding has " +
                               std::to_string(b.params.type_binders.size()));
                    }
                }
            }
            if (!declared) report("impl binds `" + name(b.assoc) + "`, which `" + name(trait->name) + "` does not declare");
            auto inner = open(b.params, scope);
            check_params(b.params, inner);
            check_type(b.value, inner);
        }
        for (const auto& a : trait->assoc_decls) {
            if (!bound.contains(a.id.value)) {
                report("`" + impl_head(impl, PrintMode::Shortened, ctx_) + "` is missing a binding for `" + name(a.id) +
                       "`");
            }
        }
    }

    void check_instance(const TraitInstance& inst, const Scope& scope) {
        const auto* trait = ctx_.trait(inst.trait);
        if (!trait) {
            report("`" + name(inst.trait) + "` is not a trait");
        } else if (trait->params.type_binders.size() != inst.type_args.size()) {
            report("trait `" + name(inst.trait) + "` expects " + std::to_string(trait->params.type_binders.size()) +
                   " type arguments, found " + std::to_string(inst.type_args.size()));
        }
        for (const auto& a : inst.type_args) check_type(a, scope);
    }

    void check_projection(const Projection& p, const Scope& scope) {
        check_type(p.self_type, scope);
        check_instance(p.instance, scope);
        const auto* owner = ctx_.trait_of_assoc(p.assoc);
        if (!owner || owner->name != p.instance.trait) {
            report("`" + name(p.assoc) + "` is not an associated type of `" + name(p.instance.trait) + "`");
            return;
        }
        for (const auto& a : owner->assoc_decls) {
            if (a.id == p.assoc && a.params.type_binders.size() != p.type_args.size()) {
                report("associated type `" + name(p.assoc) + "` expects " +
                       std::to_string(a.params.type_binders.size()) + " type arguments, found " +
                       std::to_string(p.type_args.size()));
            }
        }
        for (const auto& a : p.type_args) check_type(a, scope);
    }

    void check_predicate(const Predicate& p, const Scope& scope) {
        if (const auto* tb = std::get_if<TraitBound>(&p)) {
            check_type(tb->self_type, scope);
            check_instance(tb->instance, scope);
        } else if (const auto* o = std::get_if<Outlives>(&p)) {
            check_type(o->self_type, scope);
        } else {
            const auto& eq = std::get<ProjectionEq>(p);
            check_projection(eq.projection, scope);
            check_type(eq.rhs, scope);
        }
    }

    void check_type(const Type& t, const Scope& scope) {
        if (const auto* v = t.as<TypeVar>()) {
            if (!scope.contains(v->name)) report("unbound type variable `" + v->name + "`");
        } else if (const auto* r = t.as<RefType>()) {
            check_type(r->inner, scope);
        } else if (const auto* c = t.as<CtorType>()) {
            const auto* n = ctx_.newtype(c->head);
            if (!n) {
                report("`" + name(c->head) + "` is not a type");
            } else if (n->params.type_binders.size() != c->args.size()) {
                report("type `" + name(c->head) + "` expects " + std::to_string(n->params.type_binders.size()) +
                       " type arguments, found " + std::to_string(c->args.size()));
            }
            for (const auto& a : c->args) check_type(a, scope);
        } else if (const auto* tup = t.as<TupleType>()) {
            check_type(tup->left, scope);
            check_type(tup->right, scope);
        } else if (const auto* fn = t.as<FnType>()) {
            check_type(fn->param, scope);
            check_type(fn->result, scope);
        } else if (const auto* p = t.as<ProjType>()) {
            check_projection(p->projection, scope);
        } else if (const auto* d = t.as<DynType>()) {
            Scope inner = scope;
            inner.insert(d->binder);
            for (const auto& b : d->bounds) check_predicate(b, inner);
        }
    }

    const Context& ctx_;
    Span span_;
    std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> check_well_formed(const Context& context) { return Checker(context).run(); }

}  // namespace traitscope
