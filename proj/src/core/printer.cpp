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

#include "traitscope/printer.hpp"

#include <sstream>

namespace traitscope {

namespace {

class Printer {
  public:
    Printer(const Context& context, PrintMode mode, bool absolute = false)
        : context_(context), mode_(mode), absolute_(absolute) {}

    std::string symbol(SymbolId id) const {
        if (!context_.has_symbol(id)) return "<#" + std::to_string(id.value) + ">";
        const auto& info = context_.symbol(id);
        if (mode_ == PrintMode::Shortened) return std::string(info.name());
        return absolute_ ? "::" + info.path : info.path;
    }

    std::string region(const RegionVar& r) const { return "'" + r.name; }

    std::string args(const std::vector<Type>& types, const std::vector<RegionVar>& regions) const {
        if (types.empty() && regions.empty()) return "";
        if (mode_ == PrintMode::Shortened) return "<..>";
        std::string out = "<";
        bool first = true;
        for (const auto& r : regions) {
            if (!first) out += ", ";
            out += region(r);
            first = false;
        }
        for (const auto& t : types) {
            if (!first) out += ", ";
            out += type(t);
            first = false;
        }
        return out + ">";
    }

    std::string instance(const TraitInstance& inst) const {
        return symbol(inst.trait) + args(inst.type_args, inst.region_args);
    }

    std::string projection(const Projection& p) const {
        std::string assoc = context_.has_symbol(p.assoc) ? std::string(context_.symbol(p.assoc).name())
                                                         : "<#" + std::to_string(p.assoc.value) + ">";
        return "<" + type(p.self_type) + " as " + instance(p.instance) + ">::" + assoc +
               args(p.type_args, p.region_args);
    }

    std::string type(const Type& t) const {
        if (t.is<UnitType>()) return "unit";
        if (const auto* v = t.as<TypeVar>()) return v->name;
        if (const auto* v = t.as<InferVar>()) return "?" + std::to_string(v->index);
        if (const auto* r = t.as<RefType>()) {
            return "&" + region(r->region) + (r->mutable_ref ? " mut " : " ") + type(r->inner);
        }
        if (const auto* c = t.as<CtorType>()) return symbol(c->head) + args(c->args, {});
        if (const auto* tup = t.as<TupleType>()) return "(" + type(tup->left) + ", " + type(tup->right) + ")";
        if (t.is<FnType>()) {
            auto shape = function_shape(t);
            if (!shape) {
                const auto* fn = t.as<FnType>();
                return "fn(" + type(fn->param) + ") -> " + type(fn->result);
            }
            std::string out = "fn(";
            for (std::size_t i = 0; i < shape->params.size(); ++i) {
                if (i) out += ", ";
                out += type(shape->params[i]);
            }
            return out + ") -> " + type(shape->output);
        }
        if (const auto* p = t.as<ProjType>()) return projection(p->projection);
        const auto& d = *t.as<DynType>();
        std::string out = "dyn ";
        for (std::size_t i = 0; i < d.bounds.size(); ++i) {
            if (i) out += " + ";
            const auto& b = d.bounds[i];
            const auto* self = self_type_of(b).as<TypeVar>();
            bool about_binder = self && self->name == d.binder;
            if (const auto* tb = std::get_if<TraitBound>(&b); tb && about_binder) {
                out += instance(tb->instance);
            } else if (const auto* o = std::get_if<Outlives>(&b); o && about_binder) {
                out += region(o->region);
            } else {
                out += "(" + predicate(b) + ")";
            }
        }
        return out;
    }

    std::string predicate(const Predicate& p) const {
        if (const auto* tb = std::get_if<TraitBound>(&p)) return type(tb->self_type) + ": " + instance(tb->instance);
        if (const auto* o = std::get_if<Outlives>(&p)) return type(o->self_type) + ": " + region(o->region);
        const auto& eq = std::get<ProjectionEq>(p);
        return projection(eq.projection) + " == " + type(eq.rhs);
    }

    std::string params_list(const Params& params) const {
        if (params.region_binders.empty() && params.type_binders.empty()) return "";
        std::string out = "<";
        bool first = true;
        for (const auto& r : params.region_binders) {
            if (!first) out += ", ";
            out += region(r);
            first = false;
        }
        for (const auto& name : params.type_binders) {
            if (!first) out += ", ";
            out += name;
            first = false;
        }
        return out + ">";
    }

    std::string where_clause(const Params& params) const {
        if (params.where_clauses.empty()) return "";
        std::string out = " where ";
        for (std::size_t i = 0; i < params.where_clauses.size(); ++i) {
            if (i) out += ", ";
            out += predicate(params.where_clauses[i]);
        }
        return out;
    }

  private:
    const Context& context_;
    PrintMode mode_;
    bool absolute_;
};

std::string module_of(const std::string& path) {
    auto pos = path.rfind("::");
    return pos == std::string::npos ? "" : path.substr(0, pos);
}

}  // namespace

std::string pretty_print(const Type& type, PrintMode mode, const Context& context) {
    return Printer(context, mode).type(type);
}

std::string pretty_print(const Predicate& predicate, PrintMode mode, const Context& context) {
    return Printer(context, mode).predicate(predicate);
}

std::string pretty_print(const TraitInstance& instance, PrintMode mode, const Context& context) {
    return Printer(context, mode).instance(instance);
}

std::string impl_head(const ImplBlock& impl, PrintMode mode, const Context& context) {
    Printer p(context, mode);
    std::string binders = mode == PrintMode::Shortened && !(impl.params.type_binders.empty() &&
                                                            impl.params.region_binders.empty())
                              ? "<..>"
                              : p.params_list(impl.params);
    return "impl" + binders + " " + p.instance(impl.instance) + " for " + p.type(impl.self_type);
}

std::string render_context(const Context& context) {
    Printer p(context, PrintMode::FullyQualified, /*absolute=*/true);
    std::ostringstream out;
    for (const auto& decl : context.declarations()) {
        std::string body;
        std::string module;
        if (const auto* n = std::get_if<NewtypeDecl>(&decl.item)) {
            const auto& info = context.symbol(n->head);
            module = module_of(info.path);
            body = "newtype " + std::string(info.name()) + p.params_list(n->params) + p.where_clause(n->params) +
                   " = " + p.type(n->body) + ";";
        } else if (const auto* t = std::get_if<TraitDecl>(&decl.item)) {
            const auto& info = context.symbol(t->name);
            module = module_of(info.path);
            if (t->callable_arity) body = "#[callable(arity = " + std::to_string(*t->callable_arity) + ")] ";
            body += "trait " + std::string(info.name()) + p.params_list(t->params) + p.where_clause(t->params) + " {";
            for (const auto& assoc : t->assoc_decls) {
                body += " type " + std::string(context.symbol(assoc.id).name()) + p.params_list(assoc.params) +
                        p.where_clause(assoc.params) + ";";
            }
            body += " }";
        } else {
            const auto& impl = std::get<ImplBlock>(decl.item);
            body = "impl" + p.params_list(impl.params) + " " + p.instance(impl.instance) + " for " +
                   p.type(impl.self_type) + p.where_clause(impl.params) + " {";
            for (const auto& binding : impl.assoc_bindings) {
                body += " type " + std::string(context.symbol(binding.assoc).name()) +
                        p.params_list(binding.params) + p.where_clause(binding.params) + " = " +
                        p.type(binding.value) + ";";
            }
            body += " }";
        }
        if (decl.provenance == Provenance::External) body = "extern " + body;
        if (module.empty()) {
            out << body << "\n";
        } else {
            out << "mod " << module << " { " << body << " }\n";
        }
    }
    for (const auto& goal : context.goals()) {
        out << "goal " << goal.label << ": " << p.predicate(goal.predicate) << ";\n";
    }
    return out.str();
}

}  // namespace traitscope
