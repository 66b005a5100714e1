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

#include "traitscope/solver.hpp"

#include <algorithm>

namespace traitscope {

namespace {

struct Outcome {
    EvalResult result;
    Substitution bindings;  // restricted to the goal predicate's variables
};

// Instantiated impl head that unified with a bound.
struct Match {
    CandidateMatch match;
    std::vector<Predicate> where_clauses;
};

std::optional<Match> try_impl(const ImplBlock& impl, const TraitBound& bound, std::uint32_t& next_var) {
    std::uint32_t saved = next_var;
    std::map<std::string, Type> inst;
    for (const auto& name : impl.params.type_binders) inst.emplace(name, Type::infer(next_var++));
    Type self = substitute_type_vars(impl.self_type, inst);
    TraitInstance head = substitute_type_vars(impl.instance, inst);
    auto u = unify(bound.self_type, self);
    if (succeeded(u)) u = unify(bound.instance, head, std::get<Substitution>(std::move(u)));
    if (!succeeded(u)) {
        next_var = saved;
        return std::nullopt;
    }
    Match m;
    m.match.impl = impl.id;
    m.match.unifier = std::get<Substitution>(std::move(u));
    m.match.binder_instantiation = std::move(inst);
    for (const auto& w : impl.params.where_clauses) {
        m.where_clauses.push_back(traitscope::apply(substitute_type_vars(w, m.match.binder_instantiation), m.match.unifier));
    }
    return m;
}

Substitution restrict_to(const Predicate& p, const Substitution& u) {
    Substitution out;
    for (auto v : infer_vars_of(p)) {
        Type t = traitscope::apply(Type::infer(v), u);
        if (!(t == Type::infer(v))) out.bind(v, t);
    }
    return out;
}

void merge(Substitution& u, const Substitution& bindings) {
    for (const auto& [v, t] : bindings.bindings()) {
        auto r = unify(Type::infer(v), t, u);
        if (succeeded(r)) u = std::get<Substitution>(std::move(r));
    }
}

// Inference variables of `p` replaced by rigid placeholders.
Predicate freeze(const Predicate& p) {
    return rewrite(p, [](const Type& t) -> std::optional<Type> {
        if (const auto* v = t.as<InferVar>()) return Type::var("?" + std::to_string(v->index));
        return std::nullopt;
    });
}

bool instance_of(const Predicate& specific, const Predicate& general) {
    return succeeded(unify(general, freeze(specific)));
}

// Drops exact repeats, and any predicate that a sibling strictly refines.
std::vector<Predicate> dedup(std::vector<Predicate> preds) {
    std::vector<bool> keep(preds.size(), true);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        for (std::size_t j = 0; j < i && keep[i]; ++j) {
            if (keep[j] && preds[j] == preds[i]) keep[i] = false;
        }
    }
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (!keep[i] || !contains_infer_vars(preds[i])) continue;
        for (std::size_t j = 0; j < preds.size(); ++j) {
            if (i == j || !keep[j]) continue;
            if (instance_of(preds[j], preds[i]) && !instance_of(preds[i], preds[j])) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<Predicate> out;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (keep[i]) out.push_back(std::move(preds[i]));
    }
    return out;
}

bool has_nested_projection(const Predicate& p) {
    if (const auto* tb = std::get_if<TraitBound>(&p)) {
        if (contains_projection(tb->self_type)) return true;
        return std::any_of(tb->instance.type_args.begin(), tb->instance.type_args.end(), contains_projection);
    }
    if (const auto* eq = std::get_if<ProjectionEq>(&p)) {
        const auto& pr = eq->projection;
        if (contains_projection(pr.self_type) || contains_projection(eq->rhs)) return true;
        auto nested = [](const std::vector<Type>& ts) { return std::any_of(ts.begin(), ts.end(), contains_projection); };
        return nested(pr.instance.type_args) || nested(pr.type_args);
    }
    return false;
}

EvalResult combine_and(const std::vector<EvalResult>& results) {
    for (const auto& r : results) {
        if (r.verdict == Verdict::No) return EvalResult::no();
    }
    for (const auto& r : results) {
        if (r.verdict == Verdict::Maybe) return EvalResult::maybe(r.reason);
    }
    return EvalResult::yes();
}

class Solver {
  public:
    Solver(const Context& context, const SolveConfig& config, std::uint32_t next_var)
        : ctx_(context), cfg_(config), next_var_(next_var) {}

    InferenceTree tree;

    std::uint32_t fresh() { return next_var_++; }

    Outcome goal(const Predicate& p, std::optional<NodeId> parent, GoalRole role = GoalRole::Normal) {
        NodeId id = tree.add_goal(p, parent, role);
        auto finish = [&](Outcome out) {
            tree.goal(id).result = out.result;
            return out;
        };
        if (tree.goal(id).depth > cfg_.max_depth) {
            return finish({EvalResult::maybe(reason::Overflow{{id}}), {}});
        }
        std::string key = alpha_key(p);
        for (std::size_t i = 0; i < path_.size(); ++i) {
            if (path_[i].first != key) continue;
            std::vector<NodeId> cycle;
            for (std::size_t j = i; j < path_.size(); ++j) cycle.push_back(path_[j].second);
            cycle.push_back(id);
            return finish({EvalResult::maybe(reason::Overflow{std::move(cycle)}), {}});
        }
        if (const auto* v = stalled_on(p)) {
            return finish({EvalResult::maybe(reason::Ambiguous{{v->index}}), {}});
        }
        path_.emplace_back(std::move(key), id);
        Outcome out = dispatch(id, p);
        path_.pop_back();
        return finish(std::move(out));
    }

  private:
    struct CandidateOutcome {
        EvalResult result;
        Substitution unifier;
    };

    Outcome dispatch(NodeId id, const Predicate& p) {
        std::vector<CandidateOutcome> outcomes;
        if (std::holds_alternative<Outlives>(p)) {
            NodeId c = tree.add_candidate(id, BuiltinKind::OutlivesAssumed);
            tree.candidate(c).result = EvalResult::yes();
            outcomes.push_back({EvalResult::yes(), {}});
        } else if (const auto* eq = std::get_if<ProjectionEq>(&p)) {
            const auto* rhs = eq->rhs.as<ProjType>();
            if (rhs && rhs->projection == eq->projection) {
                NodeId c = tree.add_candidate(id, BuiltinKind::ProjectionReflexive);
                tree.candidate(c).result = EvalResult::yes();
                outcomes.push_back({EvalResult::yes(), {}});
            } else if (has_nested_projection(p)) {
                outcomes.push_back(normalize_first(id, p));
            } else {
                outcomes.push_back(normalizes_to(id, *eq));
            }
        } else {
            const auto& tb = std::get<TraitBound>(p);
            if (has_nested_projection(p)) {
                outcomes.push_back(normalize_first(id, p));
            } else {
                trait_candidates(id, tb, outcomes);
            }
        }
        return combine_or(p, outcomes);
    }

    Outcome combine_or(const Predicate& p, const std::vector<CandidateOutcome>& outcomes) {
        if (outcomes.empty()) return {EvalResult::no(reason::NoCandidates{}), {}};
        std::vector<std::size_t> yes;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (outcomes[i].result.is_yes()) yes.push_back(i);
        }
        if (!yes.empty()) {
            if (yes.size() >= 2 && contains_infer_vars(p)) {
                return {EvalResult::maybe(reason::Ambiguous{infer_vars_of(p)}), {}};
            }
            return {EvalResult::yes(), restrict_to(p, outcomes[yes.front()].unifier)};
        }
        for (const auto& o : outcomes) {
            if (o.result.verdict == Verdict::Maybe) return {EvalResult::maybe(o.result.reason), {}};
        }
        return {EvalResult::no(), {}};
    }

    void trait_candidates(NodeId id, const TraitBound& tb, std::vector<CandidateOutcome>& outcomes) {
        if (auto u = callable_match(tb)) {
            NodeId c = tree.add_candidate(id, BuiltinKind::FnCallable, *u);
            tree.candidate(c).result = EvalResult::yes();
            outcomes.push_back({EvalResult::yes(), std::move(*u)});
        }
        if (auto u = existential_match(tb)) {
            NodeId c = tree.add_candidate(id, BuiltinKind::ExistentialBound, *u);
            tree.candidate(c).result = EvalResult::yes();
            outcomes.push_back({EvalResult::yes(), std::move(*u)});
            return;
        }
        for (const auto* impl : ctx_.impls_of(tb.instance.trait)) {
            auto m = try_impl(*impl, tb, next_var_);
            if (!m) continue;
            NodeId c = tree.add_candidate(id, m->match.impl, m->match.unifier);
            tree.candidate(c).binder_instantiation = m->match.binder_instantiation;
            auto preds = std::move(m->where_clauses);
            if (cfg_.dedup_snapshots) preds = dedup(std::move(preds));
            outcomes.push_back(run_subgoals(c, std::move(preds), std::move(m->match.unifier)));
        }
    }

    // Function types and function items satisfy `#[callable(arity = N)]`
    // traits when parameter and output types line up.
    std::optional<Substitution> callable_match(const TraitBound& tb) {
        const auto* trait = ctx_.trait(tb.instance.trait);
        if (!trait || !trait->callable_arity) return std::nullopt;
        std::uint32_t n = *trait->callable_arity;
        Type fn = tb.self_type;
        if (const auto* c = fn.as<CtorType>()) {
            const auto* nt = ctx_.newtype(c->head);
            if (!nt || !nt->body.is<FnType>()) return std::nullopt;
            std::map<std::string, Type> args;
            for (std::size_t i = 0; i < nt->params.type_binders.size() && i < c->args.size(); ++i) {
                args.emplace(nt->params.type_binders[i], c->args[i]);
            }
            fn = substitute_type_vars(nt->body, args);
        }
        auto shape = function_shape(fn);
        if (!shape || shape->params.size() != n || tb.instance.type_args.size() < n) return std::nullopt;
        Substitution u;
        for (std::uint32_t i = 0; i < n; ++i) {
            auto r = unify(tb.instance.type_args[i], shape->params[i], u);
            if (!succeeded(r)) return std::nullopt;
            u = std::get<Substitution>(std::move(r));
        }
        if (tb.instance.type_args.size() > n) {
            auto r = unify(tb.instance.type_args[n], shape->output, u);
            if (!succeeded(r)) return std::nullopt;
            u = std::get<Substitution>(std::move(r));
        }
        return u;
    }

    std::optional<Substitution> existential_match(const TraitBound& tb) {
        const auto* d = tb.self_type.as<DynType>();
        if (!d) return std::nullopt;
        std::map<std::string, Type> binder{{d->binder, tb.self_type}};
        for (const auto& b : d->bounds) {
            const auto* bound = std::get_if<TraitBound>(&b);
            if (!bound) continue;
            const auto* self = bound->self_type.as<TypeVar>();
            if (!self || self->name != d->binder || bound->instance.trait != tb.instance.trait) continue;
            auto r = unify(tb.instance, substitute_type_vars(bound->instance, binder));
            if (succeeded(r)) return std::get<Substitution>(std::move(r));
        }
        return std::nullopt;
    }

    // Evaluates pending where clauses, preferring ones whose self type is
    // already known; bindings from successful subgoals flow to the rest.
    CandidateOutcome run_subgoals(NodeId cand, std::vector<Predicate> pending, Substitution u) {
        std::vector<EvalResult> results;
        while (!pending.empty()) {
            std::size_t pick = 0;
            for (std::size_t i = 0; i < pending.size(); ++i) {
                if (!stalled_on(traitscope::apply(pending[i], u))) {
                    pick = i;
                    break;
                }
            }
            Predicate next = traitscope::apply(pending[pick], u);
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
            Outcome o = goal(next, cand);
            if (o.result.is_yes()) merge(u, o.bindings);
            results.push_back(std::move(o.result));
        }
        auto result = combine_and(results);
        auto& node = tree.candidate(cand);
        node.result = result;
        node.unifier = u;
        return {std::move(result), std::move(u)};
    }

    CandidateOutcome normalize_first(NodeId id, const Predicate& p) {
        NodeId c = tree.add_candidate(id, BuiltinKind::NormalizeFirst);
        std::vector<Predicate> pending;
        TypeRewriter lift = [&](const Type& t) -> std::optional<Type> {
            if (const auto* pt = t.as<ProjType>()) {
                Type var = Type::infer(fresh());
                pending.emplace_back(ProjectionEq{pt->projection, var});
                return var;
            }
            return std::nullopt;
        };
        Predicate rewritten;
        if (const auto* eq = std::get_if<ProjectionEq>(&p)) {
            ProjectionEq out = *eq;
            out.projection.self_type = rewrite(eq->projection.self_type, lift);
            for (auto& a : out.projection.instance.type_args) a = rewrite(a, lift);
            for (auto& a : out.projection.type_args) a = rewrite(a, lift);
            out.rhs = rewrite(eq->rhs, lift);
            rewritten = std::move(out);
        } else {
            rewritten = rewrite(p, lift);
        }
        pending.push_back(std::move(rewritten));
        return run_subgoals(c, std::move(pending), {});
    }

    CandidateOutcome normalizes_to(NodeId id, const ProjectionEq& eq) {
        NodeId c = tree.add_candidate(id, BuiltinKind::NormalizesTo);
        Substitution u;
        std::vector<EvalResult> results;
        const auto& proj = eq.projection;
        NodeId evidence = static_cast<NodeId>(tree.size());
        Outcome e = goal(TraitBound{proj.self_type, proj.instance}, c, GoalRole::Evidence);
        results.push_back(e.result);
        if (e.result.is_yes()) {
            merge(u, e.bindings);
            std::optional<Type> value = assoc_value(evidence, proj);
            if (value) {
                value = traitscope::apply(*value, u);
                std::vector<Predicate> nested;
                value = rewrite(*value, [&](const Type& t) -> std::optional<Type> {
                    if (const auto* pt = t.as<ProjType>()) {
                        Type var = Type::infer(fresh());
                        nested.emplace_back(ProjectionEq{pt->projection, var});
                        return var;
                    }
                    return std::nullopt;
                });
                for (auto& n : nested) {
                    Outcome o = goal(traitscope::apply(n, u), c);
                    if (o.result.is_yes()) merge(u, o.bindings);
                    results.push_back(std::move(o.result));
                }
                value = traitscope::apply(*value, u);
            }
            Predicate here = traitscope::apply(Predicate{eq}, u);
            NodeId leaf = tree.add_goal(here, c, GoalRole::Unify);
            EvalResult r;
            if (!value) {
                r = EvalResult::maybe(reason::Ambiguous{infer_vars_of(here)});
            } else {
                Type expected = traitscope::apply(eq.rhs, u);
                auto unified = unify(expected, *value, u);
                if (succeeded(unified)) {
                    u = std::get<Substitution>(std::move(unified));
                    r = EvalResult::yes();
                } else {
                    r = EvalResult::no(reason::Mismatch{expected, *value});
                }
            }
            tree.goal(leaf).result = r;
            results.push_back(r);
        }
        auto result = combine_and(results);
        auto& node = tree.candidate(c);
        node.result = result;
        node.unifier = u;
        return {std::move(result), std::move(u)};
    }

    // Associated type from the single successful impl behind `evidence`.
    std::optional<Type> assoc_value(NodeId evidence, const Projection& proj) {
        std::vector<NodeId> yes;
        for (auto cid : tree.goal(evidence).candidates) {
            if (tree.candidate(cid).result.is_yes()) yes.push_back(cid);
        }
        if (yes.size() != 1) return std::nullopt;
        const auto& cand = tree.candidate(yes.front());
        const auto* impl_id = std::get_if<ImplId>(&cand.source);
        if (!impl_id) return std::nullopt;
        const auto* impl = ctx_.impl(*impl_id);
        for (const auto& b : impl->assoc_bindings) {
            if (b.assoc != proj.assoc) continue;
            auto mapping = cand.binder_instantiation;
            for (std::size_t i = 0; i < b.params.type_binders.size() && i < proj.type_args.size(); ++i) {
                mapping.insert_or_assign(b.params.type_binders[i], proj.type_args[i]);
            }
            return traitscope::apply(substitute_type_vars(b.value, mapping), cand.unifier);
        }
        return std::nullopt;
    }

    const Context& ctx_;
    SolveConfig cfg_;
    std::uint32_t next_var_;
    std::vector<std::pair<std::string, NodeId>> path_;
};

}  // namespace

InferenceTree solve(const Context& context, const Predicate& predicate, const SolveConfig& config) {
    Solver s(context, config, max_infer_var_bound(predicate));
    (void)s.goal(predicate, std::nullopt);
    return std::move(s.tree);
}

InferenceTree evaluate_predicate_kind(const Context& context, const Predicate& predicate, const SolveConfig& config) {
    return solve(context, predicate, config);
}

std::vector<CandidateMatch> assemble_candidates(const Context& context, const TraitBound& bound) {
    std::vector<CandidateMatch> out;
    std::uint32_t next_var = max_infer_var_bound(Predicate{bound});
    for (const auto* impl : context.impls_of(bound.instance.trait)) {
        if (auto m = try_impl(*impl, bound, next_var)) out.push_back(std::move(m->match));
    }
    return out;
}

Normalization normalize_projection(const Context& context, const Projection& projection, const SolveConfig& config) {
    Predicate probe = ProjectionEq{projection, Type::unit()};
    Solver s(context, config, max_infer_var_bound(probe));
    std::uint32_t k = s.fresh();
    Predicate goal = ProjectionEq{projection, Type::infer(k)};
    Outcome o = s.goal(goal, std::nullopt);
    Normalization out;
    if (o.result.is_yes()) out.value = traitscope::apply(Type::infer(k), o.bindings);
    out.tree = std::move(s.tree);
    // First evidence goal in preorder.
    for (NodeId id = 0; id < out.tree.size(); ++id) {
        if (out.tree.is_goal(id) && out.tree.goal(id).role == GoalRole::Evidence) {
            out.evidence = id;
            break;
        }
    }
    return out;
}

}  // namespace traitscope
