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

#include "traitscope/document.hpp"

#include <set>

#include "traitscope/printer.hpp"
#include "traitscope/ranking.hpp"
#include "traitscope/views.hpp"

namespace traitscope {

using nlohmann::json;

const DocGoal* TreeDocument::find_goal(const std::string& label) const {
    for (const auto& g : goals) {
        if (g.label == label) return &g;
    }
    return nullptr;
}

const DocNode* TreeDocument::find_node(std::uint32_t id) const {
    for (const auto& g : goals) {
        if (auto it = g.nodes.find(id); it != g.nodes.end()) return &it->second;
    }
    return nullptr;
}

std::vector<SolvedGoal> solve_all(const Context& context, const SolveConfig& config, const std::string& only_label) {
    std::vector<SolvedGoal> out;
    for (const auto& g : context.goals()) {
        if (!only_label.empty() && g.label != only_label) continue;
        out.push_back({g.label, solve(context, g.predicate, config)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structured terms

namespace {

json regions(const std::vector<RegionVar>& rs) {
    json out = json::array();
    for (const auto& r : rs) out.push_back("'" + r.name);
    return out;
}

json types(const std::vector<Type>& ts) {
    json out = json::array();
    for (const auto& t : ts) out.push_back(structured(t));
    return out;
}

json projection(const Projection& p) {
    return {{"self", structured(p.self_type)},
            {"assoc", p.assoc.value},
            {"trait", p.instance.trait.value},
            {"trait_args", types(p.instance.type_args)},
            {"trait_regions", regions(p.instance.region_args)},
            {"args", types(p.type_args)},
            {"regions", regions(p.region_args)}};
}

}  // namespace

json structured(const Type& t) {
    if (t.is<UnitType>()) return {{"kind", "unit"}};
    if (const auto* v = t.as<TypeVar>()) return {{"kind", "var"}, {"name", v->name}};
    if (const auto* v = t.as<InferVar>()) return {{"kind", "infer"}, {"index", v->index}};
    if (const auto* r = t.as<RefType>()) {
        return {{"kind", "ref"}, {"region", "'" + r->region.name}, {"mutable", r->mutable_ref}, {"inner", structured(r->inner)}};
    }
    if (const auto* c = t.as<CtorType>()) return {{"kind", "ctor"}, {"head", c->head.value}, {"args", types(c->args)}};
    if (const auto* tup = t.as<TupleType>()) {
        return {{"kind", "tuple"}, {"left", structured(tup->left)}, {"right", structured(tup->right)}};
    }
    if (const auto* fn = t.as<FnType>()) {
        return {{"kind", "fn"}, {"param", structured(fn->param)}, {"result", structured(fn->result)}, {"arity", fn->surface_arity}};
    }
    if (const auto* p = t.as<ProjType>()) return {{"kind", "projection"}, {"projection", projection(p->projection)}};
    const auto& d = *t.as<DynType>();
    json bounds = json::array();
    for (const auto& b : d.bounds) bounds.push_back(structured(b));
    return {{"kind", "dyn"}, {"binder", d.binder}, {"bounds", bounds}};
}

json structured(const Predicate& p) {
    if (const auto* tb = std::get_if<TraitBound>(&p)) {
        return {{"kind", "trait_bound"},
                {"self", structured(tb->self_type)},
                {"trait", tb->instance.trait.value},
                {"args", types(tb->instance.type_args)},
                {"regions", regions(tb->instance.region_args)}};
    }
    if (const auto* o = std::get_if<Outlives>(&p)) {
        return {{"kind", "outlives"}, {"self", structured(o->self_type)}, {"region", "'" + o->region.name}};
    }
    const auto& eq = std::get<ProjectionEq>(p);
    return {{"kind", "projection_eq"}, {"projection", projection(eq.projection)}, {"rhs", structured(eq.rhs)}};
}

// ---------------------------------------------------------------------------
// Building

namespace {

DocSpan doc_span(const Span& s) { return {s.file, s.line_start, s.line_end}; }

const char* provenance_name(Provenance p) { return p == Provenance::Local ? "local" : "external"; }

const char* role_name(GoalRole r) {
    switch (r) {
        case GoalRole::Normal: return "normal";
        case GoalRole::Evidence: return "evidence";
        case GoalRole::Unify: return "unify";
    }
    return "normal";
}

std::optional<DocReason> doc_reason(const Reason& r, std::uint32_t offset, const Context& ctx) {
    if (std::holds_alternative<reason::None>(r)) return std::nullopt;
    DocReason out;
    if (const auto* a = std::get_if<reason::Ambiguous>(&r)) {
        out.kind = "ambiguous";
        out.vars = a->vars;
    } else if (const auto* o = std::get_if<reason::Overflow>(&r)) {
        out.kind = "overflow";
        for (auto id : o->cycle_path) out.cycle_path.push_back(id + offset);
    } else if (std::holds_alternative<reason::NoCandidates>(r)) {
        out.kind = "no_candidates";
    } else {
        const auto& m = std::get<reason::Mismatch>(r);
        out.kind = "mismatch";
        out.expected = pretty_print(m.expected, PrintMode::FullyQualified, ctx);
        out.found = pretty_print(m.found, PrintMode::FullyQualified, ctx);
    }
    return out;
}

}  // namespace

TreeDocument build_document(const Context& context, const std::vector<SolvedGoal>& goals) {
    TreeDocument doc;
    for (std::size_t i = 0; i < context.symbols().size(); ++i) {
        const auto& s = context.symbols()[i];
        doc.symbols[static_cast<std::uint32_t>(i)] = {s.path, provenance_name(s.provenance), doc_span(s.span)};
    }
    std::uint32_t offset = 0;
    for (const auto& solved : goals) {
        const auto& tree = solved.tree;
        DocGoal g;
        g.label = solved.label;
        g.root = offset + tree.root();
        g.result = to_string(tree.result(tree.root()).verdict);
        auto leaves = failed_leaves(tree);
        std::set<NodeId> leaf_set(leaves.begin(), leaves.end());
        for (NodeId id = 0; id < tree.size(); ++id) {
            DocNode n;
            n.result = to_string(tree.result(id).verdict);
            n.reason = doc_reason(tree.result(id).reason, offset, context);
            for (auto c : tree.children(id)) n.children.push_back(c + offset);
            n.depth = tree.depth(id);
            if (auto p = tree.parent(id)) n.parent = *p + offset;
            if (tree.is_goal(id)) {
                const auto& gn = tree.goal(id);
                n.kind = "goal";
                n.predicate = DocPredicate{pretty_print(gn.predicate, PrintMode::Shortened, context),
                                           pretty_print(gn.predicate, PrintMode::FullyQualified, context),
                                           structured(gn.predicate)};
                n.role = role_name(gn.role);
                if (leaf_set.contains(id)) {
                    auto k = classify_goal(gn, context);
                    n.goal_kind = DocGoalKind{to_string(k), weight(k)};
                }
            } else {
                const auto& cn = tree.candidate(id);
                n.kind = "candidate";
                if (const auto* impl_id = std::get_if<ImplId>(&cn.source)) {
                    const auto* impl = context.impl(*impl_id);
                    n.impl = DocImpl{std::to_string(impl_id->value), impl_head(*impl, PrintMode::Shortened, context),
                                     impl_head(*impl, PrintMode::FullyQualified, context),
                                     doc_span(context.impl_declaration(*impl_id)->span)};
                } else {
                    n.builtin = to_string(std::get<BuiltinKind>(cn.source));
                }
            }
            g.nodes.emplace(id + offset, std::move(n));
        }

        auto shift = [&](const std::vector<NodeId>& ids) {
            std::vector<std::uint32_t> out;
            for (auto id : ids) out.push_back(id + offset);
            return out;
        };
        auto& ranks = doc.rankings[g.label];
        Ranking inertia;
        for (auto h : {Heuristic::Inertia, Heuristic::Depth, Heuristic::InferVarCount}) {
            auto r = rank(tree, context, h);
            ranks[to_string(h)] = shift(r.order());
            if (h == Heuristic::Inertia) inertia = r;
        }
        DocViews views;
        auto bu = bottom_up(tree, inertia);
        for (std::size_t i = 0; i < bu.entries.size(); ++i) {
            views.bottom_up.push_back(
                {bu.entries[i].leaf + offset, inertia.entries[i].key, shift(bu.entries[i].ancestor_chain)});
        }
        auto td = top_down(tree, VisibleFilter::FailuresOnly);
        views.top_down_root = td.root + offset;
        views.top_down_failures = shift(td.visible);
        doc.views[g.label] = std::move(views);

        offset += static_cast<std::uint32_t>(tree.size());
        doc.goals.push_back(std::move(g));
    }
    return doc;
}

// ---------------------------------------------------------------------------
// JSON mapping

namespace {

json span_json(const DocSpan& s) { return {{"file", s.file}, {"line_start", s.line_start}, {"line_end", s.line_end}}; }

json node_json(const DocNode& n) {
    json out = {{"kind", n.kind}, {"result", n.result}, {"children", n.children}, {"depth", n.depth}};
    out["parent"] = n.parent ? json(*n.parent) : json(nullptr);
    if (n.reason) {
        json r = {{"kind", n.reason->kind}};
        if (n.reason->kind == "ambiguous") r["vars"] = n.reason->vars;
        if (n.reason->kind == "overflow") r["cycle_path"] = n.reason->cycle_path;
        if (n.reason->kind == "mismatch") {
            r["expected"] = n.reason->expected;
            r["found"] = n.reason->found;
        }
        out["reason"] = r;
    } else {
        out["reason"] = nullptr;
    }
    if (n.predicate) {
        out["predicate"] = {{"short", n.predicate->short_text},
                            {"qualified", n.predicate->qualified},
                            {"structured", n.predicate->structured}};
    }
    if (n.role) out["role"] = *n.role;
    if (n.impl) {
        out["impl"] = {{"id", n.impl->id},
                       {"head_short", n.impl->head_short},
                       {"head_qualified", n.impl->head_qualified},
                       {"span", span_json(n.impl->span)}};
    }
    if (n.builtin) out["builtin"] = *n.builtin;
    if (n.goal_kind) out["goal_kind"] = {{"name", n.goal_kind->name}, {"weight", n.goal_kind->weight}};
    return out;
}

[[noreturn]] void bad(const std::string& what) { throw DocumentError("invalid tree document: " + what); }

const json& field(const json& obj, const char* key) {
    if (!obj.is_object()) bad(std::string("expected an object holding `") + key + "`");
    auto it = obj.find(key);
    if (it == obj.end()) bad(std::string("missing field `") + key + "`");
    return *it;
}

template <class T>
T get(const json& obj, const char* key) {
    try {
        return field(obj, key).get<T>();
    } catch (const json::exception& e) {
        bad(std::string("field `") + key + "`: " + e.what());
    }
}

std::uint32_t parse_id(const std::string& key) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(key, &used);
    } catch (const std::exception&) {
        bad("non-numeric id `" + key + "`");
    }
    if (used != key.size() || std::to_string(v) != key) bad("non-canonical id `" + key + "`");
    return static_cast<std::uint32_t>(v);
}

DocSpan span_from(const json& j) {
    return {get<std::string>(j, "file"), get<std::uint32_t>(j, "line_start"), get<std::uint32_t>(j, "line_end")};
}

DocNode node_from(const json& j) {
    DocNode n;
    n.kind = get<std::string>(j, "kind");
    if (n.kind != "goal" && n.kind != "candidate") bad("node kind `" + n.kind + "`");
    n.result = get<std::string>(j, "result");
    if (n.result != "yes" && n.result != "no" && n.result != "maybe") bad("result `" + n.result + "`");
    n.children = get<std::vector<std::uint32_t>>(j, "children");
    n.depth = get<std::uint32_t>(j, "depth");
    if (!field(j, "parent").is_null()) n.parent = get<std::uint32_t>(j, "parent");
    const auto& r = field(j, "reason");
    if (!r.is_null()) {
        DocReason reason;
        reason.kind = get<std::string>(r, "kind");
        if (reason.kind == "ambiguous") {
            reason.vars = get<std::vector<std::uint32_t>>(r, "vars");
        } else if (reason.kind == "overflow") {
            reason.cycle_path = get<std::vector<std::uint32_t>>(r, "cycle_path");
        } else if (reason.kind == "mismatch") {
            reason.expected = get<std::string>(r, "expected");
            reason.found = get<std::string>(r, "found");
        } else if (reason.kind != "no_candidates") {
            bad("reason kind `" + reason.kind + "`");
        }
        n.reason = std::move(reason);
    }
    if (j.contains("predicate")) {
        const auto& p = j["predicate"];
        n.predicate = DocPredicate{get<std::string>(p, "short"), get<std::string>(p, "qualified"), field(p, "structured")};
    }
    if (j.contains("role")) n.role = get<std::string>(j, "role");
    if (j.contains("impl")) {
        const auto& i = j["impl"];
        n.impl = DocImpl{get<std::string>(i, "id"), get<std::string>(i, "head_short"),
                         get<std::string>(i, "head_qualified"), span_from(field(i, "span"))};
    }
    if (j.contains("builtin")) n.builtin = get<std::string>(j, "builtin");
    if (j.contains("goal_kind")) {
        const auto& k = j["goal_kind"];
        n.goal_kind = DocGoalKind{get<std::string>(k, "name"), get<std::uint64_t>(k, "weight")};
    }
    if (n.kind == "goal" && !n.predicate) bad("goal node without predicate");
    return n;
}

}  // namespace

json to_json(const TreeDocument& doc) {
    json out;
    out["schema_version"] = doc.schema_version;
    json symbols = json::object();
    for (const auto& [id, s] : doc.symbols) {
        symbols[std::to_string(id)] = {{"path", s.path}, {"provenance", s.provenance}, {"span", span_json(s.span)}};
    }
    out["symbols"] = symbols;
    json goals = json::array();
    for (const auto& g : doc.goals) {
        json nodes = json::object();
        for (const auto& [id, n] : g.nodes) nodes[std::to_string(id)] = node_json(n);
        goals.push_back({{"label", g.label}, {"root", g.root}, {"result", g.result}, {"nodes", nodes}});
    }
    out["goals"] = goals;
    json rankings = json::object();
    for (const auto& [label, by_heuristic] : doc.rankings) {
        json r = json::object();
        for (const auto& [h, ids] : by_heuristic) r[h] = ids;
        rankings[label] = r;
    }
    out["rankings"] = rankings;
    json views = json::object();
    for (const auto& [label, v] : doc.views) {
        json bu = json::array();
        for (const auto& e : v.bottom_up) bu.push_back({{"leaf", e.leaf}, {"key", e.key}, {"chain", e.chain}});
        views[label] = {{"bottom_up", bu},
                        {"top_down", {{"root", v.top_down_root}, {"filter", "failures_only"}, {"visible", v.top_down_failures}}}};
    }
    out["views"] = views;
    return out;
}

TreeDocument from_json(const json& j) {
    TreeDocument doc;
    doc.schema_version = get<std::string>(j, "schema_version");
    if (doc.schema_version != kSchemaVersion) bad("unsupported schema_version `" + doc.schema_version + "`");
    for (const auto& [key, s] : field(j, "symbols").items()) {
        const auto& prov = get<std::string>(s, "provenance");
        if (prov != "local" && prov != "external") bad("provenance `" + prov + "`");
        doc.symbols[parse_id(key)] = {get<std::string>(s, "path"), prov, span_from(field(s, "span"))};
    }
    std::set<std::uint32_t> ids;
    for (const auto& g : field(j, "goals")) {
        DocGoal goal;
        goal.label = get<std::string>(g, "label");
        goal.root = get<std::uint32_t>(g, "root");
        goal.result = get<std::string>(g, "result");
        for (const auto& [key, n] : field(g, "nodes").items()) {
            auto id = parse_id(key);
            if (!ids.insert(id).second) bad("duplicate node id " + key);
            goal.nodes.emplace(id, node_from(n));
        }
        doc.goals.push_back(std::move(goal));
    }
    for (const auto& [label, by_h] : field(j, "rankings").items()) {
        for (const auto& [h, list] : by_h.items()) {
            doc.rankings[label][h] = list.get<std::vector<std::uint32_t>>();
        }
    }
    for (const auto& [label, v] : field(j, "views").items()) {
        DocViews views;
        for (const auto& e : field(v, "bottom_up")) {
            views.bottom_up.push_back(
                {get<std::uint32_t>(e, "leaf"), get<std::uint64_t>(e, "key"), get<std::vector<std::uint32_t>>(e, "chain")});
        }
        const auto& td = field(v, "top_down");
        views.top_down_root = get<std::uint32_t>(td, "root");
        views.top_down_failures = get<std::vector<std::uint32_t>>(td, "visible");
        doc.views[label] = std::move(views);
    }

    auto check = [&](std::uint32_t id, const std::string& where) {
        if (!ids.contains(id)) bad("dangling node id " + std::to_string(id) + " in " + where);
    };
    for (const auto& g : doc.goals) {
        check(g.root, "goal root");
        for (const auto& [id, n] : g.nodes) {
            for (auto c : n.children) check(c, "children");
            if (n.parent) check(*n.parent, "parent");
            if (n.reason) {
                for (auto c : n.reason->cycle_path) check(c, "cycle_path");
            }
        }
    }
    for (const auto& [_, by_h] : doc.rankings) {
        for (const auto& [__, list] : by_h) {
            for (auto id : list) check(id, "rankings");
        }
    }
    for (const auto& [_, v] : doc.views) {
        check(v.top_down_root, "views");
        for (const auto& e : v.bottom_up) {
            check(e.leaf, "views");
            for (auto id : e.chain) check(id, "views");
        }
        for (auto id : v.top_down_failures) check(id, "views");
    }
    return doc;
}

std::string write_document(const TreeDocument& doc) { return to_json(doc).dump(2) + "\n"; }

TreeDocument read_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError(std::string("invalid JSON: ") + e.what());
    }
    return from_json(j);
}

}  // namespace traitscope
