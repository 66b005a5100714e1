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

#include "traitscope/render.hpp"

namespace traitscope {

const char* glyph(Verdict verdict) {
    switch (verdict) {
        case Verdict::Yes: return "[+]";
        case Verdict::No: return "[x]";
        case Verdict::Maybe: return "[?]";
    }
    return "[?]";
}

namespace {

std::string join_ids(const std::vector<NodeId>& ids, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(ids[i]);
    }
    return out;
}

struct ReasonText {
    PrintMode mode;
    const Context& context;

    std::string operator()(const reason::None&) const { return ""; }
    std::string operator()(const reason::NoCandidates&) const { return "no matching impl"; }
    std::string operator()(const reason::Ambiguous& r) const {
        std::string out = "ambiguous in";
        for (auto v : r.vars) out += " ?" + std::to_string(v);
        return out;
    }
    std::string operator()(const reason::Overflow& r) const {
        if (r.cycle_path.size() == 1) return "overflow: depth limit at goal " + std::to_string(r.cycle_path.front());
        return "overflow: cycle through goals " + join_ids(r.cycle_path, " -> ");
    }
    std::string operator()(const reason::Mismatch& r) const {
        return "type mismatch: expected `" + pretty_print(r.expected, mode, context) + "`, found `" +
               pretty_print(r.found, mode, context) + "`";
    }
};

void render(const InferenceTree& tree, const Context& context, PrintMode mode, NodeId id, int indent,
            std::string& out) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    const auto& r = tree.result(id);
    out += glyph(r.verdict);
    out += ' ';
    if (tree.is_goal(id)) {
        const auto& g = tree.goal(id);
        out += "goal " + std::to_string(id) + ": " + pretty_print(g.predicate, mode, context);
        if (g.role == GoalRole::Evidence) out += "  (evidence)";
        if (g.role == GoalRole::Unify) out += "  (unify)";
    } else {
        const auto& c = tree.candidate(id);
        out += "candidate " + std::to_string(id) + ": ";
        if (const auto* impl_id = std::get_if<ImplId>(&c.source)) {
            const auto* impl = context.impl(*impl_id);
            out += impl ? impl_head(*impl, mode, context) : "impl #" + std::to_string(impl_id->value);
        } else {
            out += "builtin ";
            out += to_string(std::get<BuiltinKind>(c.source));
        }
    }
    // Reasons are shown where they originate, not on every ancestor.
    if (!r.is_yes() && tree.children(id).empty()) {
        auto text = std::visit(ReasonText{mode, context}, r.reason);
        if (!text.empty()) out += "  -- " + text;
    }
    out += '\n';
    for (auto child : tree.children(id)) render(tree, context, mode, child, indent + 1, out);
}

}  // namespace

std::string describe(const Reason& reason, PrintMode mode, const Context& context) {
    return std::visit(ReasonText{mode, context}, reason);
}

std::string render_tree_text(const InferenceTree& tree, const Context& context, PrintMode mode) {
    std::string out;
    if (!tree.empty()) render(tree, context, mode, tree.root(), 0, out);
    return out;
}

}  // namespace traitscope
