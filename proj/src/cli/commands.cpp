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

#include "traitscope/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "traitscope/compare.hpp"
#include "traitscope/document.hpp"
#include "traitscope/parser.hpp"
#include "traitscope/printer.hpp"
#include "traitscope/render.hpp"
#include "traitscope/server.hpp"
#include "traitscope/views.hpp"
#include "traitscope/wellformed.hpp"

namespace traitscope {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SolveConfig config_from_env() {
    SolveConfig cfg;
    if (const char* v = std::getenv("TRAITSCOPE_MAX_DEPTH"); v && *v) {
        char* end = nullptr;
        long n = std::strtol(v, &end, 10);
        if (*end != '\0' || n <= 0 || n > 100000) {
            throw UsageError(std::string("TRAITSCOPE_MAX_DEPTH must be a positive integer, got `") + v + "`");
        }
        cfg.max_depth = static_cast<std::uint32_t>(n);
    }
    return cfg;
}

/// Parses and checks a program; diagnostics go to `err`.
std::optional<Context> load_program(const std::string& file, std::ostream& err) {
    Context ctx;
    try {
        ctx = parse_file(file);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return std::nullopt;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return std::nullopt;
    }
    auto diagnostics = check_well_formed(ctx);
    if (!diagnostics.empty()) {
        for (const auto& d : diagnostics) {
            err << d.span.file << ":" << d.span.line_start << ": " << d.message << "\n";
        }
        return std::nullopt;
    }
    return ctx;
}

const GoalItem* require_goal(const Context& ctx, const std::string& label, std::ostream& err) {
    const auto* g = ctx.find_goal(label);
    if (!g) {
        err << "error: no goal labelled `" << label << "`";
        if (!ctx.goals().empty()) {
            err << " (known:";
            for (const auto& item : ctx.goals()) err << " " << item.label;
            err << ")";
        }
        err << "\n";
    }
    return g;
}

int cmd_check(const std::string& file, std::ostream& out, std::ostream& err) {
    auto ctx = load_program(file, err);
    if (!ctx) return kExitUsage;
    auto cfg = config_from_env();
    bool all_yes = true;
    for (const auto& solved : solve_all(*ctx, cfg)) {
        const auto& tree = solved.tree;
        const auto& root = tree.result(tree.root());
        out << solved.label << ": " << to_string(root.verdict) << "\n";
        if (root.is_yes()) continue;
        all_yes = false;
        auto ranking = rank(tree, *ctx, Heuristic::Inertia);
        auto view = bottom_up(tree, ranking);
        std::size_t shown = std::min<std::size_t>(3, view.entries.size());
        for (std::size_t i = 0; i < shown; ++i) {
            const auto& leaf = tree.goal(view.entries[i].leaf);
            out << "  " << (i + 1) << ". " << pretty_print(leaf.predicate, PrintMode::Shortened, *ctx);
            auto why = describe(leaf.result.reason, PrintMode::Shortened, *ctx);
            if (!why.empty()) out << "  -- " << why;
            out << "\n";
        }
        if (view.entries.size() > shown) out << "  (" << view.entries.size() - shown << " more)\n";
    }
    if (all_yes) {
        out << "all goals hold\n";
        return kExitOk;
    }
    return kExitFailure;
}

int cmd_tree(const std::string& file, const std::string& label, const std::string& format, std::ostream& out,
             std::ostream& err) {
    auto ctx = load_program(file, err);
    if (!ctx) return kExitUsage;
    if (!require_goal(*ctx, label, err)) return kExitUsage;
    auto cfg = config_from_env();
    auto solved = solve_all(*ctx, cfg, label);
    if (format == "json") {
        out << write_document(build_document(*ctx, solved));
    } else {
        out << render_tree_text(solved.front().tree, *ctx, PrintMode::FullyQualified);
    }
    return kExitOk;
}

int cmd_rank(const std::string& file, const std::string& label, const std::string& heuristic, std::ostream& out,
             std::ostream& err) {
    auto ctx = load_program(file, err);
    if (!ctx) return kExitUsage;
    const auto* goal = require_goal(*ctx, label, err);
    if (!goal) return kExitUsage;
    Heuristic h = heuristic == "depth" ? Heuristic::Depth
                  : heuristic == "vars" ? Heuristic::InferVarCount
                                        : Heuristic::Inertia;
    auto tree = solve(*ctx, goal->predicate, config_from_env());
    auto ranking = rank(tree, *ctx, h);
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
        const auto& e = ranking.entries[i];
        const auto& leaf = tree.goal(e.leaf);
        out << i << "\tnode " << e.leaf << "\tkey " << e.key << "\t"
            << pretty_print(leaf.predicate, PrintMode::Shortened, *ctx) << "\t" << to_string(classify_goal(leaf, *ctx))
            << "\n";
    }
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& files, const std::string& map_file, const std::string& json_out,
                std::ostream& out, std::ostream& err) {
    nlohmann::json truth;
    {
        std::ifstream in(map_file);
        if (!in) {
            err << "error: cannot read ground-truth map `" << map_file << "`\n";
            return kExitUsage;
        }
        try {
            in >> truth;
        } catch (const std::exception& e) {
            err << "error: " << map_file << ": " << e.what() << "\n";
            return kExitUsage;
        }
        if (!truth.is_object()) {
            err << "error: " << map_file << ": expected an object mapping program names to predicates\n";
            return kExitUsage;
        }
    }
    auto cfg = config_from_env();
    ComparisonReport report;
    for (const auto& file : files) {
        auto name = std::filesystem::path(file).filename().string();
        auto it = truth.find(name);
        if (it == truth.end() || !it->is_string()) {
            err << "error: no ground truth for `" << name << "` in " << map_file << "\n";
            return kExitUsage;
        }
        auto ctx = load_program(file, err);
        if (!ctx) return kExitUsage;
        try {
            report.programs.push_back(compare_program(*ctx, name, it->get<std::string>(), cfg));
        } catch (const GroundTruthError& e) {
            err << "error: " << e.what() << "\n";
            for (const auto& c : e.candidates()) err << "  candidate: " << c << "\n";
            return kExitUsage;
        }
    }
    out << format_table(report);
    if (!json_out.empty()) {
        auto text = to_json(report).dump(2) + "\n";
        if (json_out == "-") {
            out << text;
        } else {
            std::ofstream o(json_out);
            if (!o) {
                err << "error: cannot write `" << json_out << "`\n";
                return kExitUsage;
            }
            o << text;
        }
    }
    return kExitOk;
}

int cmd_serve(const std::string& file, int port, std::ostream& out, std::ostream& err) {
    auto cfg = config_from_env();
    if (!load_program(file, err)) return kExitUsage;
    DocumentStore store(file, cfg);
    return run_server(store, port, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trait inference debugger"};
    app.name("traitscope");
    app.require_subcommand(1);

    std::string file, label, format = "text", heuristic = "inertia", map_file, json_out;
    std::vector<std::string> files;
    int port = 7878;

    auto* check = app.add_subcommand("check", "Solve every goal and summarize failures");
    check->add_option("file", file, "Program")->required();

    auto* tree = app.add_subcommand("tree", "Print the inference tree of one goal");
    tree->add_option("file", file, "Program")->required();
    tree->add_option("--goal", label, "Goal label")->required();
    tree->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* rank_cmd = app.add_subcommand("rank", "List failed leaves in heuristic order");
    rank_cmd->add_option("file", file, "Program")->required();
    rank_cmd->add_option("--goal", label, "Goal label")->required();
    rank_cmd->add_option("--heuristic", heuristic, "inertia, depth or vars")
        ->check(CLI::IsMember({"inertia", "depth", "vars"}));

    auto* compare = app.add_subcommand("compare", "Distance from each method's pick to the known root cause");
    compare->add_option("files", files, "Programs")->required();
    compare->add_option("--ground-truth-map", map_file, "JSON object: file name -> predicate")->required();
    compare->add_option("--json", json_out, "Also write the report as JSON (`-` for stdout)");

    auto* serve = app.add_subcommand("serve", "Serve the debugger API on loopback");
    serve->add_option("file", file, "Program")->required();
    serve->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*check) return cmd_check(file, out, err);
        if (*tree) return cmd_tree(file, label, format, out, err);
        if (*rank_cmd) return cmd_rank(file, label, heuristic, out, err);
        if (*compare) return cmd_compare(files, map_file, json_out, out, err);
        if (*serve) return cmd_serve(file, port, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace traitscope
