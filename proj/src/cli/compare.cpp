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

#include "traitscope/compare.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>

#include "traitscope/printer.hpp"
#include "traitscope/ranking.hpp"
#include "traitscope/views.hpp"

namespace traitscope {

NodeId emulate_compiler_report(const InferenceTree& tree) {
    NodeId current = tree.root();
    while (true) {
        const auto& g = tree.goal(current);
        if (!g.result.failed()) return current;
        std::vector<NodeId> failing;
        for (auto c : g.candidates) {
            if (tree.result(c).failed()) failing.push_back(c);
        }
        if (failing.size() != 1) return current;
        std::optional<NodeId> next;
        for (auto s : tree.candidate(failing.front()).subgoals) {
            if (tree.result(s).failed()) {
                next = s;
                break;
            }
        }
        if (!next) return current;
        current = *next;
    }
}

std::uint32_t goal_distance(const InferenceTree& tree, NodeId a, NodeId b) {
    std::set<NodeId> above_a;
    for (std::optional<NodeId> p = a; p; p = tree.parent(*p)) above_a.insert(*p);
    NodeId lca = b;
    while (!above_a.contains(lca)) lca = *tree.parent(lca);
    if (!tree.is_goal(lca)) lca = tree.candidate(lca).parent;
    auto d = tree.depth(lca);
    return (tree.depth(a) - d) + (tree.depth(b) - d);
}

double ComparisonReport::median(const std::string& method) const {
    std::vector<double> values;
    for (const auto& p : programs) {
        if (auto it = p.distance.find(method); it != p.distance.end()) values.push_back(it->second);
    }
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ProgramComparison compare_program(const Context& context, const std::string& program, const std::string& ground_truth,
                                  const SolveConfig& config) {
    const std::string wanted = trim(ground_truth);
    struct Hit {
        std::size_t goal;
        NodeId leaf;
    };
    std::vector<Hit> hits;
    std::vector<std::string> failing_prints;
    std::vector<InferenceTree> trees;
    for (std::size_t gi = 0; gi < context.goals().size(); ++gi) {
        trees.push_back(solve(context, context.goals()[gi].predicate, config));
        const auto& tree = trees.back();
        for (auto leaf : failed_leaves(tree)) {
            const auto& p = tree.goal(leaf).predicate;
            auto s = pretty_print(p, PrintMode::Shortened, context);
            auto q = pretty_print(p, PrintMode::FullyQualified, context);
            failing_prints.push_back(q);
            if (s == wanted || q == wanted) hits.push_back({gi, leaf});
        }
    }
    if (hits.size() != 1) {
        std::vector<std::string> names;
        if (hits.empty()) {
            names = failing_prints;
        } else {
            for (const auto& h : hits) {
                names.push_back(pretty_print(trees[h.goal].goal(h.leaf).predicate, PrintMode::FullyQualified, context) +
                                " (node " + std::to_string(h.leaf) + ")");
            }
        }
        throw GroundTruthError(program + ": ground truth `" + wanted + "` " +
                                   (hits.empty() ? "matches no failing leaf" : "matches several failing leaves"),
                               std::move(names));
    }

    const auto& tree = trees[hits.front().goal];
    ProgramComparison out;
    out.program = program;
    out.goal = context.goals()[hits.front().goal].label;
    out.ground_truth = hits.front().leaf;
    out.tree_size = tree.size();
    for (auto h : {Heuristic::Inertia, Heuristic::Depth, Heuristic::InferVarCount}) {
        auto r = rank(tree, context, h);
        out.distance[to_string(h)] = static_cast<std::uint32_t>(r.index_of(out.ground_truth));
    }
    out.distance["emulated_compiler"] = goal_distance(tree, emulate_compiler_report(tree), out.ground_truth);

    constexpr int kRuns = 5;
    std::vector<double> times;
    for (int i = 0; i < kRuns; ++i) {
        auto start = std::chrono::steady_clock::now();
        auto dnf = dnf_normalize(to_formula(tree));
        auto end = std::chrono::steady_clock::now();
        (void)dnf;
        times.push_back(std::chrono::duration<double, std::milli>(end - start).count());
    }
    std::sort(times.begin(), times.end());
    out.dnf_time_ms = times[kRuns / 2];
    return out;
}

nlohmann::json to_json(const ComparisonReport& report) {
    nlohmann::json programs = nlohmann::json::array();
    for (const auto& p : report.programs) {
        programs.push_back({{"program", p.program},
                            {"goal", p.goal},
                            {"ground_truth", p.ground_truth},
                            {"distance", p.distance},
                            {"dnf_time_ms", p.dnf_time_ms},
                            {"tree_size", p.tree_size}});
    }
    nlohmann::json medians = nlohmann::json::object();
    for (const char* m : kMethods) medians[m] = report.median(m);
    return {{"programs", programs}, {"medians", medians}};
}

std::string format_table(const ComparisonReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %8s %6s %11s %9s %10s %6s\n", "program", "inertia", "depth", "infer_vars",
                  "compiler", "dnf_ms", "nodes");
    out += line;
    for (const auto& p : report.programs) {
        std::snprintf(line, sizeof line, "%-22s %8u %6u %11u %9u %10.4f %6zu\n", p.program.c_str(),
                      p.distance.at("inertia"), p.distance.at("depth"), p.distance.at("infer_vars"),
                      p.distance.at("emulated_compiler"), p.dnf_time_ms, p.tree_size);
        out += line;
    }
    std::snprintf(line, sizeof line, "%-22s %8.1f %6.1f %11.1f %9.1f\n", "median", report.median("inertia"),
                  report.median("depth"), report.median("infer_vars"), report.median("emulated_compiler"));
    out += line;
    return out;
}

}  // namespace traitscope
