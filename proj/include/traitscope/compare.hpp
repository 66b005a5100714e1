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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "traitscope/context.hpp"
#include "traitscope/solver.hpp"

namespace traitscope {

/// The goal a compiler that stops at branch points would report: follow
/// the unique failing candidate and its first failing subgoal until a
/// goal has zero or several failing candidates.
[[nodiscard]] NodeId emulate_compiler_report(const InferenceTree& tree);

/// Goal-to-goal edges on the tree path between two goals (candidates are
/// not counted). Zero for the same node.
[[nodiscard]] std::uint32_t goal_distance(const InferenceTree& tree, NodeId a, NodeId b);

inline constexpr const char* kMethods[] = {"inertia", "depth", "infer_vars", "emulated_compiler"};

struct ProgramComparison {
    std::string program;
    std::string goal;
    NodeId ground_truth = 0;
    std::map<std::string, std::uint32_t> distance;  // by method name
    double dnf_time_ms = 0;
    std::size_t tree_size = 0;
};

struct ComparisonReport {
    std::vector<ProgramComparison> programs;

    [[nodiscard]] double median(const std::string& method) const;
};

class GroundTruthError : public std::runtime_error {
  public:
    GroundTruthError(const std::string& message, std::vector<std::string> candidates)
        : std::runtime_error(message), candidates_(std::move(candidates)) {}
    [[nodiscard]] const std::vector<std::string>& candidates() const { return candidates_; }

  private:
    std::vector<std::string> candidates_;
};

/// Locates the failing leaf printing as `ground_truth` (shortened or fully
/// qualified) and measures every method against it. Throws
/// GroundTruthError when zero or several leaves match.
[[nodiscard]] ProgramComparison compare_program(const Context& context, const std::string& program,
                                                const std::string& ground_truth, const SolveConfig& config = {});

[[nodiscard]] nlohmann::json to_json(const ComparisonReport& report);
[[nodiscard]] std::string format_table(const ComparisonReport& report);

}  // namespace traitscope
