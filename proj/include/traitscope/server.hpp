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

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>

#include "json.hpp"
#include "traitscope/context.hpp"
#include "traitscope/solver.hpp"

namespace traitscope {

/// One solved version of the watched file. Never mutated after publication.
struct Snapshot {
    std::uint64_t generation = 0;
    std::shared_ptr<const Context> context;
    nlohmann::json document;  // TreeDocument v1
};

/// Holds the current snapshot of a source file and re-solves it when the
/// file's modification time changes.
class DocumentStore {
  public:
    /// Throws ParseError or std::runtime_error if the initial load fails.
    DocumentStore(std::string path, SolveConfig config);

    [[nodiscard]] std::shared_ptr<const Snapshot> snapshot() const;

    /// Re-solves if the file changed since the last load. Returns true when
    /// a new generation was published. A failing reload keeps the old
    /// snapshot and reports the error through `error`.
    bool refresh(std::string* error = nullptr);
    /// Unconditional reload.
    bool reload(std::string* error = nullptr);

    /// Blocks until the generation exceeds `seen`, the timeout passes, or
    /// shutdown() is called. Returns the current generation.
    std::uint64_t wait_newer(std::uint64_t seen, std::chrono::milliseconds timeout) const;
    void shutdown();
    [[nodiscard]] bool stopped() const { return stopped_; }

    [[nodiscard]] const std::string& path() const { return path_; }

  private:
    std::string path_;
    SolveConfig config_;
    std::filesystem::file_time_type mtime_{};
    mutable std::mutex mu_;
    mutable std::condition_variable cv_;
    std::shared_ptr<const Snapshot> current_;
    std::atomic<bool> stopped_{false};
};

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// Request routing for the read-only JSON endpoints, independent of the
/// socket layer. Each call works on a single snapshot.
class ApiHandler {
  public:
    explicit ApiHandler(const DocumentStore& store) : store_(store) {}

    [[nodiscard]] HttpResponse get(const std::string& path, const std::map<std::string, std::string>& query) const;

    /// SSE frame announcing a generation.
    [[nodiscard]] static std::string event_frame(std::uint64_t generation);

  private:
    const DocumentStore& store_;
};

/// Serves on 127.0.0.1:`port` until `stop` becomes true (or forever).
/// Returns the process exit status: 2 when the port cannot be bound.
int run_server(DocumentStore& store, int port, std::ostream& out, std::ostream& err,
               const std::atomic<bool>* stop = nullptr);

}  // namespace traitscope
