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

#include "traitscope/server.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "traitscope/document.hpp"
#include "traitscope/parser.hpp"
#include "traitscope/printer.hpp"
#include "traitscope/wellformed.hpp"

namespace traitscope {

using nlohmann::json;

namespace {

std::shared_ptr<const Snapshot> load(const std::string& path, const SolveConfig& config, std::uint64_t generation) {
    auto context = std::make_shared<Context>(parse_file(path));
    auto diagnostics = check_well_formed(*context);
    if (!diagnostics.empty()) throw std::runtime_error(path + ": " + diagnostics.front().message);
    auto snap = std::make_shared<Snapshot>();
    snap->generation = generation;
    snap->document = to_json(build_document(*context, solve_all(*context, config)));
    snap->context = std::move(context);
    return snap;
}

std::filesystem::file_time_type mtime_of(const std::string& path) {
    std::error_code ec;
    auto t = std::filesystem::last_write_time(path, ec);
    return ec ? std::filesystem::file_time_type{} : t;
}

}  // namespace

DocumentStore::DocumentStore(std::string path, SolveConfig config) : path_(std::move(path)), config_(config) {
    mtime_ = mtime_of(path_);
    current_ = load(path_, config_, 1);
}

std::shared_ptr<const Snapshot> DocumentStore::snapshot() const {
    std::lock_guard lock(mu_);
    return current_;
}

bool DocumentStore::refresh(std::string* error) {
    if (mtime_of(path_) == mtime_) return false;
    return reload(error);
}

bool DocumentStore::reload(std::string* error) {
    mtime_ = mtime_of(path_);
    std::uint64_t next = snapshot()->generation + 1;
    std::shared_ptr<const Snapshot> snap;
    try {
        snap = load(path_, config_, next);
    } catch (const std::exception& e) {
        if (error) *error = e.what();
        return false;
    }
    {
        std::lock_guard lock(mu_);
        current_ = std::move(snap);
    }
    cv_.notify_all();
    return true;
}

std::uint64_t DocumentStore::wait_newer(std::uint64_t seen, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, timeout, [&] { return stopped_ || current_->generation > seen; });
    return current_->generation;
}

void DocumentStore::shutdown() {
    {
        std::lock_guard lock(mu_);
        stopped_ = true;
    }
    cv_.notify_all();
}

// ---------------------------------------------------------------------------
// Routing

namespace {

HttpResponse ok(const json& body) { return {200, "application/json", body.dump() + "\n"}; }

HttpResponse error(int status, const std::string& message) {
    return {status, "application/json", json{{"error", message}}.dump() + "\n"};
}

const json* goal_json(const json& doc, const std::string& label) {
    for (const auto& g : doc.at("goals")) {
        if (g.at("label") == label) return &g;
    }
    return nullptr;
}

std::optional<std::uint64_t> parse_number(const std::string& s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

json span_json(const Span& s) { return {{"file", s.file}, {"line_start", s.line_start}, {"line_end", s.line_end}}; }

}  // namespace

std::string ApiHandler::event_frame(std::uint64_t generation) {
    return "event: document\ndata: " + json{{"generation", generation}}.dump() + "\n\n";
}

HttpResponse ApiHandler::get(const std::string& path, const std::map<std::string, std::string>& query) const {
    const auto snap = store_.snapshot();
    const json& doc = snap->document;
    const Context& ctx = *snap->context;
    auto param = [&](const char* name) -> const std::string* {
        auto it = query.find(name);
        return it == query.end() ? nullptr : &it->second;
    };

    if (path == "/api/goals") {
        json goals = json::array();
        for (const auto& g : doc.at("goals")) {
            goals.push_back({{"label", g.at("label")}, {"root", g.at("root")}, {"result", g.at("result")}});
        }
        return ok({{"generation", snap->generation}, {"goals", goals}});
    }

    if (path == "/api/tree" || path == "/api/rankings") {
        const auto* label = param("goal");
        if (!label) return error(400, "missing query parameter `goal`");
        const json* g = goal_json(doc, *label);
        if (!g) return error(404, "unknown goal `" + *label + "`");
        if (path == "/api/rankings") {
            return ok({{"generation", snap->generation}, {"goal", *label}, {"rankings", doc.at("rankings").at(*label)}});
        }
        return ok({{"generation", snap->generation},
                   {"schema_version", doc.at("schema_version")},
                   {"goal", *g},
                   {"rankings", doc.at("rankings").at(*label)},
                   {"views", doc.at("views").at(*label)}});
    }

    if (path.rfind("/api/node/", 0) == 0) {
        auto id = parse_number(path.substr(std::string("/api/node/").size()));
        if (!id) return error(400, "malformed node id");
        const auto key = std::to_string(*id);
        for (const auto& g : doc.at("goals")) {
            const auto& nodes = g.at("nodes");
            if (auto it = nodes.find(key); it != nodes.end()) {
                return ok({{"generation", snap->generation}, {"goal", g.at("label")}, {"id", *id}, {"node", *it}});
            }
        }
        return error(404, "unknown node " + key);
    }

    if (path == "/api/impls") {
        const auto* name = param("trait");
        if (!name) return error(400, "missing query parameter `trait`");
        std::vector<SymbolId> matches;
        for (std::uint32_t i = 0; i < ctx.symbols().size(); ++i) {
            const auto& s = ctx.symbols()[i];
            if (s.kind == SymbolKind::Trait && (s.path == *name || s.name() == *name)) matches.push_back(SymbolId{i});
        }
        if (matches.empty()) return error(404, "unknown trait `" + *name + "`");
        if (matches.size() > 1) {
            for (auto m : matches) {
                if (ctx.symbol(m).path == *name) matches = {m};
            }
        }
        if (matches.size() > 1) {
            json names = json::array();
            for (auto m : matches) names.push_back(ctx.symbol(m).path);
            return {400, "application/json", json{{"error", "ambiguous trait name"}, {"candidates", names}}.dump() + "\n"};
        }
        json impls = json::array();
        for (const auto* impl : ctx.impls_of(matches.front())) {
            impls.push_back({{"id", std::to_string(impl->id.value)},
                             {"head_short", impl_head(*impl, PrintMode::Shortened, ctx)},
                             {"head_qualified", impl_head(*impl, PrintMode::FullyQualified, ctx)},
                             {"span", span_json(ctx.impl_declaration(impl->id)->span)}});
        }
        return ok({{"generation", snap->generation}, {"trait", ctx.symbol(matches.front()).path}, {"impls", impls}});
    }

    if (path == "/api/source") {
        const auto* file = param("file");
        const auto* line_text = param("line");
        if (!file || !line_text) return error(400, "missing query parameter `file` or `line`");
        auto line = parse_number(*line_text);
        if (!line || *line == 0) return error(400, "malformed line number");
        // Only files the program itself came from are readable.
        std::set<std::string> known;
        for (const auto& s : ctx.symbols()) known.insert(s.span.file);
        for (const auto& g : ctx.goals()) known.insert(g.span.file);
        for (const auto& d : ctx.declarations()) known.insert(d.span.file);
        if (!known.contains(*file)) return error(404, "unknown source file `" + *file + "`");
        std::ifstream in(*file);
        if (!in) return error(404, "cannot read `" + *file + "`");
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        std::size_t lines = 0;
        for (char c : text) lines += c == '\n';
        if (!text.empty() && text.back() != '\n') ++lines;
        if (*line > lines) return error(404, "line out of range");
        return ok({{"file", *file}, {"line", *line}, {"line_count", lines}, {"text", text}});
    }

    return error(404, "no such endpoint");
}

// ---------------------------------------------------------------------------
// Socket layer

int run_server(DocumentStore& store, int port, std::ostream& out, std::ostream& err, const std::atomic<bool>* stop) {
    httplib::Server server;
    // httplib defaults to SO_REUSEPORT, which lets a second server share the port.
    server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    ApiHandler handler(store);

    server.Get(R"(/api/events)", [&](const httplib::Request&, httplib::Response& res) {
        res.set_header("Cache-Control", "no-cache");
        auto seen = std::make_shared<std::uint64_t>(0);
        res.set_chunked_content_provider("text/event-stream", [&store, seen](std::size_t, httplib::DataSink& sink) {
            if (store.stopped()) return false;
            auto gen = store.wait_newer(*seen, std::chrono::seconds(15));
            if (store.stopped()) return false;
            std::string frame = gen > *seen ? ApiHandler::event_frame(gen) : std::string(": keep-alive\n\n");
            *seen = gen;
            return sink.write(frame.data(), frame.size());
        });
    });
    server.Get(R"(/api/.*)", [&](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> query;
        for (const auto& [k, v] : req.params) query.emplace(k, v);
        auto r = handler.get(req.path, query);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    });

    const int requested = port;
    if (port == 0) {
        port = server.bind_to_any_port("127.0.0.1");
        if (port < 0) port = 0;
    } else if (!server.bind_to_port("127.0.0.1", port)) {
        port = 0;
    }
    if (port == 0) {
        err << "error: cannot bind 127.0.0.1:" << requested << " (port busy?)\n";
        return 2;
    }
    out << "serving " << store.path() << " on http://127.0.0.1:" << port << "\n" << std::flush;

    std::atomic<bool> done{false};
    std::thread watcher([&] {
        while (!done) {
            // Keep calling stop until listen has actually started and returned.
            if (stop && *stop) {
                store.shutdown();  // wakes event streams so workers can exit
                server.stop();
                std::this_thread::sleep_for(std::chrono::milliseconds(20));
                continue;
            }
            std::string problem;
            if (store.refresh(&problem)) {
                out << "re-solved " << store.path() << " (generation " << store.snapshot()->generation << ")\n"
                    << std::flush;
            } else if (!problem.empty()) {
                err << "reload failed: " << problem << "\n" << std::flush;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(200));
        }
    });
    server.listen_after_bind();
    done = true;
    store.shutdown();
    watcher.join();
    return 0;
}

}  // namespace traitscope
