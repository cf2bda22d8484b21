#pragma once

#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "tooldesc/mcp/client.hpp"
#include "tooldesc/mcp/endpoint.hpp"
#include "tooldesc/mcp/server.hpp"
#include "tooldesc/store/store.hpp"

namespace tooldesc::router {

struct RouterConfig {
    mcp::Endpoint upstream;
    enum class ListenKind { Stdio, Http } listen_kind = ListenKind::Stdio;
    std::string listen_host = "127.0.0.1";
    int listen_port = 0; // 0 picks a free port
    store::ComponentSelection selection = store::ComponentSelection::original();
    enum class Fallback { ServeOriginal, Fail } fallback = Fallback::ServeOriginal;
    std::string store_path; // may be empty in original mode
    mcp::ClientConfig client;
};

Result<RouterConfig::Fallback> parse_fallback(const std::string& s);

struct RewriteStats {
    int rewritten = 0;
    int fallbacks = 0;
};

/// Replace the description of each entry in a tools/list result array with
/// the store-assembled text. Order, names, schemas and unknown fields pass
/// through untouched. Missing augmented records follow the fallback policy.
Result<RewriteStats> rewrite_tools_array(Json& tools, const store::ComponentSelection& selection,
                                         const store::Snapshot& snapshot,
                                         const std::string& server_label,
                                         RouterConfig::Fallback fallback,
                                         std::vector<std::string>* warnings);

/// Descriptor-level variant of the same rewrite.
Result<std::vector<mcp::ToolDescriptor>> rewrite_listing(
    const std::vector<mcp::ToolDescriptor>& listing, const store::ComponentSelection& selection,
    const store::Snapshot& snapshot, RouterConfig::Fallback fallback,
    std::vector<std::string>* warnings = nullptr);

/// The Tool Description Router: a real MCP server to its clients and a real
/// MCP client to the upstream. tools/list responses are re-described from the
/// store; every other method is forwarded verbatim. The selection is fixed
/// for the lifetime of the process.
class Router {
public:
    explicit Router(RouterConfig config);
    ~Router();

    /// Fail-fast startup: connects to the upstream once and snapshots the
    /// store (read-only for the router's lifetime).
    Result<void> start();

    /// Serve a single client session over stdio; returns at EOF.
    Result<void> serve_stdio(std::istream& in, std::ostream& out);

    /// Serve many client sessions over HTTP; returns the bound port.
    Result<int> serve_http();
    void stop();

    void set_log(std::function<void(const std::string&)> log) { log_ = std::move(log); }
    const store::Snapshot& snapshot() const { return snapshot_; }

private:
    RouterConfig config_;
    store::Snapshot snapshot_;
    std::unique_ptr<mcp::Session> startup_session_; // reused by the stdio listener
    std::unique_ptr<mcp::HttpListener> listener_;
    std::function<void(const std::string&)> log_;
};

} // namespace tooldesc::router
