#pragma once

#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "tooldesc/json.hpp"
#include "tooldesc/mcp/jsonrpc.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::mcp {

/// Server-side behavior: one JSON-RPC message in, an optional response out
/// (notifications produce none). A handler instance backs one client session.
class MessageHandler {
public:
    virtual ~MessageHandler() = default;
    virtual std::optional<Json> handle(const Json& message) = 0;
};

struct ToolOutcome {
    Json content = Json::array();
    bool is_error = false;

    static ToolOutcome text(const std::string& s, bool is_error = false) {
        return ToolOutcome{Json::array({Json{{"type", "text"}, {"text", s}}}), is_error};
    }
};

struct ServerTool {
    std::string name;
    std::string description;
    Json input_schema = Json{{"type", "object"}, {"properties", Json::object()}};
    std::function<ToolOutcome(const Json& arguments)> handler;
};

/// Plain MCP tool server: initialize handshake, paginated tools/list,
/// tools/call dispatch.
class ToolRegistryHandler : public MessageHandler {
public:
    ToolRegistryHandler(std::string server_name, std::string server_version);

    void add_tool(ServerTool tool);
    void set_page_size(int n) { page_size_ = n; } // 0 = single page

    std::optional<Json> handle(const Json& message) override;

protected:
    /// Result object for tools/list; overridable for test-server modes.
    virtual Json list_result(const std::optional<std::string>& cursor);

    std::string server_name_;
    std::string server_version_;
    std::vector<ServerTool> tools_;
    int page_size_ = 0;
    bool initialized_ = false;
};

/// Drive a handler over newline-delimited stdio until EOF.
void serve_stdio(MessageHandler& handler, std::istream& in, std::ostream& out);

/// Streamable-HTTP listener: each POST body is one JSON-RPC message; requests
/// answer with a single JSON body, notifications with 202. Sessions are keyed
/// by the Mcp-Session-Id header assigned at initialize.
class HttpListener {
public:
    using HandlerFactory = std::function<std::unique_ptr<MessageHandler>()>;

    explicit HttpListener(HandlerFactory factory);
    ~HttpListener();

    /// Binds and serves on a background thread; port 0 picks a free port.
    /// Returns the bound port.
    Result<int> start(const std::string& host, int port);
    void stop();

private:
    HandlerFactory factory_;
    std::unique_ptr<class HttpListenerImpl> impl_;
};

} // namespace tooldesc::mcp
