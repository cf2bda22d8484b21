#include "tooldesc/mcp/server.hpp"

#include <atomic>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tooldesc/mcp/framing.hpp"

namespace tooldesc::mcp {

ToolRegistryHandler::ToolRegistryHandler(std::string server_name, std::string server_version)
    : server_name_(std::move(server_name)), server_version_(std::move(server_version)) {}

void ToolRegistryHandler::add_tool(ServerTool tool) { tools_.push_back(std::move(tool)); }

Json ToolRegistryHandler::list_result(const std::optional<std::string>& cursor) {
    size_t start = 0;
    if (cursor) {
        try {
            start = static_cast<size_t>(std::stoul(*cursor));
        } catch (...) {
            start = tools_.size();
        }
    }
    const size_t page = page_size_ > 0 ? static_cast<size_t>(page_size_) : tools_.size();
    Json list = Json::array();
    size_t end = std::min(tools_.size(), start + std::max<size_t>(page, 1));
    for (size_t i = start; i < end; ++i) {
        const auto& t = tools_[i];
        list.push_back(Json{{"name", t.name},
                            {"description", t.description},
                            {"inputSchema", t.input_schema}});
    }
    Json result = {{"tools", list}};
    if (end < tools_.size()) result["nextCursor"] = std::to_string(end);
    return result;
}

std::optional<Json> ToolRegistryHandler::handle(const Json& message) {
    auto parsed = RpcMessage::from_json(message);
    if (!parsed) {
        const Json id = message.is_object() && message.contains("id") ? message["id"] : Json(nullptr);
        return make_error_response(id, kInvalidRequest, parsed.error().message);
    }
    const RpcMessage& m = parsed.value();

    if (m.is_notification()) {
        if (*m.method == "notifications/initialized") initialized_ = true;
        return std::nullopt;
    }
    if (!m.is_request())
        return std::nullopt; // responses are never addressed to a plain tool server

    const std::string& method = *m.method;
    if (method == "initialize") {
        const std::string offered =
            m.params.is_object() ? m.params.value("protocolVersion", "") : "";
        Json result = {{"protocolVersion", offered.empty() ? "2025-06-18" : offered},
                       {"capabilities", Json{{"tools", Json::object()}}},
                       {"serverInfo",
                        Json{{"name", server_name_}, {"version", server_version_}}}};
        return make_response(*m.id, result);
    }
    if (method == "tools/list") {
        std::optional<std::string> cursor;
        if (m.params.is_object() && m.params.contains("cursor") && m.params["cursor"].is_string())
            cursor = m.params["cursor"].get<std::string>();
        return make_response(*m.id, list_result(cursor));
    }
    if (method == "tools/call") {
        if (!m.params.is_object() || !m.params.contains("name"))
            return make_error_response(*m.id, kInvalidParams, "tools/call requires a name");
        const std::string name = m.params["name"].get<std::string>();
        for (const auto& t : tools_) {
            if (t.name != name) continue;
            const Json args = m.params.contains("arguments") ? m.params["arguments"] : Json::object();
            ToolOutcome outcome = t.handler ? t.handler(args) : ToolOutcome::text("no handler", true);
            Json result = {{"content", outcome.content}, {"isError", outcome.is_error}};
            return make_response(*m.id, result);
        }
        return make_error_response(*m.id, kInvalidParams, "unknown tool: " + name);
    }
    if (method == "ping") return make_response(*m.id, Json::object());
    return make_error_response(*m.id, kMethodNotFound, "method not supported: " + method);
}

void serve_stdio(MessageHandler& handler, std::istream& in, std::ostream& out) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        Json message;
        try {
            message = Json::parse(line);
        } catch (const Json::parse_error& e) {
            out << encode_frame(make_error_response(nullptr, kParseError, e.what()));
            out.flush();
            continue;
        }
        if (auto response = handler.handle(message)) {
            out << encode_frame(*response);
            out.flush();
        }
    }
}

class HttpListenerImpl {
public:
    httplib::Server server;
    std::thread thread;
    std::mutex mutex;
    std::map<std::string, std::unique_ptr<MessageHandler>> sessions;
    std::atomic<long> next_session{1};
};

HttpListener::HttpListener(HandlerFactory factory)
    : factory_(std::move(factory)), impl_(std::make_unique<HttpListenerImpl>()) {}

HttpListener::~HttpListener() { stop(); }

Result<int> HttpListener::start(const std::string& host, int port) {
    auto& impl = *impl_;
    impl.server.Post(".*", [this](const httplib::Request& req, httplib::Response& res) {
        auto& impl = *impl_;
        Json message;
        try {
            message = Json::parse(req.body);
        } catch (const Json::parse_error& e) {
            res.status = 400;
            res.set_content(make_error_response(nullptr, kParseError, e.what()).dump(),
                            "application/json");
            return;
        }

        const bool is_initialize =
            message.is_object() && message.value("method", "") == "initialize";
        std::string session_id = req.get_header_value("Mcp-Session-Id");

        std::lock_guard lock(impl.mutex);
        MessageHandler* handler = nullptr;
        if (is_initialize) {
            session_id = "s" + std::to_string(impl.next_session++);
            auto h = factory_();
            handler = h.get();
            impl.sessions[session_id] = std::move(h);
        } else {
            auto it = impl.sessions.find(session_id);
            if (it == impl.sessions.end()) {
                res.status = 404;
                res.set_content(
                    make_error_response(nullptr, kInvalidRequest, "unknown or missing session")
                        .dump(),
                    "application/json");
                return;
            }
            handler = it->second.get();
        }

        auto response = handler->handle(message);
        res.set_header("Mcp-Session-Id", session_id);
        if (response) {
            res.status = 200;
            res.set_content(response->dump(), "application/json");
        } else {
            res.status = 202;
        }
    });

    int bound = port;
    if (port == 0) {
        bound = impl.server.bind_to_any_port(host);
        if (bound <= 0) return make_error(ErrorCode::Transport, "failed to bind on " + host);
    } else {
        if (!impl.server.bind_to_port(host, port))
            return make_error(ErrorCode::Transport,
                              "failed to bind " + host + ":" + std::to_string(port));
    }
    impl.thread = std::thread([&impl] { impl.server.listen_after_bind(); });
    impl.server.wait_until_ready();
    return bound;
}

void HttpListener::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
    std::lock_guard lock(impl_->mutex);
    impl_->sessions.clear();
}

} // namespace tooldesc::mcp
