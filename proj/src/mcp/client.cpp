#include "tooldesc/mcp/client.hpp"

namespace tooldesc::mcp {

Session::~Session() { close(); }

void Session::close() {
    if (transport_) {
        transport_->close();
        transport_.reset();
    }
}

Result<Session> Session::connect(const Endpoint& endpoint, const ClientConfig& config) {
    auto transport = open_transport(endpoint);
    if (!transport) return transport.error();

    Session s;
    s.transport_ = std::move(transport).value();
    s.config_ = config;
    s.endpoint_name_ = endpoint.name;

    Json params = {{"protocolVersion", kOfferedProtocolVersion},
                   {"capabilities", Json{{"tools", Json::object()}}},
                   {"clientInfo", Json{{"name", kClientName}, {"version", kClientVersion}}}};

    const auto saved_timeout = s.config_.rpc_timeout;
    s.config_.rpc_timeout = config.handshake_timeout;
    auto response = s.request("initialize", params);
    s.config_.rpc_timeout = saved_timeout;
    if (!response) return response.error();

    const Json& msg = response.value();
    if (msg.contains("error"))
        return make_error(ErrorCode::Rpc,
                          "initialize rejected by '" + endpoint.name +
                              "': " + msg["error"].value("message", ""),
                          msg["error"]);
    const Json& result = msg["result"];
    if (!result.is_object() || !result.contains("protocolVersion"))
        return make_error(ErrorCode::Protocol,
                          "initialize result from '" + endpoint.name + "' lacks a protocolVersion");

    s.protocol_version_ = result["protocolVersion"].get<std::string>();
    s.version_mismatch_ = s.protocol_version_ != kOfferedProtocolVersion;
    if (result.contains("serverInfo")) {
        s.server_name_ = result["serverInfo"].value("name", "");
        s.server_version_ = result["serverInfo"].value("version", "");
    }
    if (result.contains("capabilities")) s.capabilities_ = result["capabilities"];

    auto notified = s.raw_notify("notifications/initialized", nullptr);
    if (!notified) return notified.error();
    return s;
}

Result<Json> Session::request(const std::string& method, const Json& params) {
    if (!transport_) return make_error(ErrorCode::Transport, "session is closed");

    const long id = next_id_++;
    used_ids_.insert(id);
    const Json request = make_request(id, method, params);
    if (transcript_) transcript_->push_back({TranscriptEntry::Direction::Send, request});
    auto sent = transport_->send(request);
    if (!sent) return sent.error();

    while (true) {
        auto received = transport_->receive(config_.rpc_timeout);
        if (!received) return received.error();
        const Json raw = std::move(received).value();
        if (transcript_) transcript_->push_back({TranscriptEntry::Direction::Recv, raw});

        auto parsed = RpcMessage::from_json(raw);
        if (!parsed) return parsed.error();
        const RpcMessage& m = parsed.value();

        if (m.is_notification()) continue; // server-side notifications are not requests' business
        if (m.is_request()) {
            // Minimal client: decline server-initiated requests politely.
            auto declined =
                transport_->send(make_error_response(*m.id, kMethodNotFound,
                                                     "client does not serve requests"));
            if (!declined) return declined.error();
            continue;
        }

        // response: must match exactly one outstanding request
        if (!m.id->is_number_integer() || !used_ids_.count(m.id->get<long>()))
            return make_error(ErrorCode::Protocol,
                              "response with unknown id from '" + endpoint_name_ + "'", raw);
        const long got = m.id->get<long>();
        if (got != id)
            return make_error(ErrorCode::Protocol,
                              "response id " + std::to_string(got) + " does not match outstanding " +
                                  std::to_string(id));
        used_ids_.erase(got);
        return raw;
    }
}

Result<Json> Session::raw_request(const std::string& method, const Json& params) {
    return request(method, params);
}

Result<void> Session::raw_notify(const std::string& method, const Json& params) {
    if (!transport_) return make_error(ErrorCode::Transport, "session is closed");
    const Json note = make_notification(method, params);
    if (transcript_) transcript_->push_back({TranscriptEntry::Direction::Send, note});
    return transport_->send(note);
}

Result<std::vector<ToolDescriptor>> Session::list_tools() {
    std::vector<ToolDescriptor> tools;
    std::set<std::string> seen;
    std::optional<std::string> cursor;
    int pages = 0;

    while (true) {
        if (++pages > config_.max_pages)
            return make_error(ErrorCode::Protocol,
                              "tools/list pagination exceeded the " +
                                  std::to_string(config_.max_pages) + "-page bound on '" +
                                  endpoint_name_ + "'");
        Json params = nullptr;
        if (cursor) params = Json{{"cursor", *cursor}};
        auto response = request("tools/list", params);
        if (!response) return response.error();
        const Json& msg = response.value();
        if (msg.contains("error"))
            return make_error(ErrorCode::Rpc,
                              "tools/list failed on '" + endpoint_name_ +
                                  "': " + msg["error"].value("message", ""),
                              msg["error"]);
        const Json& result = msg["result"];
        if (!result.is_object() || !result.contains("tools") || !result["tools"].is_array())
            return make_error(ErrorCode::Protocol,
                              "tools/list result from '" + endpoint_name_ + "' lacks a tools array");

        for (const Json& t : result["tools"]) {
            if (!t.is_object() || !t.contains("name") || !t["name"].is_string())
                return make_error(ErrorCode::Protocol,
                                  "tool entry without a string name from '" + endpoint_name_ + "'");
            ToolDescriptor d;
            d.name = t["name"].get<std::string>();
            if (d.name.empty())
                return make_error(ErrorCode::Protocol,
                                  "tool with empty name from '" + endpoint_name_ + "'");
            if (!seen.insert(d.name).second)
                return make_error(ErrorCode::Protocol, "duplicate tool name '" + d.name +
                                                           "' in listing from '" + endpoint_name_ +
                                                           "'");
            if (t.contains("description") && t["description"].is_string())
                d.description = t["description"].get<std::string>();
            if (t.contains("inputSchema")) {
                if (!t["inputSchema"].is_object())
                    return make_error(ErrorCode::Protocol, "tool '" + d.name +
                                                               "' has a non-object inputSchema");
                d.input_schema = t["inputSchema"];
            }
            d.server = endpoint_name_;
            tools.push_back(std::move(d));
        }

        if (result.contains("nextCursor") && result["nextCursor"].is_string() &&
            !result["nextCursor"].get<std::string>().empty()) {
            cursor = result["nextCursor"].get<std::string>();
            continue;
        }
        break;
    }

    known_tools_ = seen;
    return tools;
}

Result<ToolResult> Session::call_tool(const std::string& name, const Json& arguments) {
    if (!known_tools_) {
        auto listed = list_tools();
        if (!listed) return listed.error();
    }
    if (!known_tools_->count(name))
        return make_error(ErrorCode::Validation,
                          "tool '" + name + "' is not in the listing of '" + endpoint_name_ + "'");

    auto response = request("tools/call", Json{{"name", name}, {"arguments", arguments}});
    if (!response) return response.error();
    const Json& msg = response.value();
    if (msg.contains("error"))
        return make_error(ErrorCode::Rpc,
                          "tools/call '" + name + "' failed on '" + endpoint_name_ +
                              "': " + msg["error"].value("message", ""),
                          msg["error"]);

    ToolResult r;
    r.raw = msg["result"];
    if (r.raw.is_object()) {
        if (r.raw.contains("content")) r.content = r.raw["content"];
        r.is_error = r.raw.value("isError", false);
    }
    return r;
}

} // namespace tooldesc::mcp
