#include "tooldesc/router/router.hpp"

#include "tooldesc/text.hpp"

namespace tooldesc::router {

Result<RouterConfig::Fallback> parse_fallback(const std::string& s) {
    const std::string v = text::to_lower(text::trim(s));
    if (v == "serve-original") return RouterConfig::Fallback::ServeOriginal;
    if (v == "fail") return RouterConfig::Fallback::Fail;
    return make_error(ErrorCode::Config, "fallback must be 'serve-original' or 'fail'");
}

Result<RewriteStats> rewrite_tools_array(Json& tools, const store::ComponentSelection& selection,
                                         const store::Snapshot& snapshot,
                                         const std::string& server_label,
                                         RouterConfig::Fallback fallback,
                                         std::vector<std::string>* warnings) {
    RewriteStats stats;
    if (selection.mode == store::ComponentSelection::Mode::Original) return stats; // passthrough

    for (Json& t : tools) {
        if (!t.is_object() || !t.contains("name")) continue;
        const std::string name = t["name"].get<std::string>();
        const store::StoreRecord* record = snapshot.find(server_label, name);
        if (!record || !record->augmented) {
            if (fallback == RouterConfig::Fallback::Fail)
                return make_error(ErrorCode::Storage,
                                  "no augmented record for tool '" + name + "' on server '" +
                                      server_label + "'");
            ++stats.fallbacks;
            if (warnings)
                warnings->push_back("tool '" + name + "': no augmented record, serving original");
            continue;
        }
        auto assembled = store::assemble_record(*record, selection);
        if (!assembled) return assembled.error();
        t["description"] = std::move(assembled).value();
        ++stats.rewritten;
    }
    return stats;
}

Result<std::vector<mcp::ToolDescriptor>> rewrite_listing(
    const std::vector<mcp::ToolDescriptor>& listing, const store::ComponentSelection& selection,
    const store::Snapshot& snapshot, RouterConfig::Fallback fallback,
    std::vector<std::string>* warnings) {
    std::vector<mcp::ToolDescriptor> out = listing;
    for (auto& tool : out) {
        Json entry = {{"name", tool.name}, {"description", tool.description}};
        Json array = Json::array({entry});
        auto stats =
            rewrite_tools_array(array, selection, snapshot, tool.server, fallback, warnings);
        if (!stats) return stats.error();
        tool.description = array[0]["description"].get<std::string>();
    }
    return out;
}

namespace {

/// One client session: terminates the MCP handshake locally and forwards to
/// its own upstream session.
class ProxyHandler final : public mcp::MessageHandler {
public:
    ProxyHandler(const RouterConfig& config, const store::Snapshot& snapshot,
                 std::function<void(const std::string&)> log,
                 std::unique_ptr<mcp::Session> upstream = nullptr)
        : config_(config), snapshot_(snapshot), log_(std::move(log)),
          upstream_(std::move(upstream)) {}

    std::optional<Json> handle(const Json& message) override {
        auto parsed = mcp::RpcMessage::from_json(message);
        if (!parsed) {
            const Json id =
                message.is_object() && message.contains("id") ? message["id"] : Json(nullptr);
            return mcp::make_error_response(id, mcp::kInvalidRequest, parsed.error().message);
        }
        const mcp::RpcMessage& m = parsed.value();

        if (m.is_notification()) {
            if (*m.method == "notifications/initialized") return std::nullopt; // we already sent ours
            if (upstream_) (void)upstream_->raw_notify(*m.method, m.params);
            return std::nullopt;
        }
        if (m.is_response()) return std::nullopt; // nothing upstream awaits via this path

        const std::string& method = *m.method;
        if (method == "initialize") return handle_initialize(m);
        if (!upstream_)
            return mcp::make_error_response(*m.id, mcp::kInvalidRequest,
                                            "initialize must come first");
        if (method == "tools/list") return handle_tools_list(m);
        return forward(m);
    }

private:
    Json handle_initialize(const mcp::RpcMessage& m) {
        if (!upstream_) {
            auto session = mcp::Session::connect(config_.upstream, config_.client);
            if (!session)
                return mcp::make_error_response(*m.id, mcp::kUpstreamLost,
                                                "upstream unreachable: " + session.error().message);
            upstream_ = std::make_unique<mcp::Session>(std::move(session).value());
        }
        Json result = {{"protocolVersion", upstream_->protocol_version()},
                       {"capabilities", upstream_->server_capabilities()},
                       {"serverInfo", Json{{"name", upstream_->server_name()},
                                           {"version", upstream_->server_version()}}}};
        return mcp::make_response(*m.id, result);
    }

    Json handle_tools_list(const mcp::RpcMessage& m) {
        auto response = upstream_->raw_request("tools/list", m.params);
        if (!response)
            return mcp::make_error_response(*m.id, mcp::kUpstreamLost,
                                            "upstream connection lost: " + response.error().message);
        Json msg = std::move(response).value();
        msg["id"] = *m.id;
        if (msg.contains("result") && msg["result"].is_object() &&
            msg["result"].contains("tools") && msg["result"]["tools"].is_array()) {
            std::vector<std::string> warnings;
            auto stats = rewrite_tools_array(msg["result"]["tools"], config_.selection, snapshot_,
                                             config_.upstream.name, config_.fallback, &warnings);
            if (!stats)
                return mcp::make_error_response(*m.id, mcp::kInternalError, stats.error().message);
            if (log_) {
                log_("rewrote listing for '" + config_.upstream.name + "': " +
                     std::to_string(stats.value().rewritten) + " rewritten, " +
                     std::to_string(stats.value().fallbacks) + " fallback, selection " +
                     config_.selection.label());
                for (const auto& w : warnings) log_(w);
            }
        }
        return msg;
    }

    Json forward(const mcp::RpcMessage& m) {
        auto response = upstream_->raw_request(*m.method, m.params);
        if (!response)
            return mcp::make_error_response(*m.id, mcp::kUpstreamLost,
                                            "upstream connection lost: " + response.error().message);
        Json msg = std::move(response).value();
        msg["id"] = *m.id; // re-key to the client's id; body untouched
        return msg;
    }

    const RouterConfig& config_;
    const store::Snapshot& snapshot_;
    std::function<void(const std::string&)> log_;
    std::unique_ptr<mcp::Session> upstream_;
};

} // namespace

Router::Router(RouterConfig config) : config_(std::move(config)) {}

Router::~Router() { stop(); }

Result<void> Router::start() {
    if (config_.selection.mode == store::ComponentSelection::Mode::Augmented) {
        if (config_.store_path.empty())
            return make_error(ErrorCode::Config, "augmented selection requires --store");
        auto file_store = store::FileStore::open(config_.store_path);
        if (!file_store) return file_store.error();
        auto snapshot = store::Snapshot::load(file_store.value());
        if (!snapshot) return snapshot.error();
        snapshot_ = std::move(snapshot).value();
    }

    auto probe = mcp::Session::connect(config_.upstream, config_.client);
    if (!probe)
        return make_error(probe.error().code,
                          "upstream '" + config_.upstream.name +
                              "' unreachable at startup: " + probe.error().message);
    startup_session_ = std::make_unique<mcp::Session>(std::move(probe).value());
    if (log_)
        log_("connected upstream '" + config_.upstream.name + "' (server '" +
             startup_session_->server_name() + "', protocol " +
             startup_session_->protocol_version() + ")");
    return {};
}

Result<void> Router::serve_stdio(std::istream& in, std::ostream& out) {
    if (!startup_session_)
        return make_error(ErrorCode::Config, "router not started");
    ProxyHandler handler(config_, snapshot_, log_, std::move(startup_session_));
    mcp::serve_stdio(handler, in, out);
    return {};
}

Result<int> Router::serve_http() {
    if (!startup_session_) return make_error(ErrorCode::Config, "router not started");
    // The startup probe stays open purely as a liveness anchor; each client
    // session gets its own upstream connection.
    listener_ = std::make_unique<mcp::HttpListener>([this]() -> std::unique_ptr<mcp::MessageHandler> {
        return std::make_unique<ProxyHandler>(config_, snapshot_, log_);
    });
    return listener_->start(config_.listen_host, config_.listen_port);
}

void Router::stop() {
    if (listener_) {
        listener_->stop();
        listener_.reset();
    }
    if (startup_session_) {
        startup_session_->close();
        startup_session_.reset();
    }
}

} // namespace tooldesc::router
